"""
Regge moves on reversible tetrahedra
====================================

Fix one pair of opposite edges and replace each of the other four
lengths l by s - l, where s is half their sum.  The result is a
different tetrahedron with the same volume.
"""

from tetrasym import ReversibleParams, cayley_menger_volume_sq, classify, build_reversible, regge_transform
from tetrasym.heron import REGGE_ACTIONS, regge_factor_permutation

p = ReversibleParams(3, 4, 4, 3)
print("start:", p.as_tuple(), "V^2 =", cayley_menger_volume_sq(p.edge_lengths()))
for action in REGGE_ACTIONS:
    q = regge_transform(p, action)
    v2 = cayley_menger_volume_sq(q.edge_lengths())
    back = regge_transform(q, action)
    print(
        f"fix {action}: {q.as_tuple()}  V^2 = {v2:.12f}  "
        f"{classify(build_reversible(q)).verdict.value}  twice -> {back.as_tuple()}"
    )

# Each move swaps two of the three linear factors of 144 V^2.
p = ReversibleParams(1.1, 1.3, 1.2, 0.9)
for action in REGGE_ACTIONS:
    print(f"fix {action}: factor permutation {regge_factor_permutation(p, action)}")
