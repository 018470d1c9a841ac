"""
Three ways to the volume of a reversible tetrahedron
====================================================

A reversible tetrahedron has opposite edges (a, a), (b, b) and (c, d).
Its volume can be read off the vertex coordinates, the Cayley-Menger
determinant of the six edge lengths, or a closed-form product in
a, b, c, d.  This script compares all three.
"""

import math

import numpy as np

from tetrasym import (
    ReversibleParams,
    build_reversible,
    cayley_menger_volume_sq,
    realizability,
    reversible_volume_sq,
    reversible_volume_sq_factored,
    volume_from_vertices,
)

# The unit regular tetrahedron is the case a = b = c = d = 1.
p = ReversibleParams(1, 1, 1, 1)
T = build_reversible(p)
print("regular, vertex determinant:", volume_from_vertices(T))
print("regular, Cayley-Menger:     ", math.sqrt(cayley_menger_volume_sq(p.edge_lengths())))
print("regular, closed form:       ", math.sqrt(reversible_volume_sq(p)))
print("sqrt(2)/12 =                ", math.sqrt(2) / 12)

# A less symmetric example.  The closed form is a product of a "trapezoid"
# factor and a "parallelogram" factor; both must be non-negative.
p = ReversibleParams(3, 4, 4, 3)
v = realizability(p)
print(f"\n(3, 4, 4, 3): trapezoid factor {v.factor1}, parallelogram factor {v.factor2}")
print("  product form V^2:         ", reversible_volume_sq(p))
print("  difference of squares V^2:", reversible_volume_sq_factored(p))
print("  vertex determinant V^2:   ", volume_from_vertices(build_reversible(p)) ** 2)
print("  exact value 2375/144 =    ", 2375 / 144)

# Scan random parameters and record the worst disagreement.
rng = np.random.default_rng(0)
worst = 0.0
kept = 0
while kept < 2000:
    a, b, c, d = np.exp(rng.uniform(np.log(0.1), np.log(10), 4))
    try:
        p = ReversibleParams(a, b, c, d)
    except ValueError:
        continue
    if not realizability(p).strictly_realizable:
        continue
    closed = reversible_volume_sq(p)
    vertex = volume_from_vertices(build_reversible(p)) ** 2
    worst = max(worst, abs(closed - vertex) / closed)
    kept += 1
print(f"\nworst relative V^2 gap over {kept} random samples: {worst:.2e}")

# Flat cases.  A zero parallelogram factor flattens the solid onto a
# parallelogram, a zero trapezoid factor onto a trapezoid; (1, 2, 1, 3)
# happens to zero both.
for params in [(1, 1, math.sqrt(2), math.sqrt(2)), (math.sqrt(2), math.sqrt(5), 1, 3), (1, 2, 1, 3)]:
    v = realizability(ReversibleParams(*params))
    print(f"{tuple(round(x, 4) for x in params)} -> {v.degeneracy_kind.value}")
