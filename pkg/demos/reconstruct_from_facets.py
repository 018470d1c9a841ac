"""
Rebuilding a tetrahedron from its facets
========================================

Four outward unit normals and four areas that balance,
``sum(area_i * normal_i) == 0``, determine a tetrahedron up to
translation.  We take facet data from a known solid, throw the solid
away and get it back.
"""

import numpy as np

from tetrasym import (
    FacetData,
    Tetrahedron,
    closure_residual,
    facet_data,
    reconstruct,
    uniqueness_check,
    volume_from_vertices,
)
from tetrasym.errors import ClosureViolation

corner = Tetrahedron([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]])
D = facet_data(corner)
print("normals:\n", D.normals.round(4))
print("areas:", D.areas)
print("closure residual:", closure_residual(D))

report = reconstruct(D)
print("\nreconstructed vertices:\n", report.tetrahedron.vertices.round(12))
print("volume:", volume_from_vertices(report.tetrahedron))
print("round-trip normal error (rad):", report.roundtrip_normal_error)

# Only the translation is free.  A shifted copy passes the check,
# a rotated one does not.
shifted = corner.translated([5, -3, 2])
print("\nshifted copy is a translate:", uniqueness_check(D, corner, shifted))
c, s = np.cos(0.3), np.sin(0.3)
rot = np.array([[c, -s, 0], [s, c, 0], [0, 0, 1]])
rotated = Tetrahedron(corner.vertices @ rot.T)
print("rotated copy is a translate:", uniqueness_check(D, corner, rotated))

# Unbalanced data is refused outright, slightly unbalanced data is repaired.
areas = D.areas.copy()
areas[0] *= 1 + 1e-7
print("\nnudged residual:", closure_residual(FacetData(D.normals, areas)))
print("repaired:", reconstruct(FacetData(D.normals, areas)).repaired)
areas[0] *= 1.2
try:
    reconstruct(FacetData(D.normals, areas))
except ClosureViolation as exc:
    print("refused:", exc)
