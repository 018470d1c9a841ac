"""Tetrahedra with congruent facet pairs and their volumes."""

from .errors import (
    ClosureViolation,
    DegenerateNormals,
    DegenerateTetrahedron,
    GenerationFailed,
    InvalidTriangle,
    NonPositiveArea,
    NonPositiveEdge,
    NotRealizable,
    SingularMatrix,
    TetraError,
)
from .heron import (
    Degeneracy,
    RealizabilityVerdict,
    ReversibleParams,
    build_isosceles,
    build_reversible,
    heron_triangle_area,
    isosceles_volume_sq,
    perimeter_pairing_implication,
    realizability,
    regge_transform,
    reversible_volume_sq,
    reversible_volume_sq_factored,
)
from .minkowski import (
    ReconstructionReport,
    closure_residual,
    generate_equiareal,
    generate_paired_area,
    reconstruct,
    uniqueness_check,
)
from .tetra import (
    Classification,
    EdgeLengths,
    FacetData,
    Tetrahedron,
    TriangleFacet,
    Verdict,
    cayley_menger_volume_sq,
    classify,
    classify_edges,
    edge_lengths,
    facet_data,
    facet_perimeters,
    facets,
    regular_tetrahedron,
    tetrahedron_from_edges,
    triangles_congruent,
    volume_from_vertices,
)

__version__ = "0.1.0"
