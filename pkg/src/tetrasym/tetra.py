"""Tetrahedron data model: facets, facet normals/areas, volumes, classification.

Labelling conventions used throughout the package:

* vertices ``v0..v3``; facet ``f_i`` is the triangle opposite ``v_i``;
* edges ``e_ij = |v_i - v_j|`` stored in the order
  ``(e01, e02, e03, e12, e13, e23)``;
* opposite edge pairs are ``(e01, e23)``, ``(e02, e13)`` and ``(e03, e12)``;
* a *pairing* is a partition of the four facets into two pairs, written as
  ``((i, j), (k, l))`` with ``i < j``, ``k < l`` and ``i < k``.
"""

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations

import numpy as np

from . import linalg3 as la
from .errors import (
    DegenerateTetrahedron,
    InvalidTriangle,
    NonPositiveArea,
    NotRealizable,
)

DEGENERACY_FLOOR = 1e-10
DEFAULT_TOL = 1e-9

EDGE_NAMES = ("e01", "e02", "e03", "e12", "e13", "e23")
EDGE_INDEX = {(0, 1): 0, (0, 2): 1, (0, 3): 2, (1, 2): 3, (1, 3): 4, (2, 3): 5}
OPPOSITE_PAIRS = (("e01", "e23"), ("e02", "e13"), ("e03", "e12"))
PAIRINGS = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))


def _edge(i, j):
    return EDGE_INDEX[(min(i, j), max(i, j))]


def facet_vertex_indices(i):
    """Vertex indices of facet ``f_i`` in increasing order."""
    return tuple(k for k in range(4) if k != i)


def facet_edge_indices(i):
    """Positions (into the six-edge array) of the three edges of ``f_i``."""
    return tuple(_edge(p, q) for p, q in combinations(facet_vertex_indices(i), 2))


def _signed_six_volume(vertices):
    v = np.asarray(vertices, dtype=float)
    e = v[..., 1:, :] - v[..., :1, :]
    return la.dot(e[..., 0, :], la.cross(e[..., 1, :], e[..., 2, :]))


def _longest_edge(vertices):
    v = np.asarray(vertices, dtype=float)
    diffs = v[..., :, None, :] - v[..., None, :, :]
    return np.sqrt(np.max(np.sum(diffs**2, axis=-1), axis=(-1, -2)))


class Tetrahedron:
    """Four vertices in 3-space with positive orientation.

    If ``det(v1-v0, v2-v0, v3-v0) < 0`` the constructor swaps ``v2`` and
    ``v3``.  The default constructor rejects tetrahedra with
    ``6V <= 1e-10 * (longest edge)**3``; use :meth:`allow_degenerate` to
    admit flat ones.
    """

    __slots__ = ("_vertices", "swapped")

    def __init__(self, vertices, *, _check=True):
        v = np.array(vertices, dtype=float)
        if v.shape != (4, 3):
            raise ValueError(f"expected 4 vertices in 3-space, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise ValueError("vertices must be finite")
        six_v = _signed_six_volume(v)
        swapped = bool(six_v < 0)
        if swapped:
            v[[2, 3]] = v[[3, 2]]
        if _check and not abs(six_v) > DEGENERACY_FLOOR * _longest_edge(v) ** 3:
            raise DegenerateTetrahedron(
                f"6V = {abs(six_v):.3e} is below the degeneracy floor"
            )
        v.setflags(write=False)
        self._vertices = v
        self.swapped = swapped

    @classmethod
    def allow_degenerate(cls, vertices):
        return cls(vertices, _check=False)

    @property
    def vertices(self):
        return self._vertices

    def __getitem__(self, i):
        return self._vertices[i]

    def __iter__(self):
        return iter(self._vertices)

    def __repr__(self):
        return f"Tetrahedron({self._vertices.tolist()!r})"

    def __eq__(self, other):
        if not isinstance(other, Tetrahedron):
            return NotImplemented
        return np.array_equal(self._vertices, other._vertices)

    def __hash__(self):
        return hash(self._vertices.tobytes())

    def translated(self, t):
        return Tetrahedron.allow_degenerate(self._vertices + la.vec3(t))

    def transformed(self, matrix):
        """Apply a linear map (given as a 3x3 matrix) to every vertex."""
        return Tetrahedron.allow_degenerate(self._vertices @ la.mat3(matrix).T)

    def is_degenerate(self):
        six_v = _signed_six_volume(self._vertices)
        return not six_v > DEGENERACY_FLOOR * _longest_edge(self._vertices) ** 3


@dataclass(frozen=True)
class TriangleFacet:
    index: int
    points: np.ndarray

    @property
    def opposite_vertex(self):
        return self.index

    def side_lengths(self):
        p = self.points
        return (
            float(la.norm(p[1] - p[0])),
            float(la.norm(p[2] - p[0])),
            float(la.norm(p[2] - p[1])),
        )

    def area(self):
        p = self.points
        return 0.5 * float(la.norm(la.cross(p[1] - p[0], p[2] - p[0])))


@dataclass(frozen=True)
class FacetData:
    """Outward unit normals and areas of the four facets (the Minkowski data).

    The constructor checks unit length and positivity.  Closure and spanning
    are checked where they matter (see :func:`tetrasym.minkowski.reconstruct`)
    so that slightly inconsistent data read from files can still be held
    and inspected.
    """

    normals: np.ndarray
    areas: np.ndarray

    def __post_init__(self):
        n = np.array(self.normals, dtype=float)
        a = np.array(self.areas, dtype=float)
        if n.shape != (4, 3) or a.shape != (4,):
            raise ValueError("facet data needs four normals and four areas")
        if not (np.all(np.isfinite(n)) and np.all(np.isfinite(a))):
            raise ValueError("facet data must be finite")
        if np.any(a <= 0):
            raise NonPositiveArea(f"facet areas must be positive, got {a.tolist()}")
        if np.any(np.abs(la.norm(n) - 1.0) > 1e-9):
            raise ValueError("facet normals must be unit vectors")
        n.setflags(write=False)
        a.setflags(write=False)
        object.__setattr__(self, "normals", n)
        object.__setattr__(self, "areas", a)

    def closure_vector(self):
        return np.sum(self.areas[:, None] * self.normals, axis=0)

    def permuted(self, order):
        order = list(order)
        return FacetData(self.normals[order], self.areas[order])


@dataclass(frozen=True)
class EdgeLengths:
    e01: float
    e02: float
    e03: float
    e12: float
    e13: float
    e23: float

    def __post_init__(self):
        vals = self.as_array()
        if not np.all(np.isfinite(vals)) or np.any(vals <= 0):
            raise ValueError(f"edge lengths must be positive, got {vals.tolist()}")
        for i in range(4):
            t = sorted(vals[list(facet_edge_indices(i))])
            if t[2] > (t[0] + t[1]) * (1 + 1e-12):
                raise InvalidTriangle(f"facet f{i} violates the triangle inequality")

    @classmethod
    def from_array(cls, values):
        return cls(*(float(x) for x in values))

    @classmethod
    def from_mapping(cls, mapping):
        return cls(**{k: float(mapping[k]) for k in EDGE_NAMES})

    def as_array(self):
        return np.array([getattr(self, k) for k in EDGE_NAMES], dtype=float)

    def as_dict(self):
        return {k: getattr(self, k) for k in EDGE_NAMES}

    def facet_triple(self, i):
        vals = self.as_array()
        return tuple(float(vals[k]) for k in facet_edge_indices(i))

    def facet_triples(self):
        return [self.facet_triple(i) for i in range(4)]

    def max_length(self):
        return float(np.max(self.as_array()))


class Verdict(str, Enum):
    REGULAR = "Regular"
    ISOSCELES = "Isosceles"
    REVERSIBLE = "Reversible"
    GENERIC = "Generic"

    @property
    def rank(self):
        return _VERDICT_RANK[self]

    def at_least(self, other):
        return self.rank >= Verdict(other).rank


_VERDICT_RANK = {
    Verdict.GENERIC: 0,
    Verdict.REVERSIBLE: 1,
    Verdict.ISOSCELES: 2,
    Verdict.REGULAR: 3,
}


@dataclass(frozen=True)
class Classification:
    """Symmetry verdict plus the evidence behind it.

    ``pairings`` lists every facet pairing whose pairs are congruent within
    tolerance, in lexicographic order.  The residual dictionaries are keyed
    by pairing and hold the worst relative mismatch over the two pairs.
    """

    verdict: Verdict
    pairings: tuple
    congruence_residuals: dict = field(default_factory=dict)
    area_residuals: dict = field(default_factory=dict)
    edge_spread: float = 0.0
    opposite_residual: float = 0.0

    @property
    def pairing(self):
        return self.pairings[0] if self.pairings else None


def facets(T):
    return tuple(
        TriangleFacet(i, T.vertices[list(facet_vertex_indices(i))]) for i in range(4)
    )


_FACET_VERTS = np.array([facet_vertex_indices(i) for i in range(4)])


def facet_data(T):
    """Outward unit normals and areas of the facets of ``T``.

    Normals come from the cross product of two facet edges, flipped so that
    they point away from the opposite vertex; areas are half the length of
    the same cross product.
    """
    v = T.vertices
    p = v[_FACET_VERTS]
    n = la.cross(p[:, 1] - p[:, 0], p[:, 2] - p[:, 0])
    length = la.norm(n)
    scale = _longest_edge(v)
    if np.any(~(length > DEGENERACY_FLOOR * scale**2)):
        i = int(np.argmin(length))
        raise DegenerateTetrahedron(f"facet f{i} has (near) zero area")
    inward = la.dot(n, v - p[:, 0]) > 0
    n = np.where(inward[:, None], -n, n)
    return FacetData(n / length[:, None], 0.5 * length)


def volume_from_vertices(T):
    """``det(v1-v0, v2-v0, v3-v0) / 6`` (non-negative by orientation)."""
    return float(_signed_six_volume(T.vertices)) / 6.0


_EDGE_I = np.array([i for i, _ in EDGE_INDEX])
_EDGE_J = np.array([j for _, j in EDGE_INDEX])


def edge_lengths(T):
    v = T.vertices
    return EdgeLengths(*la.norm(v[_EDGE_I] - v[_EDGE_J]).tolist())


def edge_array(vertices):
    """Six edge lengths for a stack of vertex arrays of shape ``(..., 4, 3)``."""
    v = np.asarray(vertices, dtype=float)
    return np.stack([la.norm(v[..., i, :] - v[..., j, :]) for i, j in EDGE_INDEX], -1)


def cayley_menger_det(squared):
    """Cayley-Menger determinant from squared edges ``(..., 6)`` in edge order.

    The bordered 5x5 matrix has first row and column ``(0, 1, 1, 1, 1)``.
    For a tetrahedron its determinant equals ``288 V^2``.
    """
    sq = np.asarray(squared, dtype=float)
    shape = sq.shape[:-1]
    m = np.ones(shape + (5, 5))
    m[..., 0, 0] = 0.0
    for i in range(4):
        m[..., i + 1, i + 1] = 0.0
    for (i, j), k in EDGE_INDEX.items():
        m[..., i + 1, j + 1] = sq[..., k]
        m[..., j + 1, i + 1] = sq[..., k]
    return np.linalg.det(m)


def cayley_menger_volume_sq(L):
    """V^2 from edge lengths alone; negative for non-embeddable length sets."""
    lengths = L.as_array() if isinstance(L, EdgeLengths) else np.asarray(L, float)
    out = cayley_menger_det(lengths**2) / 288.0
    return float(out) if np.ndim(out) == 0 else out


def _rel(x, y):
    scale = max(abs(x), abs(y))
    return abs(x - y) / scale if scale > 0 else 0.0


def congruence_residual(t1, t2):
    """Largest relative mismatch between two sorted side-length triples."""
    return max(_rel(x, y) for x, y in zip(sorted(t1), sorted(t2)))


def triangles_congruent(t1, t2, tol=DEFAULT_TOL):
    return congruence_residual(t1, t2) <= tol


_OPPOSITE_IDX = tuple((EDGE_NAMES.index(p), EDGE_NAMES.index(q)) for p, q in OPPOSITE_PAIRS)
_FACET_EDGES = tuple(facet_edge_indices(i) for i in range(4))


def _classify(lengths, areas, tol):
    L = [float(x) for x in lengths]
    areas = [float(x) for x in areas]
    triples = [tuple(L[k] for k in _FACET_EDGES[i]) for i in range(4)]

    edge_spread = (max(L) - min(L)) / max(L)
    opposite_residual = max(_rel(L[p], L[q]) for p, q in _OPPOSITE_IDX)

    cong, area_res, passing = {}, {}, []
    for pairing in PAIRINGS:
        cong[pairing] = max(congruence_residual(triples[i], triples[j]) for i, j in pairing)
        area_res[pairing] = max(_rel(areas[i], areas[j]) for i, j in pairing)
        if cong[pairing] <= tol:
            passing.append(pairing)

    if edge_spread <= tol:
        verdict = Verdict.REGULAR
    elif opposite_residual <= tol:
        verdict = Verdict.ISOSCELES
    elif passing:
        verdict = Verdict.REVERSIBLE
    else:
        verdict = Verdict.GENERIC
    return Classification(
        verdict, tuple(passing), cong, area_res, edge_spread, opposite_residual
    )


def classify(T, tol=DEFAULT_TOL):
    """Most specific symmetry class of ``T``: Regular, Isosceles, Reversible or Generic."""
    if T.is_degenerate():
        raise DegenerateTetrahedron("cannot classify a degenerate tetrahedron")
    return _classify(edge_lengths(T).as_array(), facet_data(T).areas, tol)


def classify_edges(L, tol=DEFAULT_TOL):
    """Classify from edge lengths; facet areas come from Heron's formula.

    Raises NotRealizable for length sets with no embedding in 3-space and
    DegenerateTetrahedron for flat ones.
    """
    from .heron import heron_triangle_area

    tetrahedron_from_edges(L)
    areas = [heron_triangle_area(*L.facet_triple(i)) for i in range(4)]
    return _classify(L.as_array(), np.array(areas), tol)


def facet_perimeters(T):
    L = edge_lengths(T).as_array()
    return tuple(float(sum(L[list(facet_edge_indices(i))])) for i in range(4))


def tetrahedron_from_edges(L, allow_degenerate=False):
    """Embed edge lengths as vertices: v0 at the origin, v1 on +x, v2 in the xy-plane."""
    e = L.as_dict()
    x1 = e["e01"]
    # v2 from distances to v0 and v1
    x2 = (e["e02"] ** 2 - e["e12"] ** 2 + x1**2) / (2 * x1)
    y2sq = e["e02"] ** 2 - x2**2
    if y2sq <= 0 and not allow_degenerate:
        raise DegenerateTetrahedron("facet f3 is flat")
    y2 = np.sqrt(max(y2sq, 0.0))
    x3 = (e["e03"] ** 2 - e["e13"] ** 2 + x1**2) / (2 * x1)
    if y2 > 0:
        y3 = (e["e03"] ** 2 - e["e23"] ** 2 + x2**2 + y2**2 - 2 * x2 * x3) / (2 * y2)
    else:
        y3 = np.sqrt(max(e["e03"] ** 2 - x3**2, 0.0))
    z3sq = e["e03"] ** 2 - x3**2 - y3**2
    scale = L.max_length()
    if z3sq < -1e-9 * scale**2:
        raise NotRealizable("edge lengths cannot be realised in 3-space")
    z3 = np.sqrt(max(z3sq, 0.0))
    verts = [[0.0, 0.0, 0.0], [x1, 0.0, 0.0], [x2, y2, 0.0], [x3, y3, z3]]
    if allow_degenerate:
        return Tetrahedron.allow_degenerate(verts)
    return Tetrahedron(verts)


def regular_tetrahedron(edge=1.0):
    """Regular tetrahedron with the given edge length."""
    s = edge / np.sqrt(2.0)
    return Tetrahedron(s * np.array([[0, 0, 0], [1, 1, 0], [1, 0, 1], [0, 1, 1]], float))
