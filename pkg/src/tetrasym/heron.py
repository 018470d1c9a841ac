"""Heron-style closed forms for triangles and symmetric tetrahedra.

A reversible tetrahedron has edge lengths ``a, a, b, b, c, d`` with opposite
pairs ``(a, a)``, ``(b, b)`` and ``(c, d)``.  The two facets sharing the
edge ``c`` have sides ``(a, b, c)``; the two sharing ``d`` have sides
``(a, b, d)``.  Its squared volume factors as::

    72 V^2 = (c^2 d^2 - (a^2 - b^2)^2) * (a^2 + b^2 - (c^2 + d^2) / 2)

and the first factor splits further into ``(cd + a^2 - b^2)(cd - a^2 + b^2)``.
The two ways the factors can vanish are the flat limits where the
tetrahedron collapses onto an isosceles trapezoid or a parallelogram.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import InvalidTriangle, NonPositiveEdge, NotRealizable
from .tetra import (
    EDGE_INDEX,
    EDGE_NAMES,
    OPPOSITE_PAIRS,
    PAIRINGS,
    EdgeLengths,
    Tetrahedron,
    facet_edge_indices,
)

DEGENERACY_FLOOR = 1e-10
TRIANGLE_SLACK = 1e-12


def heron_triangle_area(a, b, c):
    """Area of a triangle from its side lengths.

    Uses the cancellation-free ordering for sorted sides ``a >= b >= c``::

        A = sqrt((a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c))) / 4

    Exactly flat triples give 0.  Works elementwise on arrays.
    """
    sides = np.sort(np.stack(np.broadcast_arrays(a, b, c), axis=-1).astype(float), axis=-1)
    c, b, a = sides[..., 0], sides[..., 1], sides[..., 2]
    if np.any(c <= 0):
        raise InvalidTriangle("side lengths must be positive")
    t2 = c - (a - b)
    if np.any(t2 < -TRIANGLE_SLACK * a):
        raise InvalidTriangle("side lengths violate the triangle inequality")
    t2 = np.maximum(t2, 0.0)
    area = 0.25 * np.sqrt((a + (b + c)) * t2 * (c + (a - b)) * (a + (b - c)))
    return float(area) if area.ndim == 0 else area


def isosceles_volume_sq(a, b, c):
    """V^2 of the isosceles tetrahedron with opposite pairs (a, a), (b, b), (c, c).

    Negative values mean no such tetrahedron exists.
    """
    A, B, C = np.square(a), np.square(b), np.square(c)
    return (A + B - C) * (A - B + C) * (-A + B + C) / 72.0


@dataclass(frozen=True)
class ReversibleParams:
    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        vals = (self.a, self.b, self.c, self.d)
        if not all(np.isfinite(v) and v > 0 for v in vals):
            raise NonPositiveEdge(f"edge lengths must be positive, got {vals}")
        for third in (self.c, self.d):
            t = sorted((self.a, self.b, third))
            if t[2] > (t[0] + t[1]) * (1 + TRIANGLE_SLACK):
                raise InvalidTriangle(
                    f"sides {(self.a, self.b, third)} violate the triangle inequality"
                )

    def as_tuple(self):
        return (self.a, self.b, self.c, self.d)

    def max_length(self):
        return max(self.as_tuple())

    def edge_lengths(self):
        """Edge lengths in the vertex labelling used by :func:`build_reversible`."""
        a, b, c, d = self.as_tuple()
        return EdgeLengths(e01=c, e02=a, e03=b, e12=b, e13=a, e23=d)


def reversible_params_from_edges(L, tol=1e-9):
    """Read ``(a, b, c, d)`` off an edge set with two equal opposite pairs.

    Returns None when fewer than two opposite pairs match within relative
    ``tol``.  When all three match (isosceles), ``(e01, e23)`` is used as
    the ``(c, d)`` pair.
    """
    e = L.as_dict()
    pairs = [(e[p], e[q]) for p, q in OPPOSITE_PAIRS]
    equal = [abs(x - y) <= tol * max(x, y) for x, y in pairs]
    if sum(equal) < 2:
        return None
    k = equal.index(False) if not all(equal) else 0
    c, d = pairs[k]
    a, b = (pairs[j][0] for j in range(3) if j != k)
    return ReversibleParams(a, b, c, d)


def reversible_factors(a, b, c, d):
    """``(c^2 d^2 - (a^2 - b^2)^2, a^2 + b^2 - (c^2 + d^2)/2)``, elementwise.

    The first factor is evaluated as ``(cd - (a^2 - b^2)) (cd + (a^2 - b^2))``;
    subtracting the two squares directly loses most digits near the
    trapezoid limit.
    """
    g1, g2, g3 = reversible_linear_factors(a, b, c, d)
    return g1 * g2, g3


def reversible_linear_factors(a, b, c, d):
    """``(cd + a^2 - b^2, cd - a^2 + b^2, a^2 + b^2 - (c^2 + d^2)/2)``, elementwise."""
    A, B = np.square(a), np.square(b)
    cd = np.multiply(c, d)
    diff = A - B
    return cd + diff, cd - diff, A + B - (np.square(c) + np.square(d)) / 2


def _unpack(p):
    return p.as_tuple() if isinstance(p, ReversibleParams) else tuple(p)


def reversible_volume_sq(p):
    """Product form ``(c^2 d^2 - (a^2-b^2)^2)(a^2 + b^2 - (c^2+d^2)/2) / 72``.

    The first factor is rounded as in :func:`reversible_factors`, so for
    ``c == d`` the result matches :func:`isosceles_volume_sq` to a couple
    of ulps.

    Accepts :class:`ReversibleParams` or any ``(a, b, c, d)`` tuple of
    scalars or arrays.  Negative results mean the parameters are not
    realisable.
    """
    f1, f2 = reversible_factors(*_unpack(p))
    return f1 * f2 / 72.0


def reversible_volume_sq_factored(p):
    """Difference-of-squares form ``(cd + a^2 - b^2)(cd - a^2 + b^2)(...) / 72``."""
    g1, g2, g3 = reversible_linear_factors(*_unpack(p))
    return g1 * g2 * g3 / 72.0


class Degeneracy(str, Enum):
    NONE = "None"
    PARALLELOGRAM = "Parallelogram"
    TRAPEZOID = "Trapezoid"
    BOTH = "Both"


@dataclass(frozen=True)
class RealizabilityVerdict:
    factor1: float
    factor2: float
    realizable: bool
    degeneracy_kind: Degeneracy

    @property
    def strictly_realizable(self):
        return self.realizable and self.degeneracy_kind is Degeneracy.NONE


def realizability(p, floor=DEGENERACY_FLOOR):
    """Evaluate both volume factors and flag the flat limits.

    A factor counts as zero when its magnitude is at most
    ``floor * L**k`` with ``L`` the longest edge and ``k`` the factor's
    degree in length (4 for the trapezoid factor, 2 for the parallelogram
    one).  Factors inside that band are treated as zero for realisability
    too, so points on either flat manifold are realisable.
    """
    a, b, c, d = p.as_tuple()
    f1, f2 = (float(x) for x in reversible_factors(a, b, c, d))
    scale = p.max_length()
    trap = abs(f1) <= floor * scale**4
    para = abs(f2) <= floor * scale**2
    if trap and para:
        kind = Degeneracy.BOTH
    elif trap:
        kind = Degeneracy.TRAPEZOID
    elif para:
        kind = Degeneracy.PARALLELOGRAM
    else:
        kind = Degeneracy.NONE
    realizable = (f1 > 0 or trap) and (f2 > 0 or para)
    return RealizabilityVerdict(f1, f2, realizable, kind)


def reversible_vertices(a, b, c, d):
    """Vertex arrays ``(..., 4, 3)`` of the half-turn-symmetric construction.

    ``v0 = (c/2, 0, 0)``, ``v1 = (-c/2, 0, 0)``, ``v2 = (x, y, h)``,
    ``v3 = (-x, -y, h)`` with ``x = (b^2 - a^2) / 2c``,
    ``y = sqrt(d^2/4 - x^2)`` and ``h = sqrt((a^2 + b^2)/2 - (c^2 + d^2)/4)``.
    Negative radicands are clamped to zero; callers check realisability.
    """
    a, b, c, d = np.broadcast_arrays(*(np.asarray(t, dtype=float) for t in (a, b, c, d)))
    x = (b - a) * (b + a) / (2 * c)
    y = np.sqrt(np.maximum((d / 2 - x) * (d / 2 + x), 0.0))
    h = np.sqrt(np.maximum((a * a + b * b) / 2 - (c * c + d * d) / 4, 0.0))
    zero = np.zeros_like(x)
    half = c / 2
    v = np.stack(
        [
            np.stack([half, zero, zero], -1),
            np.stack([-half, zero, zero], -1),
            np.stack([x, y, h], -1),
            np.stack([-x, -y, h], -1),
        ],
        axis=-2,
    )
    return v


def build_reversible(p, allow_degenerate=False):
    """Coordinates of the reversible tetrahedron with parameters ``p``.

    The result is symmetric under the half-turn ``(x, y, z) -> (-x, -y, z)``.
    Raises NotRealizable when a radicand is negative beyond the degeneracy
    band, and DegenerateTetrahedron (from the constructor) for flat results
    unless ``allow_degenerate`` is set.
    """
    verdict = realizability(p)
    if not verdict.realizable:
        raise NotRealizable(
            f"{p} is not realisable (factors {verdict.factor1:.6g}, {verdict.factor2:.6g})"
        )
    v = reversible_vertices(*p.as_tuple())
    if allow_degenerate:
        return Tetrahedron.allow_degenerate(v)
    return Tetrahedron(v)


def build_isosceles(a, b, c):
    return build_reversible(ReversibleParams(a, b, c, c))


REGGE_ACTIONS = ("cd", "aa", "bb")


def regge_transform(p, fixed="cd"):
    """Regge symmetry fixing one opposite edge pair.

    The four remaining edges ``l`` are replaced by ``s - l`` where ``s`` is
    half their sum.  ``fixed`` names the pair left alone: ``"cd"`` (which
    just swaps ``a`` and ``b``), ``"aa"`` or ``"bb"``.  Every action is an
    involution and preserves volume.
    """
    a, b, c, d = p.as_tuple()
    if fixed == "cd":
        s = a + b
        out = (s - a, s - b, c, d)
    elif fixed == "aa":
        s = (2 * b + c + d) / 2
        out = (a, s - b, s - c, s - d)
    elif fixed == "bb":
        s = (2 * a + c + d) / 2
        out = (s - a, b, s - c, s - d)
    else:
        raise ValueError(f"unknown Regge action {fixed!r}; choose from {REGGE_ACTIONS}")
    if min(out) <= 0:
        raise NonPositiveEdge(f"Regge action {fixed!r} gives non-positive edge {out}")
    return ReversibleParams(*out)


def regge_factor_permutation(p, fixed):
    """How the three linear volume factors of ``p`` map onto those of its image.

    Returns ``perm`` with ``image_factors[k] == factors[perm[k]]`` (matched
    by value), or None when the factors do not match up to a permutation.
    """
    q = regge_transform(p, fixed)
    before = reversible_linear_factors(*p.as_tuple())
    after = reversible_linear_factors(*q.as_tuple())
    scale = p.max_length() ** 2
    perm = []
    for val in after:
        hits = [k for k, ref in enumerate(before) if abs(val - ref) <= 1e-9 * scale and k not in perm]
        if not hits:
            return None
        perm.append(hits[0])
    return tuple(perm)


@dataclass(frozen=True)
class PerimeterImplication:
    pairing: tuple
    implied: tuple
    free_pair: tuple
    perimeter_residual: float
    perimeters_match: bool
    implied_residual: float
    implied_hold: bool


def perimeter_equations(pairing):
    """Rows ``r`` with ``r @ edges == 0`` iff each pair has equal perimeters."""
    rows = []
    for i, j in pairing:
        row = np.zeros(6)
        row[list(facet_edge_indices(i))] += 1
        row[list(facet_edge_indices(j))] -= 1
        rows.append(row)
    return np.array(rows)


def implied_equalities(pairing):
    """Opposite-edge equalities forced by equal perimeters within each pair.

    An equality ``e_p = e_q`` is implied when ``e_p - e_q`` lies in the
    row space of the two linear perimeter equations.
    """
    eqs = perimeter_equations(pairing)
    rank = np.linalg.matrix_rank(eqs)
    implied, free = [], []
    for (i, j), k in EDGE_INDEX.items():
        m, n = [q for q in range(4) if q not in (i, j)]
        if (i, j) > (m, n):
            continue
        row = np.zeros(6)
        row[k] = 1
        row[EDGE_INDEX[(m, n)]] = -1
        pair = (EDGE_NAMES[k], EDGE_NAMES[EDGE_INDEX[(m, n)]])
        if np.linalg.matrix_rank(np.vstack([eqs, row])) == rank:
            implied.append(pair)
        else:
            free.append(pair)
    return tuple(implied), tuple(free)


def perimeter_pairing_implication(L, pairing, tol=1e-12):
    """Check a pairing's perimeter equations and the edge equalities they force."""
    if pairing not in PAIRINGS:
        raise ValueError(f"pairing must be one of {PAIRINGS}")
    implied, free = implied_equalities(pairing)
    e = L.as_array()
    perims = [float(np.sum(e[list(facet_edge_indices(i))])) for i in range(4)]
    perimeter_residual = max(
        abs(perims[i] - perims[j]) / max(perims[i], perims[j]) for i, j in pairing
    )
    vals = L.as_dict()
    implied_residual = max(
        abs(vals[p] - vals[q]) / max(vals[p], vals[q]) for p, q in implied
    )
    free_pair = free[0] if free else None
    return PerimeterImplication(
        pairing,
        implied,
        free_pair,
        perimeter_residual,
        perimeter_residual <= tol,
        implied_residual,
        implied_residual <= tol,
    )
