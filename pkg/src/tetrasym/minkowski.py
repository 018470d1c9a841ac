"""Tetrahedra from facet normals and areas.

Four unit normals spanning 3-space with positive areas are the facet data
of a tetrahedron exactly when ``sum(area_i * normal_i) == 0``, and the
tetrahedron is then unique up to translation.  The construction goes
through the cofactor matrix: with one vertex at the origin and the others
as the columns of ``A``, column ``i`` of ``cofactor(A)`` is
``-2 * area_i * normal_i``.  Inverting that relation gives
``A = sqrt(det C) * C^{-T}`` for ``C`` built from facets 1, 2, 3.
"""

from dataclasses import dataclass

import numpy as np

from . import linalg3 as la
from .errors import (
    ClosureViolation,
    DegenerateNormals,
    GenerationFailed,
    NonPositiveArea,
)
from .tetra import FacetData, Tetrahedron, facet_data

CLOSURE_TOL = 1e-8
CLOSURE_REPAIR_TOL = 1e-5
SPAN_FLOOR = 1e-10
MAX_ATTEMPTS = 1000
# generator rejects normal sets whose worst triple is flatter than this
GENERATOR_SPAN_FLOOR = 1e-6

_TRIPLES = np.array([(1, 2, 3), (0, 2, 3), (0, 1, 3), (0, 1, 2)])


@dataclass(frozen=True)
class ReconstructionReport:
    tetrahedron: Tetrahedron
    input_closure_residual: float
    roundtrip_normal_error: float
    roundtrip_area_error: float
    repaired: bool = False
    facet_order: tuple = (0, 1, 2, 3)


def closure_residual(D):
    """``|sum(area_i * normal_i)| / sum(area_i)``."""
    return float(la.norm(D.closure_vector()) / np.sum(D.areas))


def span_measure(normals):
    """Smallest ``|det|`` over the four triples of unit normals."""
    n = np.asarray(normals, dtype=float)
    return float(np.min(np.abs(la.det(np.swapaxes(n[_TRIPLES], -1, -2)))))


def repair_closure(D):
    """Least-squares change of the areas that restores exact closure.

    Solves ``min |a' - a|`` subject to ``N^T a' = 0`` where ``N`` stacks the
    normals as rows.
    """
    N = D.normals
    gram = N.T @ N
    lam = la.solve_inverse_transpose(gram).T @ (N.T @ D.areas)
    areas = D.areas - N @ lam
    if np.any(areas <= 0):
        raise NonPositiveArea("closure repair produced a non-positive area")
    return FacetData(N, areas)


def _angle_between(u, v):
    return np.arctan2(la.norm(la.cross(u, v)), la.dot(u, v))


def reconstruct(D, closure_tol=CLOSURE_TOL, repair_tol=CLOSURE_REPAIR_TOL):
    """Rebuild the tetrahedron with facet data ``D``, one vertex at the origin.

    Closure residuals up to ``closure_tol`` are accepted as is; up to
    ``repair_tol`` the areas are projected onto the closure constraint first
    and the report is flagged ``repaired``; beyond that ClosureViolation is
    raised.  If facets 1, 2, 3 come in negatively oriented order, facets 2
    and 3 are exchanged and ``facet_order`` records this.
    """
    if np.any(D.areas <= 0):
        raise NonPositiveArea("facet areas must be positive")
    residual = closure_residual(D)
    repaired = False
    if residual > repair_tol:
        raise ClosureViolation(f"closure residual {residual:.3e} exceeds {repair_tol:g}")
    if span_measure(D.normals) <= SPAN_FLOOR:
        raise DegenerateNormals("facet normals do not span 3-space")
    if residual > closure_tol:
        D = repair_closure(D)
        repaired = True

    order = (0, 1, 2, 3)
    C = (-2.0 * D.areas[1:, None] * D.normals[1:]).T
    if la.det(C) < 0:
        order = (0, 1, 3, 2)
        C = C[:, [0, 2, 1]]
    A = np.sqrt(la.det(C)) * la.solve_inverse_transpose(C)
    T = Tetrahedron(np.vstack([np.zeros(3), A.T]))

    target = D.permuted(order)
    got = facet_data(T)
    normal_err = float(np.max(_angle_between(got.normals, target.normals)))
    area_err = float(np.max(np.abs(got.areas - target.areas) / target.areas))
    return ReconstructionReport(T, residual, normal_err, area_err, repaired, order)


def uniqueness_check(D, T1, T2, tol=1e-8):
    """True iff ``T2`` is a translate of ``T1`` (vertex for vertex).

    ``D`` is the facet data both are supposed to share; it sets nothing but
    the length scale used for the tolerance.
    """
    v1 = T1.vertices - T1.vertices[0]
    v2 = T2.vertices - T2.vertices[0]
    scale = np.sqrt(np.max(D.areas)) if D is not None else 1.0
    scale = max(scale, float(np.max(np.abs(v1))))
    return bool(np.max(np.abs(v1 - v2)) <= tol * scale)


def _unit(rng):
    while True:
        v = rng.normal(size=3)
        n = float(la.norm(v))
        if n > 1e-12:
            return v / n


def pair_ratio(w, u):
    """Positive roots ``r`` of ``|-r w - u| = 1`` for unit ``u``.

    Expanding gives ``r^2 |w|^2 + 2 r (w.u) = 0``; the root ``r = 0`` is
    discarded, leaving at most one positive root.
    """
    ww = float(la.dot(w, w))
    wu = float(la.dot(w, u))
    roots = np.roots([ww, 2.0 * wu, 0.0]) if ww > 0 else np.array([])
    roots = sorted(float(r.real) for r in roots if abs(r.imag) == 0 and r.real > 0)
    return roots


def _areas_for_scale(areas, scale):
    # total surface area scale**2, so lengths scale linearly with ``scale``
    return areas * (scale**2 / np.sum(areas))


def generate_paired_area(rng_seed, scale=1.0):
    """Random tetrahedron with area(f0) == area(f1) and area(f2) == area(f3).

    Samples ``u0, u1, u2`` uniformly on the sphere, solves for the ratio
    ``r = area(f0) / area(f2)`` that makes ``u3 = -r (u0 + u1) - u2`` a unit
    vector, and reconstructs.  Samples without a positive root or with
    nearly coplanar normals are redrawn.
    """
    if not scale > 0:
        raise ValueError("scale must be positive")
    rng = np.random.default_rng(rng_seed)
    for _ in range(MAX_ATTEMPTS):
        u0, u1, u2 = _unit(rng), _unit(rng), _unit(rng)
        roots = pair_ratio(u0 + u1, u2)
        if not roots:
            continue
        r = roots[0]
        u3 = -r * (u0 + u1) - u2
        u3 = u3 / la.norm(u3)
        normals = np.array([u0, u1, u2, u3])
        if span_measure(normals) <= GENERATOR_SPAN_FLOOR:
            continue
        areas = _areas_for_scale(np.array([r, r, 1.0, 1.0]), scale)
        return reconstruct(FacetData(normals, areas)).tetrahedron
    raise GenerationFailed(f"no acceptable sample after {MAX_ATTEMPTS} attempts")


def generate_equiareal(rng_seed, scale=1.0):
    """Random tetrahedron whose four facets have the same area.

    Samples ``u0, u1``; the other two normals must satisfy
    ``u2 + u3 = -(u0 + u1)`` with both unit, which puts them at
    ``-w/2 +- rho q`` with ``q`` a random unit vector orthogonal to
    ``w = u0 + u1`` and ``rho`` the positive root of ``|w|^2/4 + rho^2 = 1``.
    """
    if not scale > 0:
        raise ValueError("scale must be positive")
    rng = np.random.default_rng(rng_seed)
    for _ in range(MAX_ATTEMPTS):
        u0, u1, p = _unit(rng), _unit(rng), _unit(rng)
        w = u0 + u1
        ww = float(la.dot(w, w))
        rho_sq = 1.0 - ww / 4.0
        q = p - (la.dot(p, w) / ww) * w if ww > 1e-12 else p
        qn = float(la.norm(q))
        if rho_sq <= 0 or qn < 1e-6:
            continue
        q = q / qn
        rho = np.sqrt(rho_sq)
        u2 = -w / 2 + rho * q
        u3 = -w / 2 - rho * q
        normals = np.array([u0, u1, u2 / la.norm(u2), u3 / la.norm(u3)])
        if span_measure(normals) <= GENERATOR_SPAN_FLOOR:
            continue
        areas = _areas_for_scale(np.ones(4), scale)
        return reconstruct(FacetData(normals, areas)).tetrahedron
    raise GenerationFailed(f"no acceptable sample after {MAX_ATTEMPTS} attempts")
