"""Seeded invariant sweeps.

Each sweep draws samples from a fixed seed, measures one or more residuals
per sample and compares the worst one against a bound.  Results depend
only on ``(name, samples, seed)``; timing is kept out of the serialised
report so repeated runs produce identical JSON.
"""

import json
import time
from dataclasses import dataclass, field

import numpy as np

from .errors import TetraError
from .heron import (
    REGGE_ACTIONS,
    Degeneracy,
    ReversibleParams,
    build_reversible,
    implied_equalities,
    isosceles_volume_sq,
    perimeter_equations,
    perimeter_pairing_implication,
    realizability,
    regge_transform,
    reversible_factors,
    reversible_vertices,
    reversible_volume_sq,
    reversible_volume_sq_factored,
)
from .minkowski import (
    closure_residual,
    generate_equiareal,
    generate_paired_area,
    reconstruct,
    uniqueness_check,
)
from .tetra import (
    PAIRINGS,
    EDGE_NAMES,
    EdgeLengths,
    Tetrahedron,
    Verdict,
    _signed_six_volume,
    cayley_menger_det,
    cayley_menger_volume_sq,
    classify,
    congruence_residual,
    edge_lengths,
    facet_data,
)

LOG_RANGE = (0.1, 10.0)
CHUNK = 1 << 16


@dataclass
class InvariantResult:
    name: str
    bound: float
    max_residual: float = 0.0
    total: float = 0.0
    count: int = 0
    failures: int = 0

    def add(self, residuals):
        r = np.atleast_1d(np.asarray(residuals, dtype=float))
        if r.size == 0:
            return
        bad = ~(r <= self.bound)
        self.failures += int(np.count_nonzero(bad))
        finite = r[np.isfinite(r)]
        worst = float(np.max(r)) if finite.size == r.size else float("inf")
        self.max_residual = max(self.max_residual, worst)
        self.total += float(np.sum(finite))
        self.count += int(r.size)

    @property
    def mean_residual(self):
        return self.total / self.count if self.count else 0.0

    @property
    def passed(self):
        return self.count > 0 and self.failures == 0

    def as_dict(self):
        return {
            "name": self.name,
            "bound": self.bound,
            "max_residual": self.max_residual,
            "mean_residual": self.mean_residual,
            "checked": self.count,
            "failures": self.failures,
            "pass": self.passed,
        }


@dataclass
class SweepReport:
    name: str
    seed: int
    samples_requested: int
    samples_attempted: int = 0
    samples_accepted: int = 0
    invariants: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self):
        return self.samples_accepted > 0 and all(inv.passed for inv in self.invariants)

    def invariant(self, name):
        for inv in self.invariants:
            if inv.name == name:
                return inv
        raise KeyError(name)

    def as_dict(self, timing=False):
        out = {
            "sweep": self.name,
            "seed": self.seed,
            "samples_requested": self.samples_requested,
            "samples_attempted": self.samples_attempted,
            "samples_accepted": self.samples_accepted,
            "invariants": sorted((inv.as_dict() for inv in self.invariants), key=lambda d: d["name"]),
            "pass": self.passed,
        }
        if timing:
            out["wall_time"] = self.wall_time
        return out

    def to_json(self, timing=False):
        return json.dumps(self.as_dict(timing), sort_keys=True, indent=2)

    def summary_lines(self):
        lines = [
            f"sweep {self.name}: seed={self.seed} accepted {self.samples_accepted}"
            f"/{self.samples_attempted} attempted"
        ]
        for inv in self.invariants:
            status = "PASS" if inv.passed else "FAIL"
            lines.append(
                f"  [{status}] {inv.name}: max {inv.max_residual:.3e} "
                f"mean {inv.mean_residual:.3e} bound {inv.bound:g} ({inv.failures} failures)"
            )
        lines.append(f"  wall time {self.wall_time:.2f} s")
        return lines


def rel_diff(x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    scale = np.maximum(np.abs(x), np.abs(y))
    safe = np.where(scale > 0, scale, 1.0)
    return np.where(scale > 0, np.abs(x - y) / safe, 0.0)


def sample_seed(seed, index):
    """Seed for the ``index``-th sample, independent of how samples are chunked."""
    return [int(seed), int(index)]


def log_uniform(rng, size, lo=LOG_RANGE[0], hi=LOG_RANGE[1]):
    return np.exp(rng.uniform(np.log(lo), np.log(hi), size))


def _weak_triangle(x, y, z):
    s = np.sort(np.stack([x, y, z]), axis=0)
    return s[2] <= s[0] + s[1]


def sample_realizable_params(n, seed):
    """First ``n`` log-uniform ``(a, b, c, d)`` draws with both volume factors positive.

    Returns the four parameter arrays and the number of raw draws used.
    """
    rng = np.random.default_rng(seed)
    kept, drawn, have = [], 0, 0
    while have < n:
        a, b, c, d = log_uniform(rng, (4, CHUNK))
        drawn += CHUNK
        f1, f2 = reversible_factors(a, b, c, d)
        ok = (f1 > 0) & (f2 > 0) & _weak_triangle(a, b, c) & _weak_triangle(a, b, d)
        block = np.stack([a, b, c, d])[:, ok]
        kept.append(block)
        have += block.shape[1]
    params = np.concatenate(kept, axis=1)[:, :n]
    return tuple(params), drawn


def _timed(fn):
    def wrapper(samples, seed):
        if samples < 1:
            raise ValueError("sample count must be at least 1")
        start = time.perf_counter()
        report = fn(samples, seed)
        report.wall_time = time.perf_counter() - start
        return report

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


@_timed
def sweep_volume_formula(samples, seed):
    """Closed form vs vertex determinant vs Cayley-Menger on realisable parameters."""
    (a, b, c, d), drawn = sample_realizable_params(samples, seed)
    closed = reversible_volume_sq((a, b, c, d))
    factored = reversible_volume_sq_factored((a, b, c, d))
    vertex = (_signed_six_volume(reversible_vertices(a, b, c, d)) / 6.0) ** 2
    edges = np.stack([c, a, b, b, a, d], axis=-1)
    cm = cayley_menger_det(edges**2) / 288.0

    rep = SweepReport("volume-formula", seed, samples, drawn, samples)
    checks = [
        ("closed_vs_vertex", 1e-9, rel_diff(closed, vertex)),
        ("closed_vs_cayley_menger", 1e-9, rel_diff(closed, cm)),
        ("vertex_vs_cayley_menger", 1e-9, rel_diff(vertex, cm)),
        ("product_vs_factored", 1e-12, rel_diff(closed, factored)),
    ]
    for name, bound, r in checks:
        inv = InvariantResult(name, bound)
        inv.add(r)
        rep.invariants.append(inv)
    return rep


@_timed
def sweep_isosceles(samples, seed):
    """Reversible formula with ``c == d`` against the isosceles formula."""
    rng = np.random.default_rng(seed)
    a, b, c = log_uniform(rng, (3, samples))
    rep = SweepReport("isosceles", seed, samples, samples, samples)
    inv = InvariantResult("reversible_vs_isosceles", 1e-13)
    inv.add(rel_diff(reversible_volume_sq((a, b, c, c)), isosceles_volume_sq(a, b, c)))
    rep.invariants.append(inv)
    return rep


def _pair_area_residual(areas, pairing):
    return max(float(rel_diff(areas[i], areas[j])) for i, j in pairing)


@_timed
def sweep_theorem2(samples, seed, tol=1e-7):
    """Paired facet areas force congruent facet pairs."""
    rep = SweepReport("theorem2", seed, samples)
    pairing = PAIRINGS[0]
    verdict = InvariantResult("verdict_at_least_reversible", 0.0)
    cong = InvariantResult("pair_congruence", tol)
    areas = InvariantResult("pair_area_equality", 1e-10)
    closure = InvariantResult("closure", 1e-10)
    for k in range(samples):
        T = generate_paired_area(sample_seed(seed, k))
        D = facet_data(T)
        cls = classify(T, tol)
        verdict.add(0.0 if cls.verdict.at_least(Verdict.REVERSIBLE) else 1.0)
        cong.add(cls.congruence_residuals[pairing])
        areas.add(_pair_area_residual(D.areas, pairing))
        closure.add(closure_residual(D))
    rep.samples_attempted = rep.samples_accepted = samples
    rep.invariants += [verdict, cong, areas, closure]
    return rep


@_timed
def sweep_corollary3(samples, seed, tol=1e-7):
    """Equal facet areas force four mutually congruent facets."""
    rep = SweepReport("corollary3", seed, samples)
    verdict = InvariantResult("verdict_at_least_isosceles", 0.0)
    cong = InvariantResult("all_facets_congruent", tol)
    areas = InvariantResult("area_equality", 1e-10)
    for k in range(samples):
        T = generate_equiareal(sample_seed(seed, k))
        L = edge_lengths(T)
        triples = L.facet_triples()
        D = facet_data(T)
        cls = classify(T, tol)
        verdict.add(0.0 if cls.verdict.at_least(Verdict.ISOSCELES) else 1.0)
        cong.add(
            max(congruence_residual(triples[i], triples[j]) for i in range(4) for j in range(i + 1, 4))
        )
        areas.add(float(np.max(D.areas) - np.min(D.areas)) / float(np.max(D.areas)))
    rep.samples_attempted = rep.samples_accepted = samples
    rep.invariants += [verdict, cong, areas]
    return rep


def random_tetrahedron(rng, box=10.0):
    """Uniform vertices in ``[-box, box]^3``, redrawn while degenerate."""
    while True:
        v = rng.uniform(-box, box, (4, 3))
        try:
            return Tetrahedron(v)
        except TetraError:
            continue


@_timed
def sweep_roundtrip(samples, seed):
    """facet_data -> reconstruct -> facet_data on random tetrahedra."""
    rep = SweepReport("roundtrip", seed, samples)
    rng = np.random.default_rng(seed)
    normals = InvariantResult("normal_error_rad", 1e-8)
    areas = InvariantResult("area_error_rel", 1e-8)
    closure = InvariantResult("closure", 1e-12)
    unique = InvariantResult("translate_of_original", 0.0)
    for _ in range(samples):
        T = random_tetrahedron(rng)
        D = facet_data(T)
        report = reconstruct(D)
        normals.add(report.roundtrip_normal_error)
        areas.add(report.roundtrip_area_error)
        closure.add(closure_residual(D))
        same = uniqueness_check(D, report.tetrahedron, T.translated(-T[0]))
        unique.add(0.0 if same else 1.0)
    rep.samples_attempted = rep.samples_accepted = samples
    rep.invariants += [normals, areas, closure, unique]
    return rep


def _parallelogram_params(rng, n):
    a, b = log_uniform(rng, (2, n))
    theta = rng.uniform(0.01 * np.pi, 0.99 * np.pi, n)
    cross_term = 2 * a * b * np.cos(theta)
    c = np.sqrt(a * a + b * b - cross_term)
    d = np.sqrt(a * a + b * b + cross_term)
    return a, b, c, d


def _trapezoid_params(rng, n):
    # parallel sides c, d, height t; legs a, diagonals b
    c, d, t = log_uniform(rng, (3, n))
    a = np.sqrt(((d - c) / 2) ** 2 + t * t)
    b = np.sqrt(((c + d) / 2) ** 2 + t * t)
    return a, b, c, d


@_timed
def sweep_degeneracy(samples, seed):
    """Volume vanishes on the parallelogram and trapezoid manifolds."""
    rng = np.random.default_rng(seed)
    rep = SweepReport("degeneracy", seed, samples)
    expected = {
        "parallelogram": (Degeneracy.PARALLELOGRAM, Degeneracy.BOTH),
        "trapezoid": (Degeneracy.TRAPEZOID, Degeneracy.BOTH),
    }
    for kind, sampler in (("parallelogram", _parallelogram_params), ("trapezoid", _trapezoid_params)):
        vol = InvariantResult(f"{kind}_volume_sq", 1e-12)
        flag = InvariantResult(f"{kind}_flag", 0.0)
        a, b, c, d = sampler(rng, samples)
        scale = np.max(np.stack([a, b, c, d]), axis=0)
        vol.add(np.abs(reversible_volume_sq((a, b, c, d))) / scale**6)
        for params in zip(a, b, c, d):
            verdict = realizability(ReversibleParams(*(float(x) for x in params)))
            flag.add(0.0 if verdict.degeneracy_kind in expected[kind] else 1.0)
        rep.invariants += [vol, flag]
    rep.samples_attempted = rep.samples_accepted = 2 * samples
    return rep


@_timed
def sweep_regge(samples, seed, tol=1e-9):
    """Regge actions preserve volume and reversibility and are involutions."""
    (a, b, c, d), drawn = sample_realizable_params(samples, seed)
    rep = SweepReport("regge", seed, samples, drawn, samples)
    volume = InvariantResult("cayley_menger_preserved", 1e-9)
    involution = InvariantResult("involution", 1e-12)
    reversible = InvariantResult("image_classifies_reversible", 0.0)
    applied = InvariantResult("image_realizable", 0.0)
    for params in zip(a, b, c, d):
        p = ReversibleParams(*(float(x) for x in params))
        before = cayley_menger_volume_sq(p.edge_lengths())
        for action in REGGE_ACTIONS:
            try:
                q = regge_transform(p, action)
            except TetraError:
                continue
            back = regge_transform(q, action)
            involution.add(float(np.max(rel_diff(back.as_tuple(), p.as_tuple()))))
            volume.add(float(rel_diff(cayley_menger_volume_sq(q.edge_lengths()), before)))
            try:
                T = build_reversible(q)
            except TetraError:
                applied.add(1.0)
                continue
            applied.add(0.0)
            ok = classify(T, tol).verdict.at_least(Verdict.REVERSIBLE)
            reversible.add(0.0 if ok else 1.0)
    rep.invariants += [volume, involution, reversible, applied]
    return rep


def perimeter_paired_edges(rng, pairing):
    """Random edge lengths satisfying the pairing's two perimeter equations.

    Four edges are drawn freely and the linear system is solved for the
    remaining two, one from each opposite pair the equations constrain.
    """
    rows = perimeter_equations(pairing)
    implied, _ = implied_equalities(pairing)
    cols = [EDGE_NAMES.index(p) for p, _ in implied]
    known = [k for k in range(6) if k not in cols]
    while True:
        e = log_uniform(rng, 6, 0.5, 2.0)
        e[cols] = np.linalg.solve(rows[:, cols], -rows[:, known] @ e[known])
        if np.all(e > 0):
            try:
                return EdgeLengths.from_array(e)
            except TetraError:
                continue


@_timed
def sweep_perimeter(samples, seed):
    """Equal perimeters within a pairing force two opposite-edge equalities."""
    rng = np.random.default_rng(seed)
    rep = SweepReport("perimeter", seed, samples)
    perim = InvariantResult("perimeter_equations", 1e-12)
    implied = InvariantResult("implied_opposite_equalities", 1e-12)
    for k in range(samples):
        pairing = PAIRINGS[k % 3]
        L = perimeter_paired_edges(rng, pairing)
        out = perimeter_pairing_implication(L, pairing)
        perim.add(out.perimeter_residual)
        implied.add(out.implied_residual)
    rep.samples_attempted = rep.samples_accepted = samples
    rep.invariants += [perim, implied]
    return rep


SWEEPS = {
    "theorem2": sweep_theorem2,
    "corollary3": sweep_corollary3,
    "volume-formula": sweep_volume_formula,
    "isosceles": sweep_isosceles,
    "regge": sweep_regge,
    "degeneracy": sweep_degeneracy,
    "roundtrip": sweep_roundtrip,
    "perimeter": sweep_perimeter,
}


def run_sweep(name, samples, seed):
    try:
        fn = SWEEPS[name]
    except KeyError:
        raise KeyError(f"unknown sweep {name!r}; choose from {sorted(SWEEPS)}") from None
    return fn(samples, seed)
