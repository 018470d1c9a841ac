import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from tetrasym.errors import InvalidTriangle, NonPositiveEdge, NotRealizable
from tetrasym.heron import (
    REGGE_ACTIONS,
    Degeneracy,
    ReversibleParams,
    build_reversible,
    heron_triangle_area,
    implied_equalities,
    isosceles_volume_sq,
    perimeter_pairing_implication,
    realizability,
    regge_factor_permutation,
    regge_transform,
    reversible_params_from_edges,
    reversible_volume_sq,
    reversible_volume_sq_factored,
)
from tetrasym.tetra import (
    PAIRINGS,
    EdgeLengths,
    Verdict,
    cayley_menger_volume_sq,
    classify,
    edge_lengths,
    regular_tetrahedron,
    volume_from_vertices,
)

SQ2 = math.sqrt(2)
# 72 V^2 for (3, 4, 4, 3): (144 - 49) * (25 - 12.5)
V2_3443 = Fraction(2375, 144)


def sample_params(rng, n, lo=0.1, hi=10.0, strict=True):
    out = []
    while len(out) < n:
        a, b, c, d = np.exp(rng.uniform(np.log(lo), np.log(hi), 4))
        try:
            p = ReversibleParams(a, b, c, d)
        except (InvalidTriangle, NonPositiveEdge):
            continue
        v = realizability(p)
        if v.factor1 > 0 and v.factor2 > 0 and (v.strictly_realizable or not strict):
            out.append(p)
    return out


class TestHeronTriangle:
    def test_examples(self):
        assert heron_triangle_area(3, 4, 5) == 6
        assert heron_triangle_area(1, 1, 1) == pytest.approx(math.sqrt(3) / 4, rel=1e-15)
        assert heron_triangle_area(1, 1, 2) == 0

    def test_invalid(self):
        with pytest.raises(InvalidTriangle):
            heron_triangle_area(1, 1, 3)
        with pytest.raises(InvalidTriangle):
            heron_triangle_area(0, 1, 1)

    def test_needle_against_high_precision(self):
        a, b, c = 1.0, 1.0, 2 - 1e-12
        got = heron_triangle_area(a, b, c)
        assert got >= 0
        with mpmath.workdps(60):
            A, B, C = (mpmath.mpf(x) for x in (a, b, c))
            exact = mpmath.sqrt((A + B + C) * (-A + B + C) * (A - B + C) * (A + B - C)) / 4
        assert got == pytest.approx(float(exact), rel=1e-14)

    def test_permutation_invariant_and_vectorised(self, rng):
        sides = rng.uniform(1, 2, (100, 3))
        areas = heron_triangle_area(sides[:, 0], sides[:, 1], sides[:, 2])
        again = heron_triangle_area(sides[:, 2], sides[:, 0], sides[:, 1])
        np.testing.assert_array_equal(areas, again)

    def test_agrees_with_cross_product_area(self, rng):
        for _ in range(200):
            p = rng.normal(size=(3, 3))
            cross_area = 0.5 * np.linalg.norm(np.cross(p[1] - p[0], p[2] - p[0]))
            s = [np.linalg.norm(p[i] - p[j]) for i, j in ((0, 1), (0, 2), (1, 2))]
            assert heron_triangle_area(*s) == pytest.approx(cross_area, rel=1e-10)


class TestIsosceles:
    def test_examples(self):
        assert isosceles_volume_sq(1, 1, 1) == pytest.approx(1 / 72, rel=1e-15)
        assert isosceles_volume_sq(2, 2, 2) == pytest.approx(8 / 9, rel=1e-15)
        assert isosceles_volume_sq(1, 1, SQ2) == pytest.approx(0, abs=1e-15)

    def test_negative_when_obtuse(self):
        assert isosceles_volume_sq(1, 1, 1.5) < 0


class TestReversibleVolume:
    def test_regular(self):
        assert reversible_volume_sq(ReversibleParams(1, 1, 1, 1)) == pytest.approx(1 / 72, rel=1e-15)
        assert reversible_volume_sq(ReversibleParams(1, 1, 1, 1)) == pytest.approx((SQ2 / 12) ** 2, rel=1e-14)

    def test_3443_against_exact_vertex_oracle(self):
        # c = 4, d = 3: x = 7/8, y^2 = 95/64, h^2 = 25/4, V = c y h / 3
        y2, h2 = Fraction(95, 64), Fraction(25, 4)
        v2 = Fraction(16) * y2 * h2 / 9
        assert v2 == V2_3443 == Fraction(1187.5) / 72
        p = ReversibleParams(3, 4, 4, 3)
        assert reversible_volume_sq(p) == pytest.approx(float(v2), rel=1e-15)
        T = build_reversible(p)
        assert volume_from_vertices(T) ** 2 == pytest.approx(float(v2), rel=1e-13)

    def test_parallelogram_zero(self):
        assert reversible_volume_sq(ReversibleParams(1, 1, SQ2, SQ2)) == pytest.approx(0, abs=1e-15)

    @given(
        st.integers(1, 60), st.integers(1, 60), st.integers(1, 60), st.integers(1, 60)
    )
    def test_matches_literal_polynomial_exactly(self, a, b, c, d):
        # integer inputs keep every intermediate exact in double precision
        A, B, C, D = a * a, b * b, c * c, d * d
        literal = Fraction((C * D - (A - B) ** 2) * (2 * A + 2 * B - C - D), 144)
        assert reversible_volume_sq((a, b, c, d)) == pytest.approx(float(literal), rel=1e-15, abs=0)
        assert reversible_volume_sq_factored((a, b, c, d)) == pytest.approx(float(literal), rel=1e-15, abs=0)

    def test_factorizations_agree(self, rng):
        for p in sample_params(rng, 2000):
            x = reversible_volume_sq(p)
            y = reversible_volume_sq_factored(p)
            assert abs(x - y) <= 1e-12 * max(abs(x), abs(y))

    def test_reduces_to_isosceles(self, rng):
        a, b, c = np.exp(rng.uniform(np.log(0.1), np.log(10), (3, 10_000)))
        x = reversible_volume_sq((a, b, c, c))
        y = isosceles_volume_sq(a, b, c)
        assert np.all(np.abs(x - y) <= 1e-13 * np.maximum(np.abs(x), np.abs(y)))

    def test_homogeneity(self, rng):
        for p in sample_params(rng, 500):
            lam = rng.uniform(0.2, 5)
            q = ReversibleParams(*(lam * t for t in p.as_tuple()))
            assert reversible_volume_sq(q) == pytest.approx(lam**6 * reversible_volume_sq(p), rel=1e-12)

    def test_formula_vs_vertex_and_cayley_menger(self, rng):
        for p in sample_params(rng, 2000):
            closed = reversible_volume_sq(p)
            vd = volume_from_vertices(build_reversible(p)) ** 2
            cm = cayley_menger_volume_sq(p.edge_lengths())
            assert vd == pytest.approx(closed, rel=1e-10)
            assert cm == pytest.approx(closed, rel=1e-9)


class TestRealizability:
    def test_parallelogram(self):
        v = realizability(ReversibleParams(1, 1, SQ2, SQ2))
        assert v.degeneracy_kind in (Degeneracy.PARALLELOGRAM, Degeneracy.BOTH)
        assert v.factor2 == pytest.approx(0, abs=1e-15)
        assert v.realizable

    def test_1213_sits_on_both_manifolds(self):
        # b^2 - a^2 = cd = 3 and also 2a^2 + 2b^2 = c^2 + d^2 = 10: a collinear flat case
        v = realizability(ReversibleParams(1, 2, 1, 3))
        assert v.factor1 == 0
        assert v.factor2 == 0
        assert v.degeneracy_kind is Degeneracy.BOTH

    def test_pure_trapezoid(self):
        # c = 1, d = 3, height 1: legs sqrt(2), diagonals sqrt(5)
        v = realizability(ReversibleParams(SQ2, math.sqrt(5), 1, 3))
        assert v.degeneracy_kind is Degeneracy.TRAPEZOID
        assert v.factor1 == pytest.approx(0, abs=1e-13)
        assert v.factor2 > 0

    def test_3443(self):
        v = realizability(ReversibleParams(3, 4, 4, 3))
        assert v.factor1 == 95
        assert v.factor2 == 12.5
        assert v.realizable and v.degeneracy_kind is Degeneracy.NONE
        build_reversible(ReversibleParams(3, 4, 4, 3))

    def test_not_realizable(self):
        p = ReversibleParams(1, 1, 1.9, 1.9)
        assert not realizability(p).realizable
        with pytest.raises(NotRealizable):
            build_reversible(p)

    def test_params_validation(self):
        with pytest.raises(NonPositiveEdge):
            ReversibleParams(1, 0, 1, 1)
        with pytest.raises(InvalidTriangle):
            ReversibleParams(1, 1, 3, 1)


class TestBuildReversible:
    def test_regular(self):
        T = build_reversible(ReversibleParams(1, 1, 1, 1))
        assert volume_from_vertices(T) == pytest.approx(SQ2 / 12, abs=1e-15)
        assert classify(T).verdict is Verdict.REGULAR

    def test_trapezoid_flat(self):
        T = build_reversible(ReversibleParams(1, 2, 1, 3), allow_degenerate=True)
        assert np.all(T.vertices[:, 1] == 0)
        assert volume_from_vertices(T) == 0

    def test_edges_and_half_turn(self, rng):
        for p in sample_params(rng, 300):
            T = build_reversible(p)
            L = edge_lengths(T).as_dict()
            a, b, c, d = p.as_tuple()
            assert L["e01"] == pytest.approx(c, rel=1e-12)
            assert L["e23"] == pytest.approx(d, rel=1e-12)
            assert sorted([L["e02"], L["e13"], L["e03"], L["e12"]]) == pytest.approx(
                sorted([a, a, b, b]), rel=1e-12
            )
            turned = T.vertices * np.array([-1, -1, 1])
            # the half-turn permutes the vertex set
            for v in turned:
                assert np.min(np.linalg.norm(T.vertices - v, axis=1)) <= 1e-12 * p.max_length()
            assert classify(T).verdict.at_least(Verdict.REVERSIBLE)


class TestDegeneracyManifolds:
    def test_parallelogram_manifold(self, rng):
        for _ in range(1000):
            a, b = rng.uniform(0.1, 10, 2)
            theta = rng.uniform(0.05, math.pi - 0.05)
            c = math.sqrt(a * a + b * b - 2 * a * b * math.cos(theta))
            d = math.sqrt(a * a + b * b + 2 * a * b * math.cos(theta))
            p = ReversibleParams(a, b, c, d)
            assert abs(reversible_volume_sq(p)) <= 1e-12 * p.max_length() ** 6
            assert realizability(p).degeneracy_kind in (Degeneracy.PARALLELOGRAM, Degeneracy.BOTH)

    def test_trapezoid_manifold(self, rng):
        for _ in range(1000):
            c, d, t = rng.uniform(0.1, 10, 3)
            a = math.hypot((d - c) / 2, t)
            b = math.hypot((c + d) / 2, t)
            p = ReversibleParams(a, b, c, d)
            assert abs(reversible_volume_sq(p)) <= 1e-12 * p.max_length() ** 6
            assert realizability(p).degeneracy_kind in (Degeneracy.TRAPEZOID, Degeneracy.BOTH)


class TestRegge:
    def test_cd_action_swaps(self):
        p = ReversibleParams(3, 4, 4, 3)
        q = regge_transform(p, "cd")
        assert q == ReversibleParams(4, 3, 4, 3)
        assert reversible_volume_sq(q) == reversible_volume_sq(p)

    def test_aa_action_example(self):
        q = regge_transform(ReversibleParams(3, 4, 4, 3), "aa")
        assert q.as_tuple() == (3, 3.5, 3.5, 4.5)
        assert cayley_menger_volume_sq(q.edge_lengths()) == pytest.approx(float(V2_3443), rel=1e-9)

    def test_involution_exact_on_example(self):
        p = ReversibleParams(3, 4, 4, 3)
        for action in REGGE_ACTIONS:
            assert regge_transform(regge_transform(p, action), action) == p

    def test_images_stay_positive(self, rng):
        # valid faces force |c - d| < 2 min(a, b), so s - l never reaches zero
        for p in sample_params(rng, 2000, strict=False):
            for action in REGGE_ACTIONS:
                assert min(regge_transform(p, action).as_tuple()) > 0

    def test_unknown_action(self):
        with pytest.raises(ValueError):
            regge_transform(ReversibleParams(1, 1, 1, 1), "ab")

    def test_invariance_over_samples(self, rng):
        for p in sample_params(rng, 1000):
            before = cayley_menger_volume_sq(p.edge_lengths())
            for action in REGGE_ACTIONS:
                try:
                    q = regge_transform(p, action)
                except (NonPositiveEdge, InvalidTriangle):
                    continue
                assert cayley_menger_volume_sq(q.edge_lengths()) == pytest.approx(before, rel=1e-9)
                assert reversible_volume_sq(q) == pytest.approx(reversible_volume_sq(p), rel=1e-9)
                back = regge_transform(q, action)
                np.testing.assert_allclose(back.as_tuple(), p.as_tuple(), rtol=1e-12)
                assert classify(build_reversible(q)).verdict.at_least(Verdict.REVERSIBLE)

    def test_observed_factor_permutations(self, rng):
        # Recorded empirically: each action exchanges two of the three linear
        # factors (cd + a^2 - b^2, cd - a^2 + b^2, a^2 + b^2 - (c^2 + d^2)/2).
        expected = {"cd": (1, 0, 2), "aa": (2, 1, 0), "bb": (0, 2, 1)}
        for p in sample_params(rng, 300, lo=0.5, hi=2.0):
            for action in REGGE_ACTIONS:
                try:
                    perm = regge_factor_permutation(p, action)
                except (NonPositiveEdge, InvalidTriangle):
                    continue
                assert perm == expected[action]


class TestPerimeterImplication:
    def test_implied_equalities_match_sympy(self):
        sympy = pytest.importorskip("sympy")
        e = dict(zip(("e01", "e02", "e03", "e12", "e13", "e23"), sympy.symbols("e01 e02 e03 e12 e13 e23")))
        facet_edges = {
            0: ("e12", "e13", "e23"),
            1: ("e02", "e03", "e23"),
            2: ("e01", "e03", "e13"),
            3: ("e01", "e02", "e12"),
        }
        opposite = (("e01", "e23"), ("e02", "e13"), ("e03", "e12"))
        for pairing in PAIRINGS:
            eqs = [
                sum(e[k] for k in facet_edges[i]) - sum(e[k] for k in facet_edges[j])
                for i, j in pairing
            ]
            # solve for two unknowns and see which opposite differences vanish
            unknowns = [e[p] for p, q in opposite if (p, q) in implied_equalities(pairing)[0]]
            sol = sympy.solve(eqs, unknowns, dict=True)[0]
            forced = tuple(
                (p, q) for p, q in opposite
                if sympy.simplify((e[p] - e[q]).subs(sol)) == 0
            )
            implied, free = implied_equalities(pairing)
            assert implied == forced
            assert len(implied) == 2 and len(free) == 1

    def test_pairing_01_23(self):
        implied, free = implied_equalities(((0, 1), (2, 3)))
        assert set(implied) == {("e02", "e13"), ("e03", "e12")}
        assert free == (("e01", "e23"),)

    def test_reversible_example(self):
        L = edge_lengths(build_reversible(ReversibleParams(3, 4, 4, 3)))
        out = perimeter_pairing_implication(L, ((0, 1), (2, 3)))
        assert out.perimeters_match
        assert out.implied_hold
        assert out.implied_residual <= 1e-12

    def test_regular_all_pairings(self):
        L = edge_lengths(regular_tetrahedron())
        for pairing in PAIRINGS:
            out = perimeter_pairing_implication(L, pairing)
            assert out.perimeters_match and out.implied_hold

    def test_generic_does_not_match(self):
        L = EdgeLengths(1, 1.1, 1.2, 1.3, 1.4, 1.5)
        for pairing in PAIRINGS:
            assert not perimeter_pairing_implication(L, pairing).perimeters_match

    def test_bad_pairing(self):
        with pytest.raises(ValueError):
            perimeter_pairing_implication(EdgeLengths(1, 1, 1, 1, 1, 1), ((0, 1), (1, 2)))


def test_params_from_edges():
    p = reversible_params_from_edges(ReversibleParams(3, 4, 4, 3).edge_lengths())
    assert p == ReversibleParams(3, 4, 4, 3)
    assert reversible_params_from_edges(EdgeLengths(1, 1.1, 1.2, 1.3, 1.4, 1.5)) is None
    iso = reversible_params_from_edges(EdgeLengths(2, 2, 2, 2, 2, 2))
    assert iso == ReversibleParams(2, 2, 2, 2)
