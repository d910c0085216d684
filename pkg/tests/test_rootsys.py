from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gaussorbits import rootsys as rs
from gaussorbits.rootsys import RootVec, rootvec

ALL_TYPES = (
    [("A", p) for p in range(1, 9)]
    + [("B", p) for p in range(1, 9)]
    + [("C", p) for p in range(1, 9)]
    + [("D", p) for p in range(2, 9)]
    + [("BC", p) for p in range(1, 9)]
    + [("E6", 6), ("E7", 7), ("E8", 8), ("F4", 4), ("G2", 2)]
)

COUNTS = {
    "A": lambda p: p * (p + 1) // 2,
    "B": lambda p: p * p,
    "C": lambda p: p * p,
    "D": lambda p: p * (p - 1),
    "BC": lambda p: p * p + p,
    "E6": lambda p: 36,
    "E7": lambda p: 63,
    "E8": lambda p: 120,
    "F4": lambda p: 24,
    "G2": lambda p: 6,
}

rationals = st.fractions(
    min_value=-10, max_value=10, max_denominator=12
)
vectors = st.integers(min_value=1, max_value=6).flatmap(
    lambda d: st.lists(rationals, min_size=d, max_size=d).map(RootVec)
)


class TestRootVec:
    def test_exact_arithmetic(self):
        v = rootvec(Fraction(1, 2), Fraction(1, 3))
        w = rootvec(Fraction(1, 6), 1)
        assert (v + w).coords == (Fraction(2, 3), Fraction(4, 3))
        assert (v - w).coords == (Fraction(1, 3), Fraction(-2, 3))
        assert (Fraction(3, 2) * v).coords == (Fraction(3, 4), Fraction(1, 2))
        assert -v == rootvec(Fraction(-1, 2), Fraction(-1, 3))

    @given(vectors, rationals)
    def test_scalar_multiplication_matches_fractions(self, v, s):
        assert (s * v).coords == tuple(s * c for c in v.coords)

    @given(vectors)
    def test_addition_matches_fractions(self, v):
        w = v + v
        assert w.coords == tuple(2 * c for c in v.coords)
        assert (v - v).is_zero()

    def test_equality_is_coordinatewise(self):
        assert rootvec(Fraction(2, 4), 0) == rootvec(Fraction(1, 2), 0)
        assert rootvec(1, 0) != rootvec(1, 0, 0)
        assert hash(rootvec(Fraction(2, 4))) == hash(rootvec(Fraction(1, 2)))

    def test_parse(self):
        assert RootVec.parse("1,-1/2,0") == rootvec(1, Fraction(-1, 2), 0)
        with pytest.raises(ValueError):
            RootVec.parse("1,oops")

    def test_immutable(self):
        v = rootvec(1, 2)
        with pytest.raises(AttributeError):
            v.coords = (1,)


class TestInner:
    def test_orthogonality(self):
        assert rs.inner(rootvec(1, 1), rootvec(1, -1)) == 0

    def test_g2_length_ratio(self):
        g2 = rs.build("G2")
        short = rs.short_roots(g2)[0]
        assert rs.norm_sq(g2.highest_root) / rs.norm_sq(short) == 3

    @given(vectors)
    def test_positive_definite(self, v):
        n = rs.inner(v, v)
        assert n >= 0
        assert (n == 0) == v.is_zero()

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            rs.inner(rootvec(1), rootvec(1, 0))


class TestBuild:
    @pytest.mark.parametrize("family,rank", ALL_TYPES)
    def test_positive_root_count(self, family, rank):
        system = rs.build(family, rank)
        assert len(system.positive_roots) == COUNTS[family](rank)

    def test_bad_types(self):
        with pytest.raises(ValueError, match="rank >= 2"):
            rs.build("D", 1)
        with pytest.raises(ValueError, match="rank >= 1"):
            rs.build("A", 0)
        with pytest.raises(ValueError, match="fixed rank"):
            rs.build("E6", 5)
        with pytest.raises(ValueError, match="unknown family"):
            rs.build("H", 3)
        with pytest.raises(ValueError, match="explicit rank"):
            rs.build("B")

    def test_bc2_roots(self):
        bc2 = rs.build("BC", 2)
        expected = {
            rootvec(1, 0), rootvec(0, 1), rootvec(2, 0), rootvec(0, 2),
            rootvec(1, 1), rootvec(1, -1),
        }
        assert set(bc2.positive_roots) == expected

    def test_g2_highest_root(self):
        g2 = rs.build("G2")
        assert len(g2.positive_roots) == 6
        assert g2.simple_coefficients(g2.highest_root) == (3, 2)

    def test_a1_single_root(self):
        a1 = rs.build("A", 1)
        assert len(a1.positive_roots) == 1
        assert a1.positive_roots[0] == a1.highest_root

    @pytest.mark.parametrize("family,rank", ALL_TYPES)
    def test_positive_roots_are_nonneg_simple_combinations(self, family, rank):
        system = rs.build(family, rank)
        for mu in system.positive_roots:
            coeffs = system.simple_coefficients(mu)
            assert all(c >= 0 for c in coeffs)
            assert all(c.denominator == 1 for c in coeffs)

    @pytest.mark.parametrize("family,rank", [("B", 3), ("BC", 2), ("G2", 2), ("F4", 4), ("E6", 6)])
    def test_full_reflection_closure(self, family, rank):
        system = rs.build(family, rank)
        roots = set(system.positive_roots) | {-v for v in system.positive_roots}
        for alpha in roots:
            for beta in roots:
                assert rs.reflect(beta, alpha) in roots

    @pytest.mark.parametrize("family,rank", ALL_TYPES)
    def test_highest_root_is_unique_long_lex_max(self, family, rank):
        system = rs.build(family, rank)
        delta = system.highest_root
        top = max(system.positive_norms)
        assert rs.norm_sq(delta) == top
        key = system.sort_key
        others = [v for v in system.positive_roots if v != delta]
        assert all(key(v) < key(delta) for v in others)

    @pytest.mark.parametrize("family,rank", ALL_TYPES)
    def test_highest_root_dominates(self, family, rank):
        if (family, rank) == ("D", 2):
            pytest.skip("D2 is reducible; no root dominates the other component")
        system = rs.build(family, rank)
        for mu in system.positive_roots:
            coeffs = system.simple_coefficients(system.highest_root - mu)
            assert all(c >= 0 for c in coeffs)

    def test_simply_laced_single_length(self):
        for family, rank in [("A", 3), ("D", 4), ("E6", 6), ("E7", 7), ("E8", 8)]:
            system = rs.build(family, rank)
            assert len(set(system.positive_norms)) == 1

    @pytest.mark.parametrize("family,rank", ALL_TYPES)
    def test_positive_roots_lex_positive(self, family, rank):
        system = rs.build(family, rank)
        zero = tuple([Fraction(0)] * system.ambient_dim)
        for v in system.positive_roots:
            assert system.sort_key(v) > zero


class TestIsRoot:
    def test_c2_doubled(self):
        c2 = rs.build("C", 2)
        assert rs.is_root(c2, rootvec(2, 0))
        assert not rs.is_root(c2, rootvec(3, 0))
        assert rs.is_root(c2, rootvec(-1, -1))

    def test_b3_sum_of_three(self):
        b3 = rs.build("B", 3)
        assert not rs.is_root(b3, rootvec(1, 1, 1))

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            rs.is_root(rs.build("B", 3), rootvec(1, 0))


class TestWolf:
    def test_highest(self):
        for family, rank in [("B", 3), ("E7", 7), ("BC", 2)]:
            system = rs.build(family, rank)
            assert rs.wolf_class(system, system.highest_root) == rs.WOLF_HIGHEST

    def test_orthogonal(self):
        b3 = rs.build("B", 3)
        assert rs.wolf_class(b3, rootvec(0, 0, 1)) == rs.WOLF_ORTHOGONAL

    def test_half_in_bc(self):
        bc2 = rs.build("BC", 2)
        assert rs.wolf_class(bc2, rootvec(1, 0)) == rs.WOLF_HALF

    def test_rejects_non_roots(self):
        b3 = rs.build("B", 3)
        with pytest.raises(ValueError):
            rs.wolf_class(b3, rootvec(1, 1, 1))

    @pytest.mark.parametrize("family,rank", ALL_TYPES)
    def test_ratio_cases_everywhere(self, family, rank):
        system = rs.build(family, rank)
        delta = system.highest_root
        for lam in system.positive_roots:
            cls = rs.wolf_class(system, lam)
            diff_is_root = system.contains(lam - delta)
            if cls == rs.WOLF_ORTHOGONAL:
                assert not diff_is_root
            elif cls == rs.WOLF_HALF:
                assert diff_is_root
            else:
                assert lam == delta

    @pytest.mark.parametrize("family,rank", ALL_TYPES)
    def test_string_depth(self, family, rank):
        system = rs.build(family, rank)
        for lam in system.positive_roots:
            depth = rs.delta_string_depth(system, lam)
            assert depth == -2 * rs.wolf_ratio(system, lam)
            assert depth in (0, -1, -2)
            assert (depth == -2) == (lam == system.highest_root)


class TestOrderAndClasses:
    def test_lowest_root_two_elements(self):
        b2 = rs.build("B", 2)
        picked = rs.lowest_root([rootvec(1, 0), rootvec(0, 1)], b2.sort_key)
        assert picked == rootvec(0, 1)

    def test_lowest_root_a2_is_simple(self):
        a2 = rs.build("A", 2)
        lowest = rs.lowest_root(a2.positive_roots, a2.sort_key)
        assert lowest in a2.simple_roots

    def test_lowest_root_empty(self):
        with pytest.raises(ValueError):
            rs.lowest_root([], rs.build("A", 2).sort_key)

    def test_lowest_root_mixed_dimensions(self):
        with pytest.raises(ValueError):
            rs.lowest_root([rootvec(1, 0), rootvec(1, 0, 0)], lambda v: v.coords)

    def test_long_short_partitions(self):
        a3 = rs.build("A", 3)
        assert len(rs.long_roots(a3)) == 6
        assert rs.short_roots(a3) == ()

        g2 = rs.build("G2")
        assert len(rs.short_roots(g2)) == 3
        assert len(rs.long_roots(g2)) == 3

        bc2 = rs.build("BC", 2)
        assert set(rs.long_roots(bc2)) == {rootvec(2, 0), rootvec(0, 2)}
        assert len(rs.short_roots(bc2)) == 4

    def test_root_class_labels(self):
        bc2 = rs.build("BC", 2)
        assert bc2.root_class(rootvec(2, 0)) == "long"
        assert bc2.root_class(rootvec(1, 1)) == "middle"
        assert bc2.root_class(rootvec(1, 0)) == "short"
        with pytest.raises(ValueError):
            bc2.root_class(rootvec(3, 0))

    def test_simple_coefficients_rejects_outside_span(self):
        a2 = rs.build("A", 2)
        with pytest.raises(ValueError):
            a2.simple_coefficients(rootvec(1, 1, 1))

    def test_fundamental_coweights(self):
        for family, rank in [("A", 3), ("B", 3), ("G2", 2)]:
            system = rs.build(family, rank)
            for i, h in enumerate(system.fundamental_coweights()):
                for j, alpha in enumerate(system.simple_roots):
                    assert rs.inner(h, alpha) == int(i == j)


class TestExceptionalTranscription:
    # classical highest-root coordinates in the simple basis; any slip in
    # the explicit root lists or the simple-root order would break these
    @pytest.mark.parametrize(
        "name,coeffs",
        [
            ("E6", (1, 2, 2, 3, 2, 1)),
            ("E7", (2, 2, 3, 4, 3, 2, 1)),
            ("E8", (2, 3, 4, 6, 5, 4, 3, 2)),
            ("F4", (2, 3, 4, 2)),
            ("G2", (3, 2)),
        ],
    )
    def test_highest_root_coefficients(self, name, coeffs):
        system = rs.build(name)
        assert system.simple_coefficients(system.highest_root) == coeffs

    def test_e_series_diagram_shape(self):
        # node 2 hangs off node 4; nodes 1-3-4-5-... form a chain
        for name, rank in [("E6", 6), ("E7", 7), ("E8", 8)]:
            system = rs.build(name)
            s = system.simple_roots
            links = {
                frozenset((i, j))
                for i in range(rank)
                for j in range(i + 1, rank)
                if rs.inner(s[i], s[j]) != 0
            }
            chain = {frozenset((0, 2))} | {
                frozenset((i, i + 1)) for i in range(2, rank - 1)
            }
            assert links == chain | {frozenset((1, 3))}

    def test_simple_roots_pair_nonpositively(self):
        for family, rank in ALL_TYPES:
            system = rs.build(family, rank)
            s = system.simple_roots
            for i in range(rank):
                for j in range(i + 1, rank):
                    assert rs.inner(s[i], s[j]) <= 0

    def test_subsystem_orthogonal_to_highest_root(self):
        # the positives orthogonal to delta form the known subsystems
        # (A1, C3, A5, D6, E7 respectively), pinning their counts
        expected = {"G2": 1, "F4": 9, "E6": 15, "E7": 30, "E8": 63}
        for name, want in expected.items():
            system = rs.build(name)
            count = sum(
                1
                for v in system.positive_roots
                if rs.is_orthogonal(v, system.highest_root)
            )
            assert count == want


class TestParallel:
    def test_parallel_pairs(self):
        assert rs.is_parallel(rootvec(2, -4), rootvec(-1, 2))
        assert not rs.is_parallel(rootvec(1, 0), rootvec(0, 1))
        assert not rs.is_parallel(rootvec(0, 0), rootvec(1, 1))

    @given(vectors, st.fractions(min_value=Fraction(1, 5), max_value=7, max_denominator=5))
    def test_scaling_is_parallel(self, v, s):
        if not v.is_zero():
            assert rs.is_parallel(v, s * v)
            assert rs.is_parallel(v, -s * v)
