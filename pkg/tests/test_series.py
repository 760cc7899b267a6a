"""Exact series arithmetic, closed forms, assemblies, and general form."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from permdyck import series
from permdyck.series import Series, from_x_poly, monomial, one

CATALAN = (1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786, 208012)
SEQ_312_1 = (0, 0, 0, 1, 5, 21, 84, 330, 1287, 5005, 19448, 75582, 293930)
SEQ_312_2 = (0, 0, 0, 0, 4, 23, 107, 464, 1950, 8063, 33033, 134576, 546312)
SEQ_321_1 = (0, 0, 0, 1, 6, 27, 110, 429, 1638, 6188, 23256, 87210, 326876)
SEQ_321_2 = (0, 0, 0, 0, 3, 24, 133, 635, 2807, 11864, 48756, 196707, 783750)

small_polys = st.lists(st.integers(min_value=-9, max_value=9), min_size=1, max_size=8).map(
    lambda cs: Series(cs + [0] * (24 - len(cs)) if len(cs) < 24 else cs[:24])
)


class TestArithmetic:
    def test_sqrt_one_minus_4x(self):
        s = series.sqrt_one_minus_4x(16)
        assert s.x_coefficients()[:4] == (1, -2, -2, -4)
        assert (s * s).first_mismatch(from_x_poly({0: 1, 1: -4}, 16)) is None

    def test_reciprocal(self):
        f = from_x_poly({0: 1, 1: -4}, 20)
        assert (f * (one(20) / f)).first_mismatch(one(20)) is None

    def test_shift(self):
        c = series.catalan(10)
        xc = c.shift(2)
        assert xc.valuation() == 2
        assert xc.shift(-2).first_mismatch(c) is None
        with pytest.raises(ValueError):
            c.shift(-1)

    def test_division_valuation_guard(self):
        t2 = monomial(2, 10)
        with pytest.raises(ValueError):
            one(10) / t2
        assert (t2 / t2).coeff(0) == 1
        with pytest.raises(ZeroDivisionError):
            one(10) / series.zero(10)

    def test_sqrt_requires_unit_constant(self):
        with pytest.raises(ValueError):
            from_x_poly({0: 2}, 8).sqrt()

    def test_coeff_bounds(self):
        c = series.catalan(10)
        with pytest.raises(IndexError):
            c.coeff(11)

    def test_lives_in_x(self):
        assert series.catalan(12).lives_in_x()
        assert not monomial(1, 4).lives_in_x()
        with pytest.raises(ValueError):
            monomial(1, 4).x_coefficients()

    @settings(deadline=None, max_examples=60)
    @given(small_polys, small_polys)
    def test_ring_properties(self, f, g):
        assert (f + g).first_mismatch(g + f) is None
        assert (f * g).first_mismatch(g * f) is None
        assert ((f + g) - g).first_mismatch(f) is None

    @settings(deadline=None, max_examples=60)
    @given(small_polys)
    def test_division_roundtrip(self, g):
        if g.is_zero():
            return
        f = series.catalan(g.order)
        assert ((f * g) / g).first_mismatch(f.truncate((f * g).order - g.valuation())) is None

    @settings(deadline=None, max_examples=40)
    @given(small_polys)
    def test_sqrt_squares_back(self, f):
        h = one(f.order) + f.shift(1).truncate(f.order)  # constant term 1
        assert (h.sqrt() * h.sqrt()).first_mismatch(h) is None


class TestCatalan:
    def test_sequence(self):
        c = series.catalan(24)
        assert c.x_coefficients() == CATALAN
        assert c.x_coeff(12) == 208012

    def test_functional_equation(self):
        c = series.catalan(30)
        x = from_x_poly({1: 1}, 30)
        assert (one(30) + x * c * c).first_mismatch(c) is None
        assert (one(30) / c).first_mismatch(one(30) - x * c) is None

    def test_catalan_number(self):
        assert [series.catalan_number(n) for n in range(10)] == list(CATALAN[:10])


class TestGeneratingFunctions:
    @pytest.mark.parametrize(
        "tau,r,expected",
        [
            ("312", 0, CATALAN),
            ("321", 0, CATALAN),
            ("312", 1, SEQ_312_1),
            ("312", 2, SEQ_312_2),
            ("321", 1, SEQ_321_1),
            ("321", 2, SEQ_321_2),
        ],
    )
    def test_reference_sequences(self, tau, r, expected):
        g = series.gf(tau, r, 2 * len(expected))
        assert g.x_coefficients()[: len(expected)] == expected

    def test_spot_values(self):
        g = series.gf("321", 2, 16)
        assert (g.x_coeff(4), g.x_coeff(5), g.x_coeff(6)) == (3, 24, 133)

    def test_unsupported(self):
        with pytest.raises(ValueError):
            series.gf("312", 3, 10)

    @pytest.mark.parametrize("tau,r", [("312", 0), ("312", 1), ("312", 2), ("321", 1), ("321", 2)])
    def test_gf_matches_closed_form_counts(self, tau, r):
        g = series.gf(tau, r, 80)
        for n in range(41):
            assert g.x_coeff(n) == series.count_closed_form(tau, r, n), (tau, r, n)

    def test_conjectural_flags(self):
        assert ("321", 3) in series.CONJECTURAL
        assert ("321", 4) in series.CONJECTURAL
        assert ("312", 1) not in series.CONJECTURAL


class TestClosedFormCounts:
    @pytest.mark.parametrize(
        "tau,r,expected",
        [
            ("312", 0, CATALAN),
            ("312", 1, SEQ_312_1),
            ("312", 2, SEQ_312_2),
            ("321", 1, SEQ_321_1),
            ("321", 2, SEQ_321_2),
        ],
    )
    def test_sequences(self, tau, r, expected):
        assert [series.count_closed_form(tau, r, n) for n in range(13)] == list(expected)

    def test_conventions(self):
        for tau in ("312", "321"):
            for r in (1, 2):
                assert series.count_closed_form(tau, r, 0) == 0
                assert series.count_closed_form(tau, r, 1) == 0
            assert series.count_closed_form(tau, 0, 0) == 1
            assert series.count_closed_form(tau, 0, 1) == 1

    def test_spot_formula_values(self):
        assert series.count_closed_form("321", 2, 4) == 3
        assert series.count_closed_form("312", 2, 4) == 4


def climb_oracle(l: int, m: int) -> int:
    """Paths from height 0 to height l, never below 0, with m down-steps."""
    f = {0: 1}
    for _ in range(2 * m + l):
        g: dict[int, int] = {}
        for h, c in f.items():
            g[h + 1] = g.get(h + 1, 0) + c
            if h > 0:
                g[h - 1] = g.get(h - 1, 0) + c
        f = g
    return f.get(l, 0)


def between_oracle(k: int, l: int, m: int) -> int:
    """Paths from height k to height l, never below 0, with m down-steps."""
    f = {k: 1}
    for _ in range(2 * m + l - k):
        g: dict[int, int] = {}
        for h, c in f.items():
            g[h + 1] = g.get(h + 1, 0) + c
            if h > 0:
                g[h - 1] = g.get(h - 1, 0) + c
        f = g
    return f.get(l, 0)


class TestClimbSegments:
    def test_climb_is_c_power(self):
        w = 30
        c5x2 = (series.catalan(w) ** 5).shift(4)
        assert series.climb_segment(4, w).first_mismatch(c5x2) is None

    def test_single_term_sum(self):
        for l in range(4):
            assert (
                series.between_heights(0, l, 20)
                .first_mismatch(series.climb_segment(l, 20))
                is None
            )

    @pytest.mark.parametrize("l", [0, 1, 2, 3])
    def test_climb_coefficients_against_dp(self, l):
        cs = series.climb_segment(l, 30)
        for m in range(8):
            assert cs.coeff(2 * m + l) == climb_oracle(l, m)

    @pytest.mark.parametrize("k,l", [(0, 0), (1, 1), (1, 3), (2, 4)])
    def test_between_heights_against_dp(self, k, l):
        cs = series.between_heights(k, l, 30)
        for m in range(7):
            assert cs.coeff(2 * m + l - k) == between_oracle(k, l, m)


class TestAssemblies:
    def test_order_40_all_pass(self):
        report = series.check_assemblies(40)
        failures = [str(c) for c in report.checks if not c.passed]
        assert report.passed, failures
        names = {c.name for c in report.checks}
        assert "312.r1.sum-equals-closed-form" in names
        assert "321.r2.together-equals-gf" in names
        assert "312.r2.two-jumps.sum-equals-closed-form" in names


class TestGeneralForm:
    def test_312_odd_sqrt_denominators(self):
        for r in (1, 2):
            rep = series.check_general_form("312", r, 80)
            assert rep.passed and not rep.conjectural
            assert rep.denominator == f"sqrt(1-4x)^{2 * r - 1}"

    def test_312_r1_polynomials(self):
        rep = series.check_general_form("312", 1, 80)
        assert rep.p_coeffs == (Fraction(1, 2), Fraction(-3, 2))
        assert rep.q_coeffs == (Fraction(-1, 2), Fraction(1, 2))

    @pytest.mark.parametrize(
        "r,p,q",
        [
            (0, (1,), (-1,)),
            (1, (1, -6, 9, -2), (-1, 4, -3)),
            (2, (1, -8, 20, -17, 7, -5), (-1, 6, -10, 5, -3, 1)),
            (3, (1, -10, 33, -32, -31, 70, -35, 0, 2), (-1, 8, -19, 6, 27, -28, 7, 2)),
            (
                4,
                (1, -12, 50, -65, -107, 437, -588, 492, -314, 108, -3),
                (-1, 10, -32, 17, 107, -245, 256, -192, 102, -18, -1),
            ),
        ],
    )
    def test_321_polynomial_recovery(self, r, p, q):
        rep = series.check_general_form("321", r, 80)
        assert rep.passed
        assert rep.conjectural == (r >= 3)
        assert tuple(int(c) for c in rep.p_coeffs) == p
        assert tuple(int(c) for c in rep.q_coeffs) == q


class TestDump:
    def test_strings(self):
        got = series.coefficients_as_strings(series.gf("312", 1, 16))
        assert got[:5] == ["0", "0", "0", "1", "5"]
