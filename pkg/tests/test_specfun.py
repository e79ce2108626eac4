import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate, special

from grer import specfun as sf


class TestLegendre:
    @pytest.mark.parametrize("deg,x,want", [(0, 0.3, 1.0), (1, 0.5, 0.5), (2, 0.5, -0.125)])
    def test_low_degrees(self, deg, x, want):
        assert sf.legendre_p(deg, x) == pytest.approx(want, abs=1e-15)

    @given(st.integers(0, 400), st.floats(-1.0, 1.0))
    def test_matches_scipy(self, deg, x):
        # rounding in the recurrence grows roughly linearly with degree
        want = special.eval_legendre(deg, x)
        assert sf.legendre_p(deg, x) == pytest.approx(want, abs=1e-13 * (deg + 1))

    def test_all_degrees_vectorized(self):
        x = np.linspace(-1, 1, 17)
        P = sf.legendre_p_all(30, x)
        assert P.shape == (31, 17)
        for l in (0, 7, 30):
            np.testing.assert_allclose(P[l], special.eval_legendre(l, x), atol=1e-13)

    def test_endpoints(self):
        assert sf.legendre_p(123, 1.0) == pytest.approx(1.0)
        assert sf.legendre_p(123, -1.0) == pytest.approx(-1.0)

    def test_domain(self):
        with pytest.raises(ValueError):
            sf.legendre_p(3, 1.01)
        with pytest.raises(ValueError):
            sf.legendre_p(-1, 0.5)
        with pytest.raises(OverflowError):
            sf.legendre_p(10_001, 0.5)


class TestScaledBessel:
    def test_limits(self):
        assert sf.scaled_mod_sph_bessel_i(0, 0.0) == 1.0
        assert sf.scaled_mod_sph_bessel_i(0, 1e-12) == pytest.approx(1.0)
        assert sf.scaled_mod_sph_bessel_i(3, 0.0) == 0.0

    def test_unit_argument(self):
        assert sf.scaled_mod_sph_bessel_i(0, 1.0) == pytest.approx((1 - math.exp(-2)) / 2, rel=1e-15)
        assert sf.scaled_mod_sph_bessel_i(0, 1.0) == pytest.approx(0.4323324, abs=1e-7)

    @pytest.mark.parametrize("x", [0.01, 0.5, 3.0, 10.0, 50.0, 200.0])
    def test_matches_scipy(self, x):
        got = sf.scaled_mod_sph_bessel_i_all(40, x)
        want = special.spherical_in(np.arange(41), x) * math.exp(-x)
        np.testing.assert_allclose(got, want, rtol=1e-12, atol=1e-300)

    @pytest.mark.parametrize("x", [500.0, 2000.0, 1e4])
    def test_large_argument_against_mpmath(self, x):
        # scipy overflows here; mpmath works in arbitrary precision
        got = sf.scaled_mod_sph_bessel_i_all(60, x)
        mpmath.mp.dps = 40
        for l in (0, 1, 10, 60):
            want = mpmath.sqrt(mpmath.pi / (2 * x)) * mpmath.besseli(l + 0.5, x) * mpmath.exp(-x)
            assert got[l] == pytest.approx(float(want), rel=1e-12)

    @given(st.floats(1e-6, 300.0))
    def test_positive_and_decreasing_in_degree(self, x):
        v = sf.scaled_mod_sph_bessel_i_all(30, x)
        assert np.all(v > 0) or x < 1e-3
        assert np.all(np.diff(v) <= 0)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            sf.scaled_mod_sph_bessel_i(1, -1.0)


class TestBCoefficients:
    @pytest.mark.parametrize("l,want", [(0, 2 / 3), (1, 2 / 5), (2, 2 / 21), (3, -2 / 45)])
    def test_first_values(self, l, want):
        assert sf.b_coefficient(l) == pytest.approx(want, rel=1e-15)

    @pytest.mark.parametrize("l", [0, 1, 2, 5, 12, 25])
    def test_against_quad(self, l):
        # u = t^2 turns the integrand into a polynomial, which fixed_quad integrates exactly
        want, _ = integrate.fixed_quad(lambda t: 2 * t * t * special.eval_legendre(l, t * t),
                                       0, 1, n=l + 4)
        assert sf.b_coefficient(l) == pytest.approx(want, abs=1e-12)

    def test_closed_form_recurrence_abs(self):
        b = sf.b_coefficients(500)
        np.testing.assert_allclose(sf.b_coefficients_recurrence(500), b, rtol=0, atol=1e-14)
        np.testing.assert_allclose(np.abs(b), sf.b_abs(np.arange(501)), rtol=0, atol=1e-14)

    def test_parseval(self):
        l = np.arange(5001)
        assert abs(np.sum((2 * l + 1) * sf.b_coefficients(5000) ** 2) - 1) < 1e-6


class TestCombinatorics:
    def test_values(self):
        assert sf.binomial(4, 2) == 6
        assert sf.double_factorial(-1) == 1
        assert sf.double_factorial(0) == 1
        assert sf.double_factorial(5) == 15
        assert sf.factorial(10) == 3628800

    def test_logs(self):
        assert sf.log_factorial(100) == pytest.approx(math.lgamma(101))
        assert sf.log_double_factorial(9) == pytest.approx(math.log(945))
        assert sf.log_binomial(60, 20) == pytest.approx(math.log(math.comb(60, 20)))

    def test_overflow_guard(self):
        with pytest.raises(OverflowError):
            sf.factorial(171)
        with pytest.raises(OverflowError):
            sf.double_factorial(400)
        with pytest.raises(ValueError):
            sf.factorial(-1)


def test_series_result_is_frozen():
    r = sf.SeriesResult(1.0, 3, True)
    with pytest.raises(Exception):
        r.value = 2.0
