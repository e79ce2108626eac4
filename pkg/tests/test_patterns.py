import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from grer import oracle
from grer import patterns as p
from grer.geometry import geometry_from_angles
from grer.patterns import Model, ModelParams, NormMode

D = math.radians


class TestPatterns:
    def test_grer_specular(self):
        geo = geometry_from_angles(D(45), 0, D(45), 0)
        assert p.f_grer(geo, 7.0) == pytest.approx(0.840896, abs=1e-6)

    def test_grer_zero_exponent(self):
        geo = geometry_from_angles(D(20), 0.3, D(50), 2.0)
        assert p.f_grer(geo, 1e-14) == pytest.approx(math.sqrt(math.cos(D(50))), rel=1e-12)

    def test_grer_direct(self):
        geo = geometry_from_angles(0.0, 0.0, D(60), 1.0)
        assert p.f_grer(geo, 2.0) == pytest.approx(math.sqrt(0.5) * math.exp(-1), rel=1e-13)
        assert p.f_grer(geo, 2.0) == pytest.approx(0.260130, abs=1e-6)

    def test_rer_values(self):
        geo = geometry_from_angles(D(30), 0, D(30), 0)
        assert p.f_rer(geo, 5) == pytest.approx(0.930605, abs=1e-6)
        geo = geometry_from_angles(0.0, 0.0, D(60), 0.4)
        assert p.f_rer(geo, 4) == pytest.approx(math.sqrt(0.5) * 0.75**4, rel=1e-13)

    def test_rer_anti_specular_zero(self):
        assert p.pattern(Model.RER, 1.0, -1.0, 3) == 0.0

    @given(st.floats(-1, 1), st.floats(0, 1), st.floats(0.01, 100))
    def test_bounded(self, cpsi, cts, a):
        for m in Model:
            v = p.pattern(m, cts, cpsi, a)
            assert 0.0 <= v <= 1.0


class TestGrerSeries:
    @pytest.mark.parametrize("ti", [0.0, 0.4, 1.2, 1.55])
    def test_zero_exponent(self, ti):
        r = p.F_grer_series(0.0, ti)
        assert r.value == pytest.approx(4 * math.pi / 3, abs=1e-12)

    def test_against_quadrature(self):
        r = p.F_grer_series(5.0, D(30), rel_tol=1e-9)
        q = oracle.pattern_integral("grer", 5.0, D(30))
        assert r.value == pytest.approx(q, rel=1e-6)

    def test_sqrt_cos_trend(self):
        # F(theta_i)/F(0) sits a few percent under sqrt(cos theta_i) and closes in as alpha grows
        def gap(a, t):
            ratio = p.F_grer_series(a, D(t), 1e-10).value / p.F_grer_series(a, 0.0, 1e-10).value
            return abs(ratio / math.sqrt(math.cos(D(t))) - 1)
        for t in (20, 40, 60):
            assert gap(10.0, t) < 0.06
            assert gap(50.0, t) < gap(10.0, t)

    def test_truncation_rule(self):
        r = p.K_grer_series(10.0, rel_tol=1e-3)
        assert r.converged and r.terms_used <= 5

    def test_tighter_tolerance_needs_more_terms(self):
        assert p.K_grer_series(10.0, 1e-10).terms_used > p.K_grer_series(10.0, 1e-3).terms_used

    def test_budget_exhaustion(self):
        with pytest.raises(p.SeriesConvergenceError):
            p.K_grer_series(500.0, rel_tol=1e-12, max_terms=5)

    def test_domain(self):
        with pytest.raises(ValueError):
            p.F_grer_series(-1.0, 0.0)
        with pytest.raises(ValueError):
            p.F_grer_series(1.0, D(90))


class TestK:
    def test_zero_limit(self):
        assert p.K_grer_series(0.0).value == pytest.approx(16 * math.pi / 9, abs=1e-12)
        assert p.K_grer_pade(0.0) == pytest.approx(16 * math.pi / 9, abs=1e-15)

    def test_pade_at_one(self):
        want = math.pi * (16 / 9 + 0.536 + 0.399) / (1 + 0.965 + 0.457 + 0.200)
        assert p.K_grer_pade(1.0) == want
        assert want == pytest.approx(3.250360, abs=1e-6)

    def test_large_alpha_solid_angle(self):
        k = p.K_grer_series(200.0, 1e-10).value
        assert 0.98 <= 200 * k / (2 * math.pi) <= 1.0
        assert 200 * p.K_grer_pade(200.0) / math.pi == pytest.approx(1.995, rel=0.02)

    def test_series_equals_projection(self):
        k = p.K_grer_series(1.0, 1e-12).value
        assert k == pytest.approx(oracle.projected_K("grer", 1.0), rel=1e-4)

    def test_pade_near_series(self):
        # spot check away from the worst-case region
        for a in (0.05, 1.0, 30.0, 100.0):
            assert p.K_grer_pade(a) == pytest.approx(p.K_grer_series(a, 1e-12).value, rel=3e-3)


class TestRerSums:
    def test_exact_zero(self):
        for t in (0.0, 0.5, 1.3):
            assert p.F_rer_exact(0, t).value == pytest.approx(2 * math.pi)

    def test_exact_one(self):
        assert p.F_rer_exact(1, 0.0).value == pytest.approx(1.5 * math.pi, rel=1e-15)

    def test_exact_against_lobe_quadrature(self):
        r = p.F_rer_exact(10, D(45))
        q = oracle.pattern_integral("rer", 10, D(45), lobe_only=True)
        assert r.value == pytest.approx(q, rel=1e-8)

    def test_k_rer_values(self):
        assert p.K_rer(0).value == pytest.approx(4 * math.pi / 3, rel=1e-15)
        assert p.K_rer(1).value == pytest.approx(16 * math.pi / 15, rel=1e-15)
        assert p.K_rer(10).terms_used == 11

    @pytest.mark.parametrize("a", [0, 1, 3, 7])
    def test_k_rer_is_full_pattern_at_normal_incidence(self, a):
        q = oracle.pattern_integral("rer", a, 0.0)
        assert p.K_rer(a).value == pytest.approx(q, rel=1e-9)

    def test_large_exponent_log_domain(self):
        r = p.F_rer_exact(200, D(30))
        q = oracle.pattern_integral("rer", 200, D(30), lobe_only=True)
        assert r.value == pytest.approx(q, rel=1e-6)

    def test_integer_only(self):
        with pytest.raises(ValueError):
            p.F_rer_exact(2.5, 0.0)
        with pytest.raises(ValueError):
            p.K_rer(-1)


class TestNormalization:
    def test_pade_at_normal(self):
        got = p.normalization(ModelParams(Model.GRER, 3.0), 0.0, NormMode.PADE)
        assert got == p.K_grer_pade(3.0)

    def test_ksqrtcos_close_to_exact_for_tight_lobe(self):
        par = ModelParams(Model.GRER, 50.0)
        a = p.normalization(par, D(60), NormMode.K_SQRT_COS)
        b = p.normalization(par, D(60), NormMode.EXACT, rel_tol=1e-10)
        assert abs(a / b - 1) < 0.02

    def test_pade_unsupported_for_rer(self):
        with pytest.raises(p.UnsupportedNormalization):
            p.normalization(ModelParams(Model.RER, 5), D(30), NormMode.PADE)

    def test_params_validation(self):
        with pytest.raises(ValueError):
            ModelParams(Model.GRER, -1.0)


@pytest.fixture(scope="module")
def table():
    return {a: p.equivalent_alpha_grer(a) for a in (1, 2, 3, 5, 10, 20, 30)}


class TestEquivalentAlpha:
    def test_increasing(self, table):
        vals = [table[a] for a in sorted(table)]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_smaller_than_rer(self, table):
        for a, v in table.items():
            if a >= 2:
                assert v < a

    def test_objective_minimum(self, table):
        a = table[5]
        f = p.equivalent_alpha_objective
        assert f(a, 5) <= f(a * 1.01, 5) and f(a, 5) <= f(a * 0.99, 5)

    def test_rejects_small(self):
        with pytest.raises(ValueError):
            p.equivalent_alpha_grer(0.5)
