import math

import numpy as np
import pytest

from grer import oracle
from grer.patterns import F_grer_series, K_grer_series


def test_constant_integrand():
    assert oracle.integrate_hemisphere(lambda t, p: np.ones_like(t)) == pytest.approx(2 * math.pi, rel=1e-13)


def test_sqrt_cos_integrand():
    v = oracle.integrate_hemisphere(lambda t, p: np.sqrt(np.cos(t)))
    assert v == pytest.approx(4 * math.pi / 3, rel=1e-13)


def test_cos_phi_moment_vanishes():
    v = oracle.integrate_hemisphere(lambda t, p: np.cos(p) * np.sin(t) ** 2, theta_i=0.3, phi_i=1.1)
    assert abs(v) < 1e-13


def test_grer_integral_against_series():
    q = oracle.pattern_integral("grer", 5.0, math.radians(30))
    assert q == pytest.approx(F_grer_series(5.0, math.radians(30), 1e-9).value, rel=1e-6)


def test_sqrt_cos_grid_weights():
    mu, w = oracle.sqrt_cos_grid(32)
    assert np.all((mu > 0) & (mu < 1))
    assert np.sum(w) == pytest.approx(1.0, rel=1e-14)
    assert np.sum(w * np.sqrt(mu)) == pytest.approx(2 / 3, rel=1e-14)


def test_ls_fit_constant():
    mu, w = oracle.sqrt_cos_grid(48)
    F = np.full_like(mu, 4 * math.pi / 3)
    assert oracle.ls_fit_sqrt_cos(np.column_stack([mu, F]), w) == pytest.approx(16 * math.pi / 9, rel=1e-12)


def test_ls_fit_identity():
    mu = np.linspace(0, 1, 101)
    assert oracle.ls_fit_sqrt_cos(np.column_stack([mu, np.sqrt(mu)])) == pytest.approx(1.0, rel=1e-12)


def test_projection_matches_series():
    assert oracle.projected_K("grer", 1.0) == pytest.approx(K_grer_series(1.0, 1e-12).value, rel=1e-4)


def test_refinement_failure():
    spec = oracle.QuadratureSpec(nodes_u=4, nodes_phi=4, refine_until=1e-15, max_refinements=1)
    with pytest.raises(oracle.QuadratureError):
        oracle.pattern_integral("grer", 200.0, 1.2, spec=spec)


def test_spec_validation():
    with pytest.raises(ValueError):
        oracle.QuadratureSpec(nodes_u=0)
