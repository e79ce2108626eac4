"""Brute-force hemispherical quadrature, independent of the series code.

The polar integral is taken in ``t = sqrt(cos theta_s)``: with ``u = t**2`` the
solid-angle element ``sin(ts) dts = du = 2 t dt`` and a ``sqrt(cos ts)``
factor becomes ``t``, so every pattern of interest is a smooth polynomial-like
function of ``t`` and Gauss-Legendre converges exponentially.  Azimuth uses
the periodic trapezoid rule.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np


class QuadratureError(RuntimeError):
    pass


@dataclass(frozen=True)
class QuadratureSpec:
    nodes_u: int = 64
    nodes_phi: int = 128
    refine_until: float = 1e-9
    max_refinements: int = 6

    def __post_init__(self):
        if self.nodes_u < 4 or self.nodes_phi < 4:
            raise ValueError("need at least 4 nodes per axis")
        if not self.refine_until > 0:
            raise ValueError("refine_until must be positive")


@lru_cache(maxsize=32)
def _gauss_t(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    t = 0.5 * (x + 1.0)
    return t, 0.5 * w


def sqrt_cos_grid(n: int = 64):
    """Nodes ``mu`` in [0, 1] and weights for integrals over ``d mu``.

    Placed in ``t = sqrt(mu)`` so that integrands carrying ``sqrt(mu)`` are
    resolved to machine precision.
    """
    t, w = _gauss_t(n)
    return t**2, 2.0 * t * w


def _estimate(integrand, phi_i: float, nu: int, nphi: int) -> tuple[float, float]:
    mu, wmu = sqrt_cos_grid(nu)
    theta_s = np.arccos(mu)
    phi_s = phi_i + 2.0 * math.pi * np.arange(nphi) / nphi
    th, ph = np.meshgrid(theta_s, phi_s, indexing="ij")
    vals = np.asarray(integrand(th, ph), dtype=float)
    if not np.all(np.isfinite(vals)):
        raise QuadratureError("integrand is not finite on the hemisphere")
    w = wmu[:, None] * (2.0 * math.pi / nphi)
    return float(np.sum(w * vals)), float(np.sum(w * np.abs(vals)))


def integrate_hemisphere(integrand, theta_i: float = 0.0, phi_i: float = 0.0,
                         spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Integrate ``integrand(theta_s, phi_s) * sin(theta_s)`` over the upper hemisphere.

    ``integrand`` must accept broadcast numpy arrays.  ``theta_i`` and
    ``phi_i`` only anchor the azimuth grid on the plane of incidence; the
    integrand closes over whatever incidence it models.  Node counts double
    until two successive estimates agree to ``spec.refine_until``.
    """
    del theta_i  # part of the call signature; the grid does not depend on it
    nu, nphi = spec.nodes_u, spec.nodes_phi
    prev, _ = _estimate(integrand, phi_i, nu, nphi)
    for _ in range(spec.max_refinements):
        nu, nphi = 2 * nu, 2 * nphi
        cur, scale = _estimate(integrand, phi_i, nu, nphi)
        # relative to the integral of |integrand| so vanishing integrals converge
        if abs(cur - prev) <= spec.refine_until * max(scale, 1e-300):
            return cur
        prev = cur
    raise QuadratureError(
        f"no convergence to {spec.refine_until} after {spec.max_refinements} refinements")


def ls_fit_sqrt_cos(samples, weights=None) -> float:
    """Least-squares amplitude K of ``F(mu) ~ K sqrt(mu)``.

    ``samples`` is a sequence of ``(mu, F)``.  Without explicit quadrature
    weights the trapezoid rule over the sorted ``mu`` is used.
    """
    arr = np.asarray(samples, dtype=float)
    if arr.ndim != 2 or arr.shape[0] < 2 or arr.shape[1] != 2:
        raise ValueError("need at least two (mu, F) samples")
    mu, F = arr[:, 0], arr[:, 1]
    if np.unique(mu).size != mu.size:
        raise ValueError("mu values must be distinct")
    if np.any((mu < 0) | (mu > 1)):
        raise ValueError("mu must lie in [0, 1]")
    if weights is None:
        order = np.argsort(mu)
        mu, F = mu[order], F[order]
        w = np.zeros_like(mu)
        d = np.diff(mu)
        w[:-1] += 0.5 * d
        w[1:] += 0.5 * d
    else:
        w = np.asarray(weights, dtype=float)
    denom = np.sum(mu * w)
    if denom <= 0:
        raise ValueError("degenerate mu grid")
    return float(np.sum(F * np.sqrt(mu) * w) / denom)


# Convenience wrappers used by tests, references and the CLI.

def pattern_integral(model, alpha_r: float, theta_i: float, phi_i: float = 0.0,
                     lobe_only: bool = False, spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Quadrature of a pattern written out here, independently of ``patterns``."""
    model = str(getattr(model, "value", model))
    st, ct = math.sin(theta_i), math.cos(theta_i)

    def integrand(ts, ps):
        cpsi = np.clip(st * np.sin(ts) * np.cos(ps - phi_i) + ct * np.cos(ts), -1.0, 1.0)
        if model == "grer":
            lobe = np.exp(-alpha_r * (1.0 - cpsi))
        else:
            lobe = (0.5 * (1.0 + cpsi)) ** alpha_r
        if lobe_only:
            return lobe
        return np.sqrt(np.clip(np.cos(ts), 0.0, None)) * lobe

    return integrate_hemisphere(integrand, theta_i, phi_i, spec)


def projected_K(model, alpha_r: float, n_mu: int = 48, lobe_only: bool = False,
                spec: QuadratureSpec = QuadratureSpec()) -> float:
    """K from the least-squares fit of quadrature-integrated F(mu) against sqrt(mu)."""
    mu, w = sqrt_cos_grid(n_mu)
    F = [pattern_integral(model, alpha_r, math.acos(m), lobe_only=lobe_only, spec=spec)
         for m in mu]
    return ls_fit_sqrt_cos(np.column_stack([mu, F]), weights=w)
