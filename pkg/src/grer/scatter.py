"""Scattered power of a surface element, Fresnel reflectivity and depolarization."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .geometry import ScatterGeometry
from .patterns import Model, ModelParams, NormMode, normalization, pattern

EPS0 = 8.8541878128e-12


class Polarization(str, enum.Enum):
    TE = "TE"  # electric field perpendicular to the plane of incidence (H)
    TM = "TM"  # electric field in the plane of incidence (V)


@dataclass(frozen=True)
class LinkBudget:
    r_i: float
    r_s: float
    dS: float
    K_tx: float = 1.0

    def __post_init__(self):
        for name in ("r_i", "r_s", "dS", "K_tx"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be > 0")


@dataclass(frozen=True)
class Material:
    eps_r: float
    sigma: float
    S: float
    alpha_r: float
    kappa: float = 0.0

    def __post_init__(self):
        if not self.eps_r >= 1.0:
            raise ValueError("eps_r must be >= 1")
        if not self.sigma >= 0.0:
            raise ValueError("sigma must be >= 0")
        if not 0.0 <= self.S <= 1.0:
            raise ValueError("S must lie in [0, 1]")
        if not self.alpha_r > 0.0:
            raise ValueError("alpha_r must be > 0")
        if not 0.0 <= self.kappa < 1.0:
            raise ValueError("kappa must lie in [0, 1)")


def complex_permittivity(eps_r: float, sigma, freq: float):
    if not freq > 0:
        raise ValueError("frequency must be positive")
    return eps_r - 1j * np.asarray(sigma) / (2.0 * math.pi * freq * EPS0)


def fresnel_coefficient(eps, cos_theta_i, pol: Polarization):
    """Complex reflection coefficient from free space onto a half-space ``eps``."""
    c = np.asarray(cos_theta_i, dtype=float)
    root = np.sqrt(eps - (1.0 - c**2) + 0j)
    if Polarization(pol) is Polarization.TE:
        return (c - root) / (c + root)
    return (eps * c - root) / (eps * c + root)


def fresnel_reflectivity(material: Material, freq: float, theta_i, pol) -> np.ndarray | float:
    """|Gamma|^2 for the chosen polarization; broadcasts over ``theta_i``."""
    eps = complex_permittivity(material.eps_r, material.sigma, freq)
    g = fresnel_coefficient(eps, np.cos(theta_i), pol)
    out = np.abs(g) ** 2
    return float(out) if np.ndim(out) == 0 else out


def diffuse_power(link: LinkBudget, geom: ScatterGeometry, material: Material,
                  model: ModelParams, norm_mode=NormMode.PADE, freq: float = 28.5e9,
                  pol=Polarization.TE, gamma2: float | None = None) -> float:
    """Diffuse intensity |E_s|^2 re-radiated by one surface element.

    ``gamma2`` overrides the Fresnel reflectivity (useful when the caller
    already has it, or to study the geometry alone).
    """
    if gamma2 is None:
        gamma2 = fresnel_reflectivity(material, freq, geom.theta_i, pol)
    f = pattern(model.model, geom.cos_theta_s, geom.cos_psi, model.alpha_r)
    F = normalization(model, geom.theta_i, norm_mode)
    amp = link.K_tx * material.S / (link.r_i * link.r_s)
    return float(amp**2 * gamma2 * math.cos(geom.theta_i) * f / F * link.dS)


def reciprocity_terms(geom: ScatterGeometry, model: ModelParams, norm_mode,
                      rel_tol: float = 1e-9) -> tuple[float, float]:
    """Both sides of the reciprocity condition f/F * cos(theta).

    Forward: incidence ``geom``; reverse: transmitter and receiver swapped.
    """
    back = geom.swapped()
    fwd = (pattern(model.model, geom.cos_theta_s, geom.cos_psi, model.alpha_r)
           / normalization(model, geom.theta_i, norm_mode, rel_tol) * math.cos(geom.theta_i))
    rev = (pattern(model.model, back.cos_theta_s, back.cos_psi, model.alpha_r)
           / normalization(model, back.theta_i, norm_mode, rel_tol) * math.cos(back.theta_i))
    return float(fwd), float(rev)


def reciprocity_residual(geom: ScatterGeometry, model: ModelParams, norm_mode,
                         rel_tol: float = 1e-9) -> float:
    """Relative mismatch between the two sides of the reciprocity condition."""
    if not geom.theta_s < math.pi / 2:
        raise ValueError("reciprocity needs theta_s < pi/2")
    fwd, rev = reciprocity_terms(geom, model, norm_mode, rel_tol)
    scale = max(abs(fwd), abs(rev))
    if scale == 0.0:
        return 0.0
    return abs(fwd - rev) / scale


def depolarize(total_power: float, kappa: float) -> tuple[float, float]:
    """Split diffuse power into (co-polar, cross-polar) parts."""
    if total_power < 0:
        raise ValueError("power must be >= 0")
    if not 0.0 <= kappa < 1.0:
        raise ValueError("kappa must lie in [0, 1)")
    cross = kappa * total_power
    return total_power - cross, cross


def to_db(power, reference: float = 1.0):
    with np.errstate(divide="ignore"):
        return 10.0 * np.log10(np.asarray(power, dtype=float) / reference)


def xpd_db(kappa: float) -> float:
    """Co- to cross-polar ratio implied by ``kappa``, 10 log10((1 - k) / k)."""
    return float(10.0 * math.log10((1.0 - kappa) / kappa))
