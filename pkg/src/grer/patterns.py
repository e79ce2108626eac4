"""RER and G-RER scattering lobes and their normalization factors.

Two patterns share the reciprocity factor ``sqrt(cos theta_s)``::

    RER    f = sqrt(cos ts) * ((1 + cos psi) / 2) ** alpha
    G-RER  f = sqrt(cos ts) * exp(-alpha * (1 - cos psi))

The hemispherical integral of the G-RER lobe has a Legendre/Bessel series.
In that series the exponential scale is ``exp(-alpha) * i_l(alpha)``, fused
into a single scaled Bessel value; this is the form that agrees with direct
quadrature of the pattern.

The RER routes are the classic integer-exponent sums.  ``F_rer_exact`` integrates
the *lobe only* (no ``sqrt(cos ts)``), and ``K_rer`` equals the full-pattern
normalization at normal incidence, ``K_rer(a) = F_full(a, theta_i=0)``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from . import specfun
from .geometry import ScatterGeometry, cos_psi_from_angles
from .specfun import SeriesResult

DEFAULT_REL_TOL = 1e-3
DEFAULT_MAX_TERMS = 100_000
THETA_I_CAP = math.radians(89.999)

PADE_NUM = (16.0 / 9.0, 0.536, 0.399)
PADE_DEN = (1.0, 0.965, 0.457, 0.200)


class Model(str, enum.Enum):
    RER = "rer"
    GRER = "grer"


class NormMode(str, enum.Enum):
    EXACT = "exact"
    K_SQRT_COS = "ksqrtcos"
    PADE = "pade"


class SeriesConvergenceError(RuntimeError):
    pass


class UnsupportedNormalization(ValueError):
    pass


@dataclass(frozen=True)
class ModelParams:
    model: Model
    alpha_r: float

    def __post_init__(self):
        object.__setattr__(self, "model", Model(self.model))
        if not self.alpha_r >= 0 or not math.isfinite(self.alpha_r):
            raise ValueError(f"alpha_r must be finite and >= 0, got {self.alpha_r}")


def _integer_alpha(alpha) -> int:
    if isinstance(alpha, (bool, np.bool_)):
        raise TypeError("alpha_r must be an integer")
    a = float(alpha)
    if a < 0 or a != math.floor(a):
        raise ValueError(f"RER exact sums need a non-negative integer alpha_r, got {alpha}")
    return int(a)


def _check_theta_i(theta_i: float) -> float:
    if not 0.0 <= theta_i < math.pi / 2:
        raise ValueError(f"theta_i={theta_i} outside [0, pi/2)")
    return min(theta_i, THETA_I_CAP)


# ---------------------------------------------------------------------------
# Patterns

def lobe_grer(cos_psi, alpha_r):
    return np.exp(-alpha_r * (1.0 - np.asarray(cos_psi, dtype=float)))


def lobe_rer(cos_psi, alpha_r):
    return (0.5 * (1.0 + np.asarray(cos_psi, dtype=float))) ** alpha_r


def pattern(model: Model, cos_theta_s, cos_psi, alpha_r):
    """Vectorized pattern value from the two cosines it depends on."""
    lobe = lobe_grer if Model(model) is Model.GRER else lobe_rer
    return np.sqrt(np.clip(cos_theta_s, 0.0, None)) * lobe(cos_psi, alpha_r)


def f_grer(geom: ScatterGeometry, alpha_r: float) -> float:
    return float(pattern(Model.GRER, geom.cos_theta_s, geom.cos_psi, alpha_r))


def f_rer(geom: ScatterGeometry, alpha_r: float) -> float:
    return float(pattern(Model.RER, geom.cos_theta_s, geom.cos_psi, alpha_r))


# ---------------------------------------------------------------------------
# G-RER series

def _initial_degree(alpha_r: float) -> int:
    return 16 + int(8.0 * math.sqrt(alpha_r))


def _truncate(terms: np.ndarray, rel_tol: float):
    """Index N such that terms N and N+1 are both below rel_tol * |partial sum|.

    Returns None if the criterion is not met inside ``terms``.
    """
    partial = np.cumsum(terms)
    small = np.abs(terms[1:]) < rel_tol * np.abs(partial[:-1])
    both = small[:-1] & small[1:]
    hits = np.flatnonzero(both)
    if hits.size == 0:
        return None
    return int(hits[0]) + 1


def _grer_series(alpha_r: float, rel_tol: float, max_terms: int, weights) -> SeriesResult:
    if not alpha_r >= 0 or not math.isfinite(alpha_r):
        raise ValueError(f"alpha_r must be finite and >= 0, got {alpha_r}")
    if not rel_tol > 0:
        raise ValueError("rel_tol must be positive")
    lmax = min(_initial_degree(alpha_r), max_terms + 1)
    while True:
        ell = np.arange(lmax + 1)
        terms = (2 * ell + 1) * specfun.scaled_mod_sph_bessel_i_all(lmax, alpha_r) * weights(lmax)
        n = _truncate(terms, rel_tol)
        if n is not None and n <= max_terms:
            return SeriesResult(float(np.sum(terms[:n])), n, True)
        if lmax > max_terms:
            raise SeriesConvergenceError(
                f"series did not converge within {max_terms} terms (alpha_r={alpha_r})")
        lmax = min(2 * lmax, max_terms + 1)


def F_grer_series(alpha_r: float, theta_i: float, rel_tol: float = DEFAULT_REL_TOL,
                  max_terms: int = DEFAULT_MAX_TERMS) -> SeriesResult:
    """Hemispherical integral of the G-RER pattern for incidence ``theta_i``.

    ``2 pi sum (2l+1) exp(-a) i_l(a) P_l(cos ti) b_l``, truncated once two
    consecutive terms drop below ``rel_tol`` times the running sum.
    """
    mu = math.cos(_check_theta_i(theta_i))

    def weights(lmax):
        return specfun.legendre_p_all_unchecked(lmax, mu) * specfun.b_coefficients(lmax)

    res = _grer_series(alpha_r, rel_tol, max_terms, weights)
    return SeriesResult(2.0 * math.pi * res.value, res.terms_used, res.converged)


def K_grer_series(alpha_r: float, rel_tol: float = DEFAULT_REL_TOL,
                  max_terms: int = DEFAULT_MAX_TERMS) -> SeriesResult:
    """Least-squares constant K with F(a, ti) ~ K sqrt(cos ti).

    ``16 pi sum (2l+1) / ((2l-1)^2 (2l+3)^2) exp(-a) i_l(a)``.
    """
    def weights(lmax):
        ell = np.arange(lmax + 1)
        return 4.0 / ((2 * ell - 1) ** 2 * (2 * ell + 3) ** 2)

    res = _grer_series(alpha_r, rel_tol, max_terms, weights)
    return SeriesResult(4.0 * math.pi * res.value, res.terms_used, res.converged)


def K_grer_pade(alpha_r: float) -> float:
    """Rational (2, 3) approximation of ``K_grer_series``; no summation."""
    if alpha_r < 0:
        raise ValueError("alpha_r must be >= 0")
    a = alpha_r
    num = PADE_NUM[0] + a * (PADE_NUM[1] + a * PADE_NUM[2])
    den = PADE_DEN[0] + a * (PADE_DEN[1] + a * (PADE_DEN[2] + a * PADE_DEN[3]))
    return math.pi * num / den


# ---------------------------------------------------------------------------
# RER integer-exponent sums

_LOG_DOMAIN_ABOVE = 150


def F_rer_exact(alpha_r, theta_i: float) -> SeriesResult:
    """Closed double sum for the RER normalization (lobe-only integral).

    ``terms_used`` counts the evaluated (j, l) pairs.
    """
    a = _integer_alpha(alpha_r)
    ti = _check_theta_i(theta_i)
    c, s = math.cos(ti), math.sin(ti)
    pairs = 0
    total = 0.0
    if a <= _LOG_DOMAIN_ABOVE:
        fact = specfun.factorial
        dfact = specfun.double_factorial
        for j in range(a + 1):
            inner = 0.0
            for l in range(j // 2 + 1):
                inner += c ** (j - 2 * l) * s ** (2 * l) / (2.0 ** l * fact(l) * dfact(j - 2 * l))
                pairs += 1
            total += inner / (fact(a - j) * dfact(j + 1))
        value = 2.0 * math.pi * fact(a) / 2.0 ** a * total
    else:
        lf = specfun.log_factorial
        ldf = specfun.log_double_factorial
        log_c = math.log(c)
        log_s = math.log(s) if s > 0 else -math.inf
        log_pre = lf(a) - a * math.log(2.0)
        for j in range(a + 1):
            outer = log_pre - lf(a - j) - ldf(j + 1)
            for l in range(j // 2 + 1):
                pairs += 1
                if l > 0 and s == 0.0:
                    continue
                e = (j - 2 * l) * log_c + (2 * l * log_s if l else 0.0)
                total += math.exp(outer + e - l * math.log(2.0) - lf(l) - ldf(j - 2 * l))
        value = 2.0 * math.pi * total
    return SeriesResult(value, pairs, True)


def K_rer(alpha_r) -> SeriesResult:
    """``(4 pi / 2^a) sum_j C(a, j) / (2j + 3)``; ``terms_used = a + 1``."""
    a = _integer_alpha(alpha_r)
    if a <= _LOG_DOMAIN_ABOVE:
        total = sum(specfun.binomial(a, j) / (2 * j + 3) for j in range(a + 1))
        value = 4.0 * math.pi / 2.0 ** a * total
    else:
        shift = a * math.log(2.0)
        total = sum(math.exp(specfun.log_binomial(a, j) - shift) / (2 * j + 3)
                    for j in range(a + 1))
        value = 4.0 * math.pi * total
    return SeriesResult(value, a + 1, True)


# ---------------------------------------------------------------------------
# Dispatch

def K_value(params: ModelParams, mode: NormMode = NormMode.K_SQRT_COS,
            rel_tol: float = DEFAULT_REL_TOL) -> float:
    """The theta_i-independent factor K for the approximate modes."""
    mode = NormMode(mode)
    if params.model is Model.GRER:
        if mode is NormMode.PADE:
            return K_grer_pade(params.alpha_r)
        if mode is NormMode.K_SQRT_COS:
            return K_grer_series(params.alpha_r, rel_tol).value
    else:
        if mode is NormMode.K_SQRT_COS:
            return K_rer(params.alpha_r).value
    raise UnsupportedNormalization(f"no K factor for {params.model.value} with {mode.value}")


def normalization(params: ModelParams, theta_i: float, mode: NormMode,
                  rel_tol: float = DEFAULT_REL_TOL) -> float:
    """Normalization factor F(k_i) for the selected model and route."""
    mode = NormMode(mode)
    ti = _check_theta_i(theta_i)
    if mode is NormMode.EXACT:
        if params.model is Model.GRER:
            return F_grer_series(params.alpha_r, ti, rel_tol).value
        return F_rer_exact(params.alpha_r, ti).value
    return K_value(params, mode, rel_tol) * math.sqrt(math.cos(ti))


# ---------------------------------------------------------------------------
# Lobe matching

EQUIV_THETA_I = math.radians(45.0)
EQUIV_PHI = math.radians(90.0)


def inplane_cut(model: Model, alpha_r: float, theta_i: float, theta_s_signed) -> np.ndarray:
    """Pattern along the plane of incidence; negative theta_s means phi_s = phi_i + pi."""
    ts = np.asarray(theta_s_signed, dtype=float)
    phi_s = np.where(ts >= 0, 0.0, math.pi)
    cpsi = cos_psi_from_angles(theta_i, 0.0, np.abs(ts), phi_s)
    return pattern(model, np.cos(ts), cpsi, alpha_r)


def _equiv_grid(n: int = 1801) -> np.ndarray:
    return np.linspace(-math.pi / 2, math.pi / 2, n)


def equivalent_alpha_objective(alpha_grer: float, alpha_rer: float, grid=None) -> float:
    """Squared L2 distance between peak-normalized in-plane cuts at theta_i = 45 deg."""
    ts = _equiv_grid() if grid is None else grid
    g = inplane_cut(Model.GRER, alpha_grer, EQUIV_THETA_I, ts)
    r = inplane_cut(Model.RER, alpha_rer, EQUIV_THETA_I, ts)
    return float(np.sum((g / g.max() - r / r.max()) ** 2) * (ts[1] - ts[0]))


def equivalent_alpha_grer(alpha_rer: float, xatol: float = 1e-5) -> float:
    """G-RER exponent whose lobe best matches the RER lobe of exponent ``alpha_rer``."""
    if alpha_rer < 1:
        raise ValueError("alpha_rer must be >= 1")
    ts = _equiv_grid()
    hi = max(50.0, 1.5 * alpha_rer)
    coarse = np.linspace(1e-3, hi, 400)
    vals = [equivalent_alpha_objective(a, alpha_rer, ts) for a in coarse]
    k = int(np.argmin(vals))
    lo_b = coarse[max(k - 1, 0)]
    hi_b = coarse[min(k + 1, len(coarse) - 1)]
    res = minimize_scalar(equivalent_alpha_objective, bounds=(lo_b, hi_b),
                          args=(alpha_rer, ts), method="bounded",
                          options={"xatol": xatol})
    return float(res.x)
