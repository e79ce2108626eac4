"""Scalar special functions used by the normalization series.

Everything here works in float64.  The modified spherical Bessel functions are
only ever returned in their exponentially scaled form ``exp(-x) * i_l(x)`` so the
series stay finite for lobe exponents in the thousands.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

#: Largest Legendre degree accepted by :func:`legendre_p`.
MAX_LEGENDRE_DEGREE = 10_000

#: Arguments above these limits overflow float64; use the ``log_*`` variants.
FACTORIAL_LIMIT = 170
DOUBLE_FACTORIAL_LIMIT = 300

_X_SLACK = 1e-12


@dataclass(frozen=True)
class SeriesResult:
    """Value of a truncated sum plus its bookkeeping."""

    value: float
    terms_used: int
    converged: bool

    def __float__(self) -> float:
        return float(self.value)


# ---------------------------------------------------------------------------
# Legendre polynomials

def _check_legendre_args(degree: int, x):
    if degree < 0:
        raise ValueError(f"Legendre degree must be non-negative, got {degree}")
    if degree > MAX_LEGENDRE_DEGREE:
        raise OverflowError(
            f"Legendre degree {degree} exceeds limit {MAX_LEGENDRE_DEGREE}")
    if np.any(np.abs(x) > 1.0 + _X_SLACK):
        raise ValueError("Legendre argument outside [-1, 1]")


def legendre_p(degree: int, x: float) -> float:
    """P_degree(x) by the Bonnet three-term recurrence."""
    _check_legendre_args(degree, x)
    x = min(1.0, max(-1.0, float(x)))
    if degree == 0:
        return 1.0
    p_prev, p = 1.0, x
    for n in range(1, degree):
        p_prev, p = p, ((2 * n + 1) * x * p - n * p_prev) / (n + 1)
    return p


def legendre_p_all(max_degree: int, x) -> np.ndarray:
    """P_0..P_max_degree at ``x``; shape ``(max_degree + 1,) + np.shape(x)``."""
    _check_legendre_args(max_degree, x)
    x = np.clip(np.asarray(x, dtype=float), -1.0, 1.0)
    out = np.empty((max_degree + 1,) + x.shape)
    out[0] = 1.0
    if max_degree >= 1:
        out[1] = x
    for n in range(1, max_degree):
        out[n + 1] = ((2 * n + 1) * x * out[n] - n * out[n - 1]) / (n + 1)
    return out


# ---------------------------------------------------------------------------
# Scaled modified spherical Bessel functions

def scaled_i0(x: float) -> float:
    """exp(-x) * sinh(x) / x, written so it never forms exp(+x)."""
    if x < 0:
        raise ValueError(f"argument must be >= 0, got {x}")
    if x == 0.0:
        return 1.0
    return -math.expm1(-2.0 * x) / (2.0 * x)


def _miller_start(max_degree: int, x: float) -> int:
    # Truncation error of the downward ratio recurrence decays roughly like
    # exp(-(N^2 - l^2) / x) for large x and like (x / 2N)^(2(N-l)) for small x.
    return int(math.ceil(math.sqrt(max_degree**2 + 40.0 * x))) + 20


def scaled_mod_sph_bessel_i_all(max_degree: int, x: float) -> np.ndarray:
    """exp(-x) * i_l(x) for l = 0..max_degree.

    Uses Miller's backward recurrence on the ratios i_l / i_(l-1), anchored to
    the closed form of the scaled i_0.  Working with ratios avoids the
    overflow the raw downward recurrence hits for small ``x``.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be non-negative")
    x = float(x)
    if x < 0 or not math.isfinite(x):
        raise ValueError(f"argument must be finite and >= 0, got {x}")
    out = np.zeros(max_degree + 1)
    out[0] = scaled_i0(x)
    if x == 0.0 or max_degree == 0:
        return out
    n_start = _miller_start(max_degree, x)
    # ratio[l] = i_l / i_(l-1) = x / (2l + 1 + x * ratio[l+1])
    ratio = np.empty(max_degree + 1)
    r = 0.0
    for n in range(n_start, 0, -1):
        r = x / (2 * n + 1 + x * r)
        if n <= max_degree:
            ratio[n] = r
    out[1:] = out[0] * np.cumprod(ratio[1:])
    return out


def scaled_mod_sph_bessel_i(degree: int, x: float) -> float:
    """exp(-x) * i_degree(x); see :func:`scaled_mod_sph_bessel_i_all`."""
    if degree < 0:
        raise ValueError("degree must be non-negative")
    return float(scaled_mod_sph_bessel_i_all(degree, x)[degree])


# ---------------------------------------------------------------------------
# Half-range Legendre moments of sqrt(u)

def b_coefficient(degree: int) -> float:
    """Integral of sqrt(u) * P_degree(u) over [0, 1], from the signed closed forms."""
    if degree < 0:
        raise ValueError("degree must be non-negative")
    m, odd = divmod(degree, 2)
    if odd:
        return (-1.0) ** m * 2.0 / ((4 * m + 1) * (4 * m + 5))
    return (-1.0) ** (m - 1) * 2.0 / ((4 * m - 1) * (4 * m + 3))


def b_coefficients(max_degree: int) -> np.ndarray:
    """b_0..b_max_degree as an array (closed forms, vectorized)."""
    ell = np.arange(max_degree + 1)
    m = ell // 2
    sign = np.where(ell % 2 == 1, (-1.0) ** m, (-1.0) ** (m - 1))
    denom = np.where(ell % 2 == 1, (4 * m + 1) * (4 * m + 5), (4 * m - 1) * (4 * m + 3))
    return sign * 2.0 / denom


def b_coefficients_recurrence(max_degree: int) -> np.ndarray:
    """b_l from b_(l+2) = -(2l - 1) / (2l + 7) * b_l, seeded with 2/3 and 2/5."""
    out = np.empty(max_degree + 1)
    out[0] = 2.0 / 3.0
    if max_degree >= 1:
        out[1] = 2.0 / 5.0
    for ell in range(max_degree - 1):
        out[ell + 2] = -(2 * ell - 1) / (2 * ell + 7) * out[ell]
    return out


def b_abs(degree) -> np.ndarray:
    """|b_l| = 2 / |(2l - 1)(2l + 3)|."""
    ell = np.asarray(degree)
    return 2.0 / np.abs((2 * ell - 1) * (2 * ell + 3))


# ---------------------------------------------------------------------------
# Combinatorics

def log_factorial(n: int) -> float:
    if n < 0:
        raise ValueError("factorial of a negative number")
    return math.lgamma(n + 1)


def log_double_factorial(n: int) -> float:
    """log(n!!) for n >= -1, with (-1)!! = 0!! = 1."""
    if n < -1:
        raise ValueError("double factorial defined for n >= -1")
    if n <= 0:
        return 0.0
    k, odd = divmod(n, 2)
    if not odd:
        return k * math.log(2.0) + math.lgamma(k + 1)
    # (2k+1)!! = (2k+1)! / (2^k k!)
    return math.lgamma(n + 1) - k * math.log(2.0) - math.lgamma(k + 1)


def factorial(n: int) -> float:
    if n > FACTORIAL_LIMIT:
        raise OverflowError(f"{n}! overflows float64; use log_factorial")
    if n < 0:
        raise ValueError("factorial of a negative number")
    return float(math.factorial(n))


def double_factorial(n: int) -> float:
    if n < -1:
        raise ValueError("double factorial defined for n >= -1")
    if n > DOUBLE_FACTORIAL_LIMIT:
        raise OverflowError(f"{n}!! overflows float64; use log_double_factorial")
    out = 1
    for k in range(n, 1, -2):
        out *= k
    return float(out)


def binomial(n: int, k: int) -> float:
    if n < 0 or k < 0:
        raise ValueError("binomial arguments must be non-negative")
    if k > n:
        return 0.0
    return float(math.comb(n, k))


def log_binomial(n: int, k: int) -> float:
    if k < 0 or k > n:
        raise ValueError("log_binomial needs 0 <= k <= n")
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


def legendre_p_all_unchecked(max_degree: int, x: float) -> np.ndarray:
    """Scalar-argument table P_0..P_max_degree without the degree limit."""
    x = min(1.0, max(-1.0, float(x)))
    out = np.empty(max_degree + 1)
    out[0] = 1.0
    if max_degree >= 1:
        out[1] = x
    p_prev, p = 1.0, x
    for n in range(1, max_degree):
        p_prev, p = p, ((2 * n + 1) * x * p - n * p_prev) / (n + 1)
        out[n + 1] = p
    return out
