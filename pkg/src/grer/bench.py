"""Term counts, timings and figure-data sweeps for the normalization routes."""
from __future__ import annotations

import csv
import enum
import math
import statistics
import time
from dataclasses import asdict, dataclass

import numpy as np

from .geometry import geometry_from_angles
from .patterns import (DEFAULT_REL_TOL, F_grer_series, F_rer_exact, K_grer_pade,
                       K_grer_series, K_rer, equivalent_alpha_grer, f_grer, f_rer)


class Method(str, enum.Enum):
    F_RER_EXACT = "F_RER_EXACT"
    K_RER = "K_RER"
    K_GRER_SERIES = "K_GRER_SERIES"
    K_GRER_PADE = "K_GRER_PADE"


@dataclass(frozen=True)
class BenchRecord:
    alpha_r: float
    method: Method
    terms: int
    wall_ns: float
    value: float


def median_ns(fn, repeats: int = 1001, warmup: int = 50) -> float:
    """Median per-call wall time of ``fn()`` in nanoseconds."""
    for _ in range(warmup):
        fn()
    clock = time.perf_counter_ns
    samples = []
    for _ in range(repeats):
        t0 = clock()
        fn()
        samples.append(clock() - t0)
    return max(float(statistics.median(samples)), 1.0)


def _evaluator(method: Method, alpha_r: float, rel_tol: float, theta_i: float):
    method = Method(method)
    if method is Method.F_RER_EXACT:
        return lambda: F_rer_exact(alpha_r, theta_i)
    if method is Method.K_RER:
        return lambda: K_rer(alpha_r)
    if method is Method.K_GRER_SERIES:
        return lambda: K_grer_series(alpha_r, rel_tol)
    return lambda: K_grer_pade(alpha_r)


def count_terms(method, alpha_r: float, rel_tol: float = DEFAULT_REL_TOL,
                theta_i: float = math.radians(45.0), repeats: int = 101) -> BenchRecord:
    method = Method(method)
    fn = _evaluator(method, alpha_r, rel_tol, theta_i)
    out = fn()
    if isinstance(out, float):
        value, terms = out, 1
    else:
        value, terms = out.value, out.terms_used
    return BenchRecord(float(alpha_r), method, int(terms), median_ns(fn, repeats, 5), float(value))


def time_normalized_patterns(alpha_rer: int, alpha_grer: float | None = None,
                             theta_i: float = math.radians(45.0), theta_s: float = math.radians(40.0),
                             repeats: int = 1001) -> dict:
    """Per-call cost of f/F: RER with the exact double sum vs G-RER with Pade."""
    if alpha_grer is None:
        alpha_grer = equivalent_alpha_grer(alpha_rer)
    geom = geometry_from_angles(theta_i, math.pi / 2, theta_s, math.pi / 2)
    sqrt_ci = math.sqrt(math.cos(theta_i))

    def rer():
        return f_rer(geom, alpha_rer) / F_rer_exact(alpha_rer, theta_i).value

    def grer():
        return f_grer(geom, alpha_grer) / (K_grer_pade(alpha_grer) * sqrt_ci)

    t_rer = median_ns(rer, repeats)
    t_grer = median_ns(grer, repeats)
    return {"alpha_rer": alpha_rer, "alpha_grer": alpha_grer,
            "rer_ns": t_rer, "grer_pade_ns": t_grer, "speedup": t_rer / t_grer}


# ---------------------------------------------------------------------------
# Figure data

FIG_HEADERS = {
    "3a": ["alpha", "method", "terms", "wall_ns", "value"],
    "2c": ["alpha", "k_series", "k_pade", "pade_over_series"],
    "2a": ["theta_i_deg", "alpha", "F", "F_over_F0", "sqrt_cos"],
    "3b": ["alpha_rer", "alpha_grer_equiv"],
}


def fig3a_rows(alpha_grid, methods=tuple(Method), rel_tol=DEFAULT_REL_TOL, repeats=101):
    rows = []
    for a in alpha_grid:
        for m in methods:
            m = Method(m)
            if m in (Method.F_RER_EXACT, Method.K_RER) and float(a) != int(a):
                continue
            r = count_terms(m, int(a) if m in (Method.F_RER_EXACT, Method.K_RER) else float(a),
                            rel_tol, repeats=repeats)
            rows.append([r.alpha_r, r.method.value, r.terms, r.wall_ns, r.value])
    return rows


def fig2c_rows(alpha_grid, rel_tol: float = 1e-12):
    rows = []
    for a in alpha_grid:
        ks = K_grer_series(float(a), rel_tol).value
        kp = K_grer_pade(float(a))
        rows.append([float(a), ks, kp, kp / ks])
    return rows


def fig2a_rows(theta_grid_deg, alpha_grid, rel_tol: float = 1e-9):
    rows = []
    for a in alpha_grid:
        f0 = F_grer_series(float(a), 0.0, rel_tol).value
        for t in theta_grid_deg:
            F = F_grer_series(float(a), math.radians(t), rel_tol).value
            rows.append([float(t), float(a), F, F / f0, math.sqrt(math.cos(math.radians(t)))])
    return rows


def fig3b_rows(alpha_rer_grid):
    return [[int(a), equivalent_alpha_grer(int(a))] for a in alpha_rer_grid]


def write_csv(path_or_file, header, rows) -> None:
    def dump(fh):
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([repr(v) if isinstance(v, float) else v for v in r])

    if hasattr(path_or_file, "write"):
        dump(path_or_file)
    else:
        with open(path_or_file, "w", newline="", encoding="utf-8") as fh:
            dump(fh)


def sweep(fig: str, output, alpha_grid=(), theta_grid=(), methods=tuple(Method),
          rel_tol: float = DEFAULT_REL_TOL, repeats: int = 101) -> list:
    """Compute one figure's data and write it as CSV; returns the rows."""
    if fig not in FIG_HEADERS:
        raise ValueError(f"unknown figure {fig!r}; choose from {sorted(FIG_HEADERS)}")
    if fig == "3a":
        rows = fig3a_rows(alpha_grid, methods, rel_tol, repeats)
    elif fig == "2c":
        rows = fig2c_rows(alpha_grid)
    elif fig == "2a":
        rows = fig2a_rows(theta_grid, alpha_grid)
    else:
        rows = fig3b_rows(alpha_grid)
    write_csv(output, FIG_HEADERS[fig], rows)
    return rows


def records_as_dicts(records):
    return [{**asdict(r), "method": r.method.value} for r in records]
