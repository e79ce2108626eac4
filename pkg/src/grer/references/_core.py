"""Frozen oracle outputs that back the regression suites.

Each suite lives in ``<suite>.json`` beside this module.  An entry stores the
inputs, the frozen value (17 significant digits) and where it came from.
``regenerate_references`` re-runs the generating oracle, reports drift
against the frozen value, and checks the production routine against it.
"""
from __future__ import annotations

import enum
import json
import math
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .. import oracle, patterns, specfun


class _F17(float):
    """Float serialized with exactly 17 significant digits."""


class _Encoder(json.JSONEncoder):
    def iterencode(self, o, _one_shot=False):
        for chunk in super().iterencode(_mark(o), _one_shot):
            yield _MARK_RE.sub(lambda m: m.group(1), chunk)


_MARK_RE = re.compile(r'"@f17:([^"]+)"')


def _mark(o):
    if isinstance(o, _F17):
        return f"@f17:{float(o):.16e}"
    if isinstance(o, dict):
        return {k: _mark(v) for k, v in o.items()}
    if isinstance(o, list):
        return [_mark(v) for v in o]
    return o


class Provenance(str, enum.Enum):
    PAPER = "PAPER"
    TRIVIAL = "TRIVIAL"
    DERIVED = "DERIVED"


@dataclass(frozen=True)
class FrozenReference:
    id: str
    inputs: dict
    value: float
    provenance: Provenance
    note: str

    def __post_init__(self):
        if Provenance(self.provenance) is Provenance.DERIVED and not self.note:
            raise ValueError(f"{self.id}: DERIVED entries must name their oracle and settings")

    def to_dict(self) -> dict:
        return {"id": self.id, "inputs": self.inputs, "value": _F17(self.value),
                "provenance": Provenance(self.provenance).value, "note": self.note}

    @classmethod
    def from_dict(cls, d: dict) -> "FrozenReference":
        return cls(d["id"], dict(d["inputs"]), float(d["value"]), Provenance(d["provenance"]),
                   d.get("note", ""))


@dataclass
class ReferenceReport:
    suite: str
    oracle_tol: float  # allowed drift of the regenerated oracle vs the frozen value
    check_tol: float  # allowed deviation of the production routine vs the frozen value
    max_drift: float = 0.0
    max_deviation: float = 0.0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        state = "PASS" if self.passed else "FAIL"
        return (f"{state} {self.suite}: max drift {self.max_drift:.3e} (tol {self.oracle_tol:g}), "
                f"max deviation {self.max_deviation:.3e} (tol {self.check_tol:g})")


# ---------------------------------------------------------------------------
# Oracles.  Each returns the frozen-value generator and the production value.

def _b_quadrature(ell: int) -> float:
    # u = t^2 makes the integrand a polynomial of degree 2*ell + 2 in t
    t, w = np.polynomial.legendre.leggauss(ell + 8)
    t, w = 0.5 * (t + 1.0), 0.5 * w
    c = np.zeros(ell + 1)
    c[ell] = 1.0
    return float(np.sum(w * 2.0 * t**2 * np.polynomial.legendre.legval(t**2, c)))


def _k_series_tight(alpha: float) -> float:
    return patterns.K_grer_series(alpha, rel_tol=1e-14).value


_F_SPEC = oracle.QuadratureSpec(nodes_u=64, nodes_phi=128, refine_until=1e-11, max_refinements=6)


def _f_quadrature(alpha: float, theta_i_deg: float) -> float:
    return oracle.pattern_integral("grer", alpha, math.radians(theta_i_deg), spec=_F_SPEC)


def _equiv_brute(alpha_rer: float, step: float = 1e-3, upper: float = 50.0) -> float:
    ts = np.linspace(-math.pi / 2, math.pi / 2, 1801)
    dt = ts[1] - ts[0]
    ti = math.radians(45.0)
    cpsi = np.clip(np.sin(ti) * np.sin(ts) + math.cos(ti) * np.cos(ts), -1.0, 1.0)
    root = np.sqrt(np.clip(np.cos(ts), 0.0, None))
    r = root * (0.5 * (1.0 + cpsi)) ** alpha_rer
    r = r / r.max()
    grid = np.arange(1, int(round(upper / step)) + 1) * step
    best, best_val = None, math.inf
    for chunk in np.array_split(grid, max(1, grid.size // 2000)):
        g = root[None, :] * np.exp(-chunk[:, None] * (1.0 - cpsi[None, :]))
        g = g / g.max(axis=1, keepdims=True)
        val = np.sum((g - r[None, :]) ** 2, axis=1) * dt
        k = int(np.argmin(val))
        if val[k] < best_val:
            best, best_val = float(chunk[k]), float(val[k])
    return best


@dataclass(frozen=True)
class _Suite:
    description: str
    oracle_tol: float
    check_tol: float
    relative: bool
    grid: tuple
    generate: object  # inputs -> oracle value
    production: object  # inputs -> value under test
    note: str


def _log_grid(n=200, lo=0.05, hi=100.0):
    return tuple({"alpha": float(a)} for a in np.geomspace(lo, hi, n))


SUITES = {
    "b_coefficients": _Suite(
        "b_l closed form against Gauss-Legendre quadrature of sqrt(u) P_l(u) on [0, 1]",
        1e-13, 1e-10, False, tuple({"ell": l} for l in range(0, 51)),
        lambda x: _b_quadrature(x["ell"]),
        lambda x: specfun.b_coefficient(x["ell"]),
        "oracle: Gauss-Legendre in t = sqrt(u), ell + 8 nodes, numpy legval"),
    "k_pade": _Suite(
        "Pade approximant of K against the converged Legendre/Bessel series",
        1e-12, 2.5e-3, True, _log_grid(),
        lambda x: _k_series_tight(x["alpha"]),
        lambda x: patterns.K_grer_pade(x["alpha"]),
        "oracle: K_grer_series with rel_tol 1e-14 on a 200-point log grid over [0.05, 100]"),
    "f_series": _Suite(
        "F series against 2-D hemisphere quadrature of the G-RER pattern",
        1e-9, 1e-6, True,
        tuple({"alpha": a, "theta_i_deg": t} for a in (0.5, 1.0, 5.0, 20.0, 50.0, 200.0)
              for t in (0.0, 30.0, 60.0, 85.0)),
        lambda x: _f_quadrature(x["alpha"], x["theta_i_deg"]),
        lambda x: patterns.F_grer_series(x["alpha"], math.radians(x["theta_i_deg"]),
                                         rel_tol=1e-12).value,
        "oracle: integrate_hemisphere, Gauss-Legendre in sqrt(cos) x trapezoid in phi, "
        "64x128 nodes refined to 1e-11"),
    "equivalent_alpha": _Suite(
        "Lobe-matched G-RER exponent against a brute-force grid search",
        0.0, 1e-3, False, ({"alpha_rer": 1},),
        lambda x: _equiv_brute(x["alpha_rer"]),
        lambda x: patterns.equivalent_alpha_grer(x["alpha_rer"]),
        "oracle: exhaustive grid, step 1e-3 over (0, 50], 1801-point cut at theta_i = 45 deg"),
}


def _path(suite: str, directory=None) -> Path:
    if directory is not None:
        return Path(directory) / f"{suite}.json"
    return Path(str(resources.files(__package__).joinpath(f"{suite}.json")))


def _suite(suite: str) -> _Suite:
    try:
        return SUITES[suite]
    except KeyError:
        raise KeyError(f"unknown suite {suite!r}; choose from {sorted(SUITES)}") from None


def _entry_id(suite: str, inputs: dict) -> str:
    return suite + ":" + ",".join(f"{k}={v:.17g}" if isinstance(v, float) else f"{k}={v}"
                                  for k, v in inputs.items())


def build_suite(suite: str) -> list[FrozenReference]:
    s = _suite(suite)
    return [FrozenReference(_entry_id(suite, x), dict(x), float(s.generate(x)),
                            Provenance.DERIVED, s.note) for x in s.grid]


def write_suite(suite: str, directory=None) -> Path:
    s = _suite(suite)
    entries = build_suite(suite)
    path = _path(suite, directory)
    doc = {"suite": suite, "description": s.description, "oracle_tol": s.oracle_tol,
           "check_tol": s.check_tol, "relative": s.relative,
           "entries": [e.to_dict() for e in entries]}
    path.write_text(json.dumps(doc, indent=1, cls=_Encoder) + "\n", encoding="utf-8")
    return path


def load_suite(suite: str, directory=None) -> list[FrozenReference]:
    _suite(suite)
    doc = json.loads(_path(suite, directory).read_text(encoding="utf-8"))
    return [FrozenReference.from_dict(d) for d in doc["entries"]]


def _diff(a: float, b: float, relative: bool) -> float:
    d = abs(a - b)
    return d / abs(b) if relative and b != 0 else d


def regenerate_references(suite: str, directory=None, rerun_oracle: bool = True) -> ReferenceReport:
    """Re-run the oracle for every frozen entry and check the production routine."""
    s = _suite(suite)
    rep = ReferenceReport(suite, s.oracle_tol, s.check_tol)
    for ref in load_suite(suite, directory):
        if rerun_oracle:
            drift = _diff(float(s.generate(ref.inputs)), ref.value, s.relative)
            rep.max_drift = max(rep.max_drift, drift)
            if drift > s.oracle_tol:
                rep.failures.append(f"{ref.id}: oracle drift {drift:.3e}")
        dev = _diff(float(s.production(ref.inputs)), ref.value, s.relative)
        rep.max_deviation = max(rep.max_deviation, dev)
        if dev > s.check_tol:
            rep.failures.append(f"{ref.id}: deviation {dev:.3e} > {s.check_tol:g}")
    return rep

