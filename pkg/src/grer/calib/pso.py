"""Seeded particle swarm minimizer with reflective bounds."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize


@dataclass(frozen=True)
class SwarmConfig:
    n_particles: int = 40
    inertia: float = 0.729
    cognitive: float = 1.494
    social: float = 1.494
    iterations: int = 200
    polish: bool = True  # Nelder-Mead refinement of the final global best


@dataclass
class PsoResult:
    x: np.ndarray
    loss: float
    trace: list


def _reflect(x, v, lo, hi):
    over = x > hi
    x = np.where(over, 2 * hi - x, x)
    v = np.where(over, -v, v)
    under = x < lo
    x = np.where(under, 2 * lo - x, x)
    v = np.where(under, -v, v)
    return np.clip(x, lo, hi), v


def pso_minimize(objective, lo, hi, seed: int, swarm: SwarmConfig = SwarmConfig()) -> PsoResult:
    """Minimize ``objective`` over the box ``[lo, hi]``.

    ``objective`` maps an ``(n_particles, dim)`` array to ``(n_particles,)``
    losses, so callers can vectorize over the swarm.  Ties in the global
    best go to the lowest particle index; the result depends only on ``seed``.
    """
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    if np.any(lo >= hi):
        raise ValueError("every lower bound must be below its upper bound")
    rng = np.random.default_rng(seed)
    n, dim = swarm.n_particles, lo.size
    span = hi - lo
    x = lo + rng.random((n, dim)) * span
    v = (rng.random((n, dim)) - 0.5) * 0.2 * span
    loss = np.asarray(objective(x), dtype=float)
    loss = np.where(np.isfinite(loss), loss, np.inf)
    pbest, pbest_loss = x.copy(), loss.copy()
    g = int(np.argmin(pbest_loss))
    gbest, gbest_loss = pbest[g].copy(), float(pbest_loss[g])
    trace = [gbest_loss]
    for _ in range(swarm.iterations):
        r1 = rng.random((n, dim))
        r2 = rng.random((n, dim))
        v = (swarm.inertia * v + swarm.cognitive * r1 * (pbest - x)
             + swarm.social * r2 * (gbest - x))
        v = np.clip(v, -span, span)
        x, v = _reflect(x + v, v, lo, hi)
        loss = np.asarray(objective(x), dtype=float)
        loss = np.where(np.isfinite(loss), loss, np.inf)
        better = loss < pbest_loss
        pbest[better] = x[better]
        pbest_loss[better] = loss[better]
        g = int(np.argmin(pbest_loss))
        if pbest_loss[g] < gbest_loss:
            gbest, gbest_loss = pbest[g].copy(), float(pbest_loss[g])
        trace.append(gbest_loss)
    if swarm.polish:
        gbest, gbest_loss = _polish(objective, gbest, gbest_loss, lo, span)
        trace.append(gbest_loss)
    return PsoResult(gbest, gbest_loss, trace)


def _polish(objective, x0, f0, lo, span):
    # Work in unit-box coordinates so every parameter gets a comparable simplex.
    def f(z):
        val = float(np.asarray(objective((lo + z * span)[None, :]), dtype=float)[0])
        return val if np.isfinite(val) else np.inf

    z0 = (x0 - lo) / span
    res = minimize(f, z0, method="Nelder-Mead", bounds=[(0.0, 1.0)] * z0.size,
                   options={"xatol": 1e-12, "fatol": 1e-15, "maxfev": 4000})
    if res.fun < f0:
        return lo + np.clip(res.x, 0.0, 1.0) * span, float(res.fun)
    return x0, f0
