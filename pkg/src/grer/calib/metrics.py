"""Error metrics in dB and the large-scale fading filter."""
from __future__ import annotations

import numpy as np


def rmse_db(predicted_db, measured_db) -> float:
    p = np.asarray(predicted_db, dtype=float)
    m = np.asarray(measured_db, dtype=float)
    if p.shape != m.shape:
        raise ValueError(f"length mismatch: {p.shape} vs {m.shape}")
    if p.size == 0:
        raise ValueError("need at least one value")
    return float(np.sqrt(np.mean((p - m) ** 2)))


def rrmse_db(rmse_rer: float, rmse_grer: float) -> float:
    """Positive when G-RER fits better."""
    return float(rmse_rer - rmse_grer)


def sliding_average(series, window: int) -> np.ndarray:
    """Centred moving average; the window shrinks symmetrically at the ends."""
    x = np.asarray(series, dtype=float)
    if window < 1 or window % 2 == 0:
        raise ValueError("window must be a positive odd integer")
    if window > x.size:
        raise ValueError("window longer than the series")
    half = window // 2
    out = np.empty_like(x)
    for i in range(x.size):
        h = min(half, i, x.size - 1 - i)
        out[i] = x[i - h:i + h + 1].mean()
    return out
