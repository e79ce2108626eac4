"""Split measured multipath components into specular (SP) and diffuse (DS) sets."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np


class Label(str, enum.Enum):
    SP = "SP"
    DS = "DS"


@dataclass(frozen=True)
class MpcRecord:
    azimuth: float
    elevation: float
    delay: float
    path_gain_db: float
    orientation_index: int = 0

    def __post_init__(self):
        vals = (self.azimuth, self.elevation, self.delay, self.path_gain_db)
        if not all(math.isfinite(v) for v in vals[:3]):
            raise ValueError("MPC angles and delay must be finite")
        if self.delay < 0:
            raise ValueError("delay must be >= 0")
        if self.orientation_index < 0:
            raise ValueError("orientation_index must be >= 0")

    @property
    def direction(self) -> np.ndarray:
        return direction_from_angles(self.azimuth, self.elevation)


@dataclass(frozen=True)
class ClassifierConfig:
    rho: float = 0.15
    pg_th: float = 6.0

    def __post_init__(self):
        if not (self.rho > 0 and self.pg_th > 0):
            raise ValueError("rho and pg_th must be positive")


@dataclass(frozen=True)
class SpecularRegion:
    """Cone around the specular arrival direction seen from the receiver.

    Its half-angle is the angle a circle of radius ``rho`` around the
    specular point subtends at distance ``range_m``.
    """

    direction: np.ndarray
    range_m: float

    def half_angle(self, rho: float) -> float:
        return math.atan2(rho, self.range_m)

    @classmethod
    def from_points(cls, rx, sp_point) -> "SpecularRegion":
        d = np.asarray(sp_point, dtype=float) - np.asarray(rx, dtype=float)
        r = float(np.linalg.norm(d))
        return cls(d / r, r)


def direction_from_angles(azimuth, elevation) -> np.ndarray:
    az, el = np.asarray(azimuth, dtype=float), np.asarray(elevation, dtype=float)
    return np.stack([np.cos(el) * np.cos(az), np.cos(el) * np.sin(az), np.sin(el)], axis=-1)


def angles_from_direction(d) -> tuple[float, float]:
    d = np.asarray(d, dtype=float)
    d = d / np.linalg.norm(d)
    return math.atan2(d[1], d[0]), math.asin(max(-1.0, min(1.0, d[2])))


def inside_region(mpcs, region: SpecularRegion, cfg: ClassifierConfig) -> np.ndarray:
    if not mpcs:
        return np.zeros(0, dtype=bool)
    dirs = direction_from_angles([m.azimuth for m in mpcs], [m.elevation for m in mpcs])
    cosang = dirs @ (region.direction / np.linalg.norm(region.direction))
    return cosang >= math.cos(region.half_angle(cfg.rho))


def classify_mpcs(mpcs, region: SpecularRegion | None, cfg: ClassifierConfig = ClassifierConfig()):
    """Label each MPC SP or DS.

    An MPC is SP when it arrives inside the specular cone and its path gain is
    within ``pg_th`` dB of the strongest MPC in that cone.  Without a specular
    point every MPC is DS.
    """
    mpcs = list(mpcs)
    if region is None or not mpcs:
        return [Label.DS] * len(mpcs)
    inside = inside_region(mpcs, region, cfg)
    if not inside.any():
        return [Label.DS] * len(mpcs)
    pg = np.array([m.path_gain_db for m in mpcs])
    pg_max = pg[inside].max()
    sp = inside & (pg_max - pg < cfg.pg_th)
    return [Label.SP if s else Label.DS for s in sp]
