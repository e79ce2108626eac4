"""Bistatic turntable geometry of the material-under-test (MUT) campaign.

Frame: z up; the rotator centre sits at the origin's vertical at height
``h_mut``.  Azimuth 0 points from the MUT toward the transmitter.  At the
reference pose (rotation 30 deg, tilt 0) the MUT normal bisects the 60 deg
angle between the transmitter and receiver directions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..geometry import GeometryError

REF_ROTATION_DEG = 30.0
BISTATIC_DEG = 60.0


@dataclass(frozen=True)
class Orientation:
    rotation_deg: float
    tilt_deg: float

    def __post_init__(self):
        if not -15.0 <= self.rotation_deg <= 75.0:
            raise ValueError(f"rotation {self.rotation_deg} outside [-15, 75] deg")
        if not 0.0 <= self.tilt_deg <= 75.0:
            raise ValueError(f"tilt {self.tilt_deg} outside [0, 75] deg")


@dataclass(frozen=True)
class CampaignGeometry:
    h_tx: float = 1.54
    h_rx: float = 1.53
    h_mut: float = 1.53
    l_rx: float = 1.5
    l_tx: float = 0.75
    l_mut: float = 0.6
    d: float = 0.07
    freq: float = 28.5e9

    @property
    def rotator_centre(self) -> np.ndarray:
        return np.array([0.0, 0.0, self.h_mut])

    def _reference_centre(self) -> np.ndarray:
        return self.rotator_centre + self.d * mut_normal(Orientation(REF_ROTATION_DEG, 0.0))

    @property
    def tx(self) -> np.ndarray:
        return _antenna(self._reference_centre(), self.l_tx, self.h_tx, 0.0)

    @property
    def rx(self) -> np.ndarray:
        return _antenna(self._reference_centre(), self.l_rx, self.h_rx, BISTATIC_DEG)

    def plate(self, orientation: Orientation) -> "Plate":
        n = mut_normal(orientation)
        r = math.radians(orientation.rotation_deg)
        u = np.array([-math.sin(r), math.cos(r), 0.0])
        v = np.cross(n, u)
        centre = self.rotator_centre + self.d * n
        return Plate(centre, n, u, v, 0.5 * self.l_mut)


def _antenna(centre, distance, height, azimuth_deg) -> np.ndarray:
    dz = height - centre[2]
    horiz = math.sqrt(distance**2 - dz**2)
    a = math.radians(azimuth_deg)
    return centre + np.array([horiz * math.cos(a), horiz * math.sin(a), dz])


def mut_normal(orientation: Orientation) -> np.ndarray:
    r = math.radians(orientation.rotation_deg)
    t = math.radians(orientation.tilt_deg)
    return np.array([math.cos(t) * math.cos(r), math.cos(t) * math.sin(r), math.sin(t)])


@dataclass(frozen=True)
class Plate:
    """Square planar patch; ``half_size = inf`` gives an unbounded plane."""

    centre: np.ndarray
    normal: np.ndarray
    u: np.ndarray
    v: np.ndarray
    half_size: float = math.inf

    def contains(self, point) -> bool:
        d = np.asarray(point) - self.centre
        return abs(d @ self.u) <= self.half_size and abs(d @ self.v) <= self.half_size

    def facets(self, n: int = 24):
        """Centres and area of an ``n x n`` tiling of the patch."""
        step = 2.0 * self.half_size / n
        offs = -self.half_size + step * (np.arange(n) + 0.5)
        a, b = np.meshgrid(offs, offs, indexing="ij")
        centres = (self.centre + a.reshape(-1, 1) * self.u + b.reshape(-1, 1) * self.v)
        return centres, step * step


def horizontal_plane(height: float = 0.0) -> Plate:
    return Plate(np.array([0.0, 0.0, height]), np.array([0.0, 0.0, 1.0]),
                 np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0]))


def specular_point(tx, rx, surface: Plate):
    """Image-method specular point on ``surface``, or None if it misses the patch."""
    tx, rx = np.asarray(tx, dtype=float), np.asarray(rx, dtype=float)
    n = surface.normal
    ht = (tx - surface.centre) @ n
    hr = (rx - surface.centre) @ n
    if abs(ht) < 1e-12 or abs(hr) < 1e-12:
        raise GeometryError("transmitter or receiver lies on the surface")
    if ht * hr < 0:
        raise GeometryError("transmitter and receiver on opposite sides of the surface")
    image = tx - 2.0 * ht * n
    s = ht / (ht + hr)  # fraction of the image->rx segment where it crosses the plane
    point = image + s * (rx - image)
    return point if surface.contains(point) else None


def default_orientations(rot_step: float = 7.5, tilt_step: float = 15.0) -> list[Orientation]:
    """Orientation index order: rotation sweeps fastest, starting at (-15, 0)."""
    rots = np.arange(-15.0, 75.0 + 1e-9, rot_step)
    tilts = np.arange(0.0, 75.0 + 1e-9, tilt_step)
    return [Orientation(float(r), float(t)) for t in tilts for r in rots]


@dataclass(frozen=True)
class PoseGeometry:
    """Per-facet quantities for one orientation; independent of the material."""

    cos_i: np.ndarray
    cos_s: np.ndarray
    cos_psi: np.ndarray
    r_i: np.ndarray
    r_s: np.ndarray
    dS: float
    lit: np.ndarray
    sp_cos_i: float | None = None
    sp_path: float | None = None
    sp_point: np.ndarray | None = field(default=None, repr=False)


def pose_geometry(campaign: CampaignGeometry, orientation: Orientation,
                  n_facets: int = 24) -> PoseGeometry:
    plate = campaign.plate(orientation)
    tx, rx = campaign.tx, campaign.rx
    centres, dS = plate.facets(n_facets)
    n = plate.normal
    to_f = centres - tx
    r_i = np.linalg.norm(to_f, axis=1)
    k_i = to_f / r_i[:, None]
    to_rx = rx - centres
    r_s = np.linalg.norm(to_rx, axis=1)
    k_s = to_rx / r_s[:, None]
    cos_i = -(k_i @ n)
    cos_s = k_s @ n
    k_r = k_i + 2.0 * cos_i[:, None] * n
    cos_psi = np.clip(np.sum(k_r * k_s, axis=1), -1.0, 1.0)
    lit = (cos_i > 0) & (cos_s > 0)
    sp = specular_point(tx, rx, plate) if ((tx - plate.centre) @ n) * ((rx - plate.centre) @ n) > 0 else None
    sp_cos_i = sp_path = None
    if sp is not None:
        a = np.linalg.norm(tx - sp)
        sp_cos_i = float((tx - sp) @ n / a)
        sp_path = float(a + np.linalg.norm(rx - sp))
    return PoseGeometry(np.where(lit, cos_i, 0.0), np.where(lit, cos_s, 0.0), cos_psi,
                        r_i, r_s, dS, lit, sp_cos_i, sp_path, sp)
