"""Direction vectors and the scattering-angle bookkeeping.

Conventions: ``k_i`` is the propagation direction of the incident wave, so it
points *into* the surface (negative z in the local frame); ``k_s`` points away
from the surface.  The local surface normal is +z for all pattern maths.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

NORM_TOL = 1e-9
Z_HAT = np.array([0.0, 0.0, 1.0])


class GeometryError(ValueError):
    """Raised for directions or angles outside the admissible domain."""


def unit(v) -> np.ndarray:
    """Return ``v`` as a float array of unit norm.

    Inputs within ``NORM_TOL`` of unit length are renormalized silently;
    anything else is an error, because a badly scaled direction usually means
    the caller passed a position by mistake.
    """
    v = np.asarray(v, dtype=float)
    n = np.linalg.norm(v, axis=-1, keepdims=True)
    if np.any(np.abs(n - 1.0) > NORM_TOL):
        raise GeometryError(f"vector is not unit-norm (|v| = {np.squeeze(n)})")
    return v / n


def specular_reflect(k_i, normal) -> np.ndarray:
    """Mirror ``k_i`` about the plane with unit ``normal``.

    Vectorized over leading axes.  ``k_i`` must travel toward the surface.
    """
    k_i = unit(k_i)
    normal = unit(normal)
    dot = np.sum(k_i * normal, axis=-1, keepdims=True)
    if np.any(dot >= 0.0):
        raise GeometryError("incident direction does not travel toward the surface")
    return k_i - 2.0 * dot * normal


def incident_direction(theta_i: float, phi_i: float) -> np.ndarray:
    st = math.sin(theta_i)
    return np.array([st * math.cos(phi_i), st * math.sin(phi_i), -math.cos(theta_i)])


def scattered_direction(theta_s: float, phi_s: float) -> np.ndarray:
    st = math.sin(theta_s)
    return np.array([st * math.cos(phi_s), st * math.sin(phi_s), math.cos(theta_s)])


def cos_psi_from_angles(theta_i, phi_i, theta_s, phi_s):
    """Cosine of the angle between the specular and the scattering direction.

    Broadcasts over numpy arrays.
    """
    c = (np.sin(theta_i) * np.sin(theta_s) * np.cos(phi_s - phi_i)
         + np.cos(theta_i) * np.cos(theta_s))
    return np.clip(c, -1.0, 1.0)


@dataclass(frozen=True)
class ScatterGeometry:
    theta_i: float
    phi_i: float
    theta_s: float
    phi_s: float
    k_i: np.ndarray = field(repr=False, compare=False)
    k_s: np.ndarray = field(repr=False, compare=False)
    k_r: np.ndarray = field(repr=False, compare=False)
    cos_psi: float = 1.0

    @property
    def cos_theta_i(self) -> float:
        return math.cos(self.theta_i)

    @property
    def cos_theta_s(self) -> float:
        return max(0.0, math.cos(self.theta_s))

    def swapped(self) -> "ScatterGeometry":
        """Geometry with transmitter and receiver interchanged.

        The reversed wave arrives along ``-k_s`` and leaves along ``-k_i``,
        which shifts both azimuths by pi.
        """
        return geometry_from_angles(self.theta_s, self.phi_s + math.pi,
                                    self.theta_i, self.phi_i + math.pi)


def geometry_from_angles(theta_i: float, phi_i: float,
                         theta_s: float, phi_s: float) -> ScatterGeometry:
    if not 0.0 <= theta_i < math.pi / 2:
        raise GeometryError(f"theta_i={theta_i} outside [0, pi/2)")
    if not 0.0 <= theta_s <= math.pi / 2:
        raise GeometryError(f"theta_s={theta_s} outside [0, pi/2]")
    k_i = incident_direction(theta_i, phi_i)
    k_s = scattered_direction(theta_s, phi_s)
    k_r = specular_reflect(k_i, Z_HAT)
    cos_psi = float(cos_psi_from_angles(theta_i, phi_i, theta_s, phi_s))
    if theta_i == theta_s and math.cos(phi_s - phi_i) == 1.0:
        cos_psi = 1.0
    return ScatterGeometry(theta_i, phi_i, theta_s, phi_s, k_i, k_s, k_r, cos_psi)


def angles_from_direction(v, outgoing: bool = True) -> tuple[float, float]:
    """(theta, phi) of a unit vector; ``outgoing=False`` treats it as incident."""
    x, y, z = unit(v)
    theta = math.acos(max(-1.0, min(1.0, z if outgoing else -z)))
    phi = math.atan2(y, x) % (2 * math.pi)
    return theta, phi
