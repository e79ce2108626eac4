"""Reciprocal effective-roughness diffuse scattering: RER and Gaussian-lobe G-RER.

The core routes are the scattering patterns, their hemispherical
normalization (exact double sum, Legendre/Bessel series, Pade approximant),
an independent quadrature oracle, and the diffuse power budget.  The
``grer.calib`` subpackage fits material parameters to MUT measurements.
"""
from .geometry import GeometryError, ScatterGeometry, geometry_from_angles, specular_reflect
from .patterns import (F_grer_series, F_rer_exact, K_grer_pade, K_grer_series, K_rer, K_value,
                       Model, ModelParams, NormMode, SeriesConvergenceError,
                       UnsupportedNormalization, equivalent_alpha_grer, f_grer, f_rer,
                       normalization, pattern)
from .scatter import (LinkBudget, Material, Polarization, diffuse_power, fresnel_coefficient,
                      fresnel_reflectivity, reciprocity_residual)
from .specfun import SeriesResult

__version__ = "0.1.0"

__all__ = [
    "GeometryError", "ScatterGeometry", "geometry_from_angles", "specular_reflect",
    "F_grer_series", "F_rer_exact", "K_grer_pade", "K_grer_series", "K_rer", "K_value",
    "Model", "ModelParams", "NormMode", "SeriesConvergenceError", "UnsupportedNormalization",
    "equivalent_alpha_grer", "f_grer", "f_rer", "normalization", "pattern",
    "LinkBudget", "Material", "Polarization", "diffuse_power", "fresnel_coefficient",
    "fresnel_reflectivity", "reciprocity_residual", "SeriesResult",
]
