# ---
# jupyter:
#   jupytext:
#     text_representation:
#       extension: .py
#       format_name: light
# ---

# # Scattering patterns
# Two reciprocal lobes around the specular direction: the raised-cosine RER
# lobe and the Gaussian G-RER lobe.  Both carry a sqrt(cos theta_s) factor.

# +
import math

import numpy as np

from grer import Model, geometry_from_angles, f_grer, f_rer
from grer.patterns import inplane_cut
# -

# A single geometry: incidence at 30 deg, looking 10 deg off specular.

geo = geometry_from_angles(math.radians(30), 0.0, math.radians(40), 0.0)
print("cos psi =", geo.cos_psi)
print("G-RER  f =", f_grer(geo, 8.0))
print("RER    f =", f_rer(geo, 8))

# ## In-plane cuts
# Negative theta_s means the backward half of the plane of incidence.

theta = np.linspace(-90, 90, 13)
for alpha in (2.0, 10.0, 50.0):
    cut = inplane_cut(Model.GRER, alpha, math.radians(60), np.radians(theta))
    print(f"alpha={alpha:5.1f}", np.round(cut / cut.max(), 3))

# ## The peak sits below specular at grazing incidence
# The sqrt(cos theta_s) factor drags the maximum toward the normal.  A tighter
# lobe pulls it back toward the specular angle.

ts = np.radians(np.arange(0, 90, 0.01))
for alpha in (10.0, 30.0, 100.0, 300.0):
    f = inplane_cut(Model.GRER, alpha, math.radians(75), ts)
    print(f"alpha={alpha:6.1f}  peak at {math.degrees(ts[np.argmax(f)]):6.2f} deg (specular 75)")
