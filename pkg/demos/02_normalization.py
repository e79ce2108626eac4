# ---
# jupyter:
#   jupytext:
#     text_representation:
#       extension: .py
#       format_name: light
# ---

# # Normalizing the lobes
# F(theta_i) is the hemisphere integral of the pattern.  For G-RER it has a
# Legendre/Bessel series, its projection on sqrt(cos theta_i) gives a
# constant K, and a rational fit to K costs a handful of flops.

# +
import math

import numpy as np

from grer import oracle
from grer.patterns import F_grer_series, K_grer_pade, K_grer_series
# -

# ## Series against brute-force quadrature

for alpha in (0.5, 5.0, 50.0):
    for t in (0, 45, 85):
        s = F_grer_series(alpha, math.radians(t), rel_tol=1e-12).value
        q = oracle.pattern_integral("grer", alpha, math.radians(t))
        print(f"alpha={alpha:5.1f} theta_i={t:2d}  series={s:.12f}  quad={q:.12f}")

# ## How close is F to K sqrt(cos theta_i)?

alpha = 10.0
K = K_grer_series(alpha, 1e-12).value
for t in range(0, 90, 15):
    F = F_grer_series(alpha, math.radians(t), 1e-12).value
    print(f"theta_i={t:2d}  F/(K sqrt cos) = {F / (K * math.sqrt(math.cos(math.radians(t)))):.4f}")

# ## The rational approximation of K
# The worst relative error over alpha in [0.05, 100] is about 0.35 %.

grid = np.geomspace(0.05, 100, 200)
dev = [K_grer_pade(a) / K_grer_series(a, 1e-12).value - 1 for a in grid]
k = int(np.argmax(np.abs(dev)))
print(f"worst deviation {dev[k]:+.4%} at alpha = {grid[k]:.2f}")
print(f"large-alpha check: alpha K / 2 pi at 200 = {200 * K_grer_series(200.0, 1e-12).value / (2 * math.pi):.4f}")
