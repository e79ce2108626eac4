# ---
# jupyter:
#   jupytext:
#     text_representation:
#       extension: .py
#       format_name: light
# ---

# # Calibrating a material from multipath components
# A synthetic brick sample is rotated and tilted in front of a bistatic
# antenna pair.  We simulate the components, split them into specular and
# diffuse sets, and recover the material with a two-stage swarm fit.

# +
import numpy as np

from grer.calib import (CampaignGeometry, ClassifierConfig, Label, aggregate_mpcs,
                        classify_campaign, default_orientations, pso_fit, synth_mpcs)
from grer.scatter import Material
# -

brick = Material(eps_r=3.219, sigma=0.05, S=0.4, alpha_r=8.0)
campaign = CampaignGeometry()
orients = default_orientations()
mpcs = synth_mpcs(brick, campaign, orients, noise_db=1.0, seed=7)
print(len(orients), "orientations,", len(mpcs), "components")

# ## Specular / diffuse split

labels = classify_campaign(mpcs, orients, campaign, ClassifierConfig())
print("SP components:", sum(l is Label.SP for l in labels))
data = aggregate_mpcs(mpcs, labels, orients, campaign)

# ## Fit

fit = pso_fit(data, seed=0)
m = fit.material
print(f"eps_r={m.eps_r:.3f} sigma={m.sigma:.3f} S={m.S:.3f} alpha={m.alpha_r:.2f}  "
      f"rmse={fit.rmse_db:.2f} dB")
print("loss trace (every 40 iterations):", np.round(fit.trace[::40], 3))
