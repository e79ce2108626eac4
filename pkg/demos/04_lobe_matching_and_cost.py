# ---
# jupyter:
#   jupytext:
#     text_representation:
#       extension: .py
#       format_name: light
# ---

# # Matching lobes and what normalization costs
# For each RER exponent we find the G-RER exponent whose in-plane cut at
# 45 deg incidence matches best, then compare how many terms and how much
# time each normalization route needs.

# +
from grer import bench
from grer.bench import Method
from grer.patterns import equivalent_alpha_grer
# -

for a in (1, 2, 5, 10, 20, 50):
    print(f"alpha_RER={a:3d}  ->  alpha_GRER={equivalent_alpha_grer(a):8.4f}")

# ## Term counts at rel_tol 1e-3

for a in (2, 10, 30, 50):
    counts = {m.value: bench.count_terms(m, a, repeats=5).terms for m in Method}
    print(a, counts)

# ## Normalized-pattern evaluation time
# RER needs the exact double sum for every new incidence angle; G-RER needs
# one rational function.

for a in (30, 40, 50):
    r = bench.time_normalized_patterns(a, repeats=301)
    print(f"alpha_RER={a}: RER {r['rer_ns'] / 1e3:7.1f} us, G-RER {r['grer_pade_ns'] / 1e3:5.1f} us,"
          f" speedup {r['speedup']:.0f}x")
