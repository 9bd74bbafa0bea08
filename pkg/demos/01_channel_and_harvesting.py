"""
Link gains and harvested power
==============================

Draw Rayleigh link gains for the default deployment and look at how much
power a D2D transmitter ends up with after harvesting.
"""

import numpy as np

from d2drelay import SystemConfig, draw_channels, harvested_power, load_default_config

cfg = load_default_config()
print(cfg)

# One realization: rows are D2D pairs, columns are the links
# BS->DU1, DU1->CU, DU1->DU2, BS->DU2.
rng = np.random.default_rng(0)
print(draw_channels(cfg, rng))

# Many realizations of a single pair: sample means follow d**-v.
many = draw_channels(cfg.replace(n_pairs=200_000), rng)
for name, mean, sample in zip(["BS-DU1", "DU1-CU", "DU1-DU2", "BS-DU2"], cfg.link_means, many.T):
    print(f"{name:8s} mean d^-v = {mean:.3e}   sample mean = {sample.mean():.3e}")

# Harvested power grows as alpha/(1-alpha): a longer phase 1 means more
# energy, spent over a shorter phase 2.
beta = cfg.link_means[0]
for alpha in (0.1, 0.3, 0.5, 0.7, 0.9):
    p_h = harvested_power(beta, cfg.replace(alpha=alpha))
    print(f"alpha={alpha:.1f}  P_h at mean gain = {p_h * 1e9:8.3f} nW")

# Nothing reaches the harvester when gamma = 0.
print(harvested_power(beta, SystemConfig(gamma=0.0)))
