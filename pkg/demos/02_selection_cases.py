"""
Relay selection and the four operating cases
=============================================

Run the selection procedure on random realizations and tally which
phase-2 case each trial lands in, then build a few realizations by hand.
"""

import collections

import numpy as np

from d2drelay import Case, SystemConfig, draw_channels, run_trial

cfg = SystemConfig(n_pairs=3, alpha=0.3)
rng = np.random.default_rng(1)

tally = collections.Counter()
for _ in range(20_000):
    res = run_trial(draw_channels(cfg, rng), cfg)
    tally[res.outcome.operating_case] += 1
for case in Case:
    print(f"{case.name:16s} {tally[case]:6d}")

# A strong first pair on every link relays for the CU and its receiver
# cancels x_c (case 2).
strong = np.ones((3, 4))
print(run_trial(strong, cfg))

# Kill phase-1 decoding everywhere: nobody relays, the best D2D link
# transmits on its own (case 1) and the CU is in outage.
weak = strong.copy()
weak[:, 0] = 1e-12
print(run_trial(weak, cfg))

# Past alpha = 1 - delta (0.5 here) the CU rate can never reach its target,
# however good the channels are.
print(run_trial(strong * 1e6, cfg.replace(alpha=0.6)).outcome.operating_case)
