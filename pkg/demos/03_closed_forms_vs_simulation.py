"""
Closed-form outage against simulation
=====================================

Sweep the time-switching factor for N = 1, 2, 4 and overlay the closed
forms on the Monte Carlo estimates, for the cellular user and the D2D pair.
Saves ``outage_vs_alpha.png`` next to this script when matplotlib is present.
"""

from pathlib import Path

import numpy as np

from d2drelay import SystemConfig, alpha_bounds, sweep

TRIALS = 100_000
alphas = np.round(np.arange(0.05, 0.96, 0.05), 2).tolist()
base = SystemConfig(rho=0.75, r_ct=1.0, r_dt=1.0)
print("alpha bounds (cellular, d2d):", alpha_bounds(base))

curves = {n: sweep(base.replace(n_pairs=n), "alpha", alphas, TRIALS, seed=n) for n in (1, 2, 4)}

for n, curve in curves.items():
    print(f"\nN = {n}")
    print(" alpha   P_oC mc   corrected  literal    P_oD mc   closed form")
    for pt in curve.points:
        e = pt.estimate
        print(
            f" {pt.value:5.2f}  {e.p_oc_hat:8.5f}  {pt.p_oc_corrected:9.5f}  {pt.p_oc_literal:8.5f}"
            f"  {e.p_od_hat:8.5f}  {pt.p_od_analytic:9.5f}"
        )

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    raise SystemExit(0)

fig, (ax_c, ax_d) = plt.subplots(1, 2, figsize=(10, 4), sharex=True)
for n, curve in curves.items():
    mc_c = [pt.estimate.p_oc_hat for pt in curve.points]
    mc_d = [pt.estimate.p_od_hat for pt in curve.points]
    (line,) = ax_c.plot(alphas, [pt.p_oc_corrected for pt in curve.points], label=f"N={n}")
    ax_c.plot(alphas, mc_c, "o", color=line.get_color(), mfc="none")
    ax_d.plot(alphas, [pt.p_od_analytic for pt in curve.points], color=line.get_color(), label=f"N={n}")
    ax_d.plot(alphas, mc_d, "o", color=line.get_color(), mfc="none")
ax_c.set(title="cellular outage", xlabel="alpha", yscale="log")
ax_d.set(title="D2D outage", xlabel="alpha")
ax_c.legend()
out = Path(__file__).with_name("outage_vs_alpha.png")
fig.savefig(out, dpi=120, bbox_inches="tight")
print("saved", out)
