#!/usr/bin/env python3
"""Three agent groups: fundamentalists against two chartist camps.

The macroscopic state is the fundamentalist fraction n_f and the chartist
mood xi; a state-dependent event clock accelerates everything when chartists
dominate and disagree.  The log-price p = xi (1 - n_f) / n_f inherits heavy
bursts from excursions to small n_f.

Run:  python demos/03_three_state_market.py   (writes demo_three_state.png)
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

import herdsim as hs

params = hs.ThreeStateParams(eps_cf=0.5, eps_fc=2.0, eps_cc=3.5, big_h=10.0, alpha=2.0)
print(f"zero-drift fixed point n_f = {params.nf_fixed_point:.3f}")

cfg = hs.IntegratorConfig(
    t_end=30.0, sample_dt=0.002, seed=11,
    initial=np.array([params.nf_fixed_point, 0.0]), kappa=0.2,
)
ts = hs.integrate(hs.three_state_system(params), cfg)
price = hs.log_price_series(ts)

fig, axes = plt.subplots(3, 1, figsize=(9, 7), sharex=True)
axes[0].plot(ts.t, ts.column("n_f"), lw=0.5)
axes[0].set_ylabel("n_f")
axes[1].plot(ts.t, ts.column("xi"), lw=0.5, color="tab:orange")
axes[1].set_ylabel("mood xi")
axes[2].plot(price.t, price.column("p"), lw=0.5, color="tab:red")
axes[2].set_ylabel("log-price p")
axes[2].set_xlabel("scaled time")
fig.tight_layout()
fig.savefig("demo_three_state.png", dpi=130)

burn = int(0.1 * len(ts))
nf, xi = ts.values[burn:, 0], ts.values[burn:, 1]
print(f"n_f: mean {nf.mean():.3f}, min {nf.min():.4f}")
print(f"|p|: median {np.median(np.abs(price.values[burn:, 0])):.3f}, "
      f"max {np.abs(price.values[burn:, 0]).max():.1f}")
print("wrote demo_three_state.png")
