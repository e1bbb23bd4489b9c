#!/usr/bin/env python3
"""Power-law statistics of the 1-D multiplicative-noise family.

The family dx = (eta - lam/2) x^(2 eta - 1) dt + x^eta dW, kept on a
reflecting interval, has a stationary density ~ x^-lam and a spectrum
~ 1/f^beta with beta = 1 + (lam - 3) / (2 (eta - 1)).  This script
simulates one member, estimates both exponents and compares them with the
closed-form prediction.

Run:  python demos/01_power_law_family.py   (writes demo_power_law.png)
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

import herdsim as hs

ALPHA, EPS2 = 1.0, 2.0
pred = hs.predict_exponents(ALPHA, EPS2)
print(f"clock exponent alpha={ALPHA}, idiosyncratic rate eps2={EPS2}")
print(f"predicted: eta={pred.eta}, density exponent={pred.lam}, spectrum exponent={pred.beta}")

# simulate a small ensemble on [0.1, 1000] with reflecting ends
system = hs.general_class_system(pred.eta, pred.lam, 0.1, 1000.0)
cfg = hs.IntegratorConfig(
    t_end=1500.0, sample_dt=0.01, seed=7, initial=np.array([0.3]),
    kappa=0.15, max_dt=0.01,
)
paths = hs.simulate_paths(system, cfg, n_paths=8)
paths = paths[int(0.1 * len(paths)):]  # discard burn-in
xs = paths[:, :, 0].ravel()
print(f"simulated {xs.size} samples over {paths.shape[1]} paths")

# density estimate and tail fit
hist = hs.pdf_log_binned(xs, n_bins=60)
pdf_fit = hs.fit_power_law(hist.centers, hist.densities, (0.3, 6.0))
print(f"density exponent fit: {pdf_fit.exponent:.3f} +- {pdf_fit.stderr:.3f}")

# spectrum averaged over paths
psds = []
for j in range(paths.shape[1]):
    ts = hs.TimeSeries(0.0, cfg.sample_dt, paths[:, j, 0])
    est = hs.psd_welch(ts, segment_count=len(ts.values) // 2**14)
    psds.append(est.psd)
freqs, spectrum = est.frequencies, np.mean(psds, axis=0)
psd_fit = hs.fit_power_law(freqs, spectrum, (0.1, 3.2))
print(f"spectrum exponent fit: {psd_fit.exponent:.3f} +- {psd_fit.stderr:.3f}")

fig, axes = plt.subplots(1, 2, figsize=(11, 4))
ax = axes[0]
ax.loglog(hist.centers, hist.densities, "o", ms=3, label="simulated")
ref = hist.centers ** (-pred.lam)
ref *= hist.densities[10] / ref[10]
ax.loglog(hist.centers, ref, "--", label=f"slope -{pred.lam:g}")
ax.set_xlabel("x")
ax.set_ylabel("density")
ax.set_title(f"stationary density (fit {pdf_fit.exponent:.2f})")
ax.legend()

ax = axes[1]
ax.loglog(freqs, spectrum, lw=0.8, label="simulated")
ref = freqs ** (-pred.beta)
mid = np.searchsorted(freqs, 0.5)
ref *= spectrum[mid] / ref[mid]
ax.loglog(freqs, ref, "--", label=f"slope -{pred.beta:g}")
ax.set_xlabel("f")
ax.set_ylabel("S(f)")
ax.set_title(f"power spectrum (fit {psd_fit.exponent:.2f})")
ax.legend()

fig.tight_layout()
fig.savefig("demo_power_law.png", dpi=130)
print("wrote demo_power_law.png")
