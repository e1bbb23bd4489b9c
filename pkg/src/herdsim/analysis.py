"""Stationary-density and spectral estimators plus power-law exponent fits.

The two observables of interest are the stationary probability density of a
positive quantity (log-binned, suited to power-law tails) and the one-sided
power spectral density (segment-averaged periodogram).  Exponents are
reported with the positive-sign convention: a density ~ x**-lam yields
``lam``, a spectrum ~ 1/f**beta yields ``beta``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateHistogramError
from .series import TimeSeries


@dataclass
class HistogramEstimate:
    """Log-binned density estimate: probability per unit value in each bin."""

    edges: np.ndarray
    densities: np.ndarray
    sample_count: int

    @property
    def centers(self):
        """Geometric bin centers (natural abscissa on log-log axes)."""
        return np.sqrt(self.edges[:-1] * self.edges[1:])

    @property
    def widths(self):
        return np.diff(self.edges)

    @property
    def covered_mass(self):
        return float(np.sum(self.densities * self.widths))


@dataclass
class SpectrumEstimate:
    """One-sided PSD: integrated over frequency it matches the variance."""

    frequencies: np.ndarray
    psd: np.ndarray
    segment_count: int
    dt: float


@dataclass
class PowerLawFit:
    """Least-squares exponent in log-log coordinates (reported positive)."""

    exponent: float
    stderr: float
    fit_range: tuple
    residual_rms: float


@dataclass
class TailEstimate:
    """Hill estimate of a density tail exponent (PDF convention)."""

    exponent: float
    stderr: float
    k_used: int


def pdf_log_binned(samples, n_bins=60) -> HistogramEstimate:
    """Log-binned density of positive samples.

    Densities are normalized so that sum(density * bin_width) equals the
    fraction of samples inside the covered range (here: all of them, since
    the edges span the sample extremes).
    """
    samples = np.asarray(samples, dtype=float).ravel()
    if samples.size < 1000:
        raise ValueError("need at least 1000 samples")
    if np.any(samples <= 0):
        raise ValueError("samples must be positive")
    lo, hi = samples.min(), samples.max()
    if lo == hi:
        raise DegenerateHistogramError("all samples identical")
    edges = np.logspace(np.log10(lo), np.log10(hi), n_bins + 1)
    edges[0], edges[-1] = lo, hi
    counts, edges = np.histogram(samples, bins=edges)
    densities = counts / (samples.size * np.diff(edges))
    return HistogramEstimate(edges=edges, densities=densities, sample_count=samples.size)


def psd_welch(series, segment_count=16) -> SpectrumEstimate:
    """Segment-averaged one-sided periodogram of a single-column series.

    Non-overlapping rectangular windows with per-segment mean removal; the
    estimator stays transparent (no taper) because power-law slopes over
    decades are insensitive to the window choice.
    """
    if isinstance(series, TimeSeries):
        if series.values.shape[1] != 1:
            raise ValueError("psd_welch expects a single-column series")
        x = series.values[:, 0]
        dt = series.dt
    else:
        raise TypeError("psd_welch expects a TimeSeries")
    seg_len = x.size // segment_count
    if seg_len < 32:
        raise ValueError(
            f"series too short: {x.size} samples for {segment_count} segments"
        )
    segs = x[: segment_count * seg_len].reshape(segment_count, seg_len)
    segs = segs - segs.mean(axis=1, keepdims=True)
    spec = np.fft.rfft(segs, axis=1)
    # two-sided periodogram dt/M |X_k|^2, folded to one side
    pxx = (dt / seg_len) * np.abs(spec) ** 2
    pxx = pxx.mean(axis=0)
    freqs = np.fft.rfftfreq(seg_len, d=dt)
    onesided = 2.0 * pxx[1:]
    if seg_len % 2 == 0:
        onesided[-1] /= 2.0  # Nyquist bin is not duplicated
    return SpectrumEstimate(
        frequencies=freqs[1:], psd=onesided, segment_count=segment_count, dt=dt
    )


def fit_power_law(x, y, x_range) -> PowerLawFit:
    """Least-squares slope in log-log coordinates over ``x_range``.

    The exponent is the negated slope, so a decaying power law reports a
    positive number.  Requires at least five strictly positive points in
    range.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    lo, hi = x_range
    mask = (x >= lo) & (x <= hi) & (x > 0) & (y > 0)
    if mask.sum() < 5:
        raise ValueError("need at least 5 positive points inside the fit range")
    lx = np.log(x[mask])
    ly = np.log(y[mask])
    n = lx.size
    a = np.vstack([lx, np.ones(n)]).T
    (slope, intercept), *_ = np.linalg.lstsq(a, ly, rcond=None)
    resid = ly - (slope * lx + intercept)
    rms = float(np.sqrt(np.mean(resid**2)))
    denom = np.sum((lx - lx.mean()) ** 2)
    stderr = float(np.sqrt(np.sum(resid**2) / max(n - 2, 1) / denom))
    return PowerLawFit(
        exponent=float(-slope), stderr=stderr, fit_range=(lo, hi), residual_rms=rms
    )


def default_pdf_fit_range(samples):
    """Default tail-fit window for density fits: [3*median, 99.9th pct]."""
    samples = np.asarray(samples, dtype=float)
    return 3.0 * float(np.median(samples)), float(np.percentile(samples, 99.9))


def hill_tail_exponent(samples, k) -> TailEstimate:
    """Hill estimator of the density tail exponent over the top-k statistics.

    The raw Hill statistic estimates the tail index of the survival function;
    the reported exponent adds 1 to convert to the density convention
    (density ~ x**-exponent).  Standard error is exponent/sqrt(k).
    """
    samples = np.asarray(samples, dtype=float).ravel()
    if np.any(samples <= 0):
        raise ValueError("samples must be positive")
    n = samples.size
    if not 0 < k < n / 10:
        raise ValueError("need k < n/10 order statistics")
    top = np.sort(samples)[-(k + 1):]
    gamma = np.mean(np.log(top[1:]) - np.log(top[0]))
    ccdf_index = 1.0 / gamma
    exponent = ccdf_index + 1.0
    return TailEstimate(
        exponent=float(exponent), stderr=float(exponent / np.sqrt(k)), k_used=k
    )


def hill_is_stable(samples, k_values, z=3.0) -> bool:
    """True when Hill estimates agree across k within z combined errors.

    Genuine power tails give k-independent estimates; light tails (e.g.
    exponential) drift with k and are flagged as unstable.
    """
    estimates = [hill_tail_exponent(samples, k) for k in k_values]
    for i in range(len(estimates)):
        for j in range(i + 1, len(estimates)):
            a, b = estimates[i], estimates[j]
            if abs(a.exponent - b.exponent) > z * np.hypot(a.stderr, b.stderr):
                return False
    return True


def ks_distance(samples, cdf) -> float:
    """Supremum gap between the empirical CDF and an analytic CDF."""
    samples = np.asarray(samples, dtype=float).ravel()
    n = samples.size
    if n < 100:
        raise ValueError("need at least 100 samples")
    xs = np.sort(samples)
    f = np.asarray(cdf(xs), dtype=float)
    grid = np.arange(1, n + 1) / n
    d_plus = np.max(grid - f)
    d_minus = np.max(f - (grid - 1.0 / n))
    return float(max(d_plus, d_minus))
