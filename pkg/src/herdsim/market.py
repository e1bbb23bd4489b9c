"""Financial observables of the three-state model and return synthesis.

The relative log-price follows from the balance of fundamentalist and
chartist excess demand in the large-population limit,

    p = r0_bar * xi * (1 - n_f) / n_f,

and the window-T return is the price change over the window.  The
double-stochastic return model replaces the Gaussian instantaneous return of
a geometric Brownian price with a heavy-tailed draw whose scale tracks the
smoothed log-price:

    r_t(T) = heavy_tail_sample(scale = (b + a*|MA(p, T)(t)|) * sqrt(T), lam)

so returns mix the endogenous herding dynamics (through the moving average)
with exogenous instantaneous noise of tail exponent ``lam``.
"""

from dataclasses import dataclass

import numpy as np

from .kinetics import DELTA
from .series import TimeSeries


@dataclass(frozen=True)
class MarketParams:
    """Return-synthesis parameters.

    r0_bar:   relative chartist impact on the log-price.
    a, b:     endogenous coupling and exogenous noise scale of the linear
              scale law r0 = b + a*|x|; b/a measures the exogenous share.
    lambda_q: tail exponent of the heavy-tailed instantaneous noise (> 3 so
              the variance exists).
    window_T: return window in scaled time.
    mu, sigma: drift and volatility of the Gaussian (geometric Brownian)
              reference return.
    """

    a: float
    b: float
    lambda_q: float
    window_T: float
    r0_bar: float = 1.0
    mu: float = 0.0
    sigma: float = 0.0

    def __post_init__(self):
        if not self.r0_bar > 0:
            raise ValueError("r0_bar must be positive")
        if self.a < 0 or self.b < 0:
            raise ValueError("a and b must be >= 0")
        if not self.lambda_q > 3:
            raise ValueError("lambda_q must exceed 3 (finite variance)")
        if not self.window_T > 0:
            raise ValueError("window_T must be positive")
        if self.sigma < 0:
            raise ValueError("sigma must be >= 0")


def log_price(n_f, xi, r0_bar=1.0):
    """Relative log-price r0_bar * xi * (1-n_f)/n_f; requires n_f >= DELTA."""
    n_f = np.asarray(n_f, dtype=float)
    xi = np.asarray(xi, dtype=float)
    if np.any(n_f < DELTA):
        raise ValueError("n_f below the boundary floor")
    # r0_bar multiplies last so rescaling the impact factor rescales the
    # price exactly
    p = r0_bar * (xi * (1.0 - n_f) / n_f)
    return p if p.ndim else float(p)


def log_price_series(ts: TimeSeries, r0_bar=1.0) -> TimeSeries:
    """Log-price series from a (n_f, xi) series; n_f is floored at DELTA."""
    n_f = np.maximum(ts.column("n_f"), DELTA)
    p = log_price(n_f, ts.column("xi"), r0_bar)
    return TimeSeries(t0=ts.t0, dt=ts.dt, values=p, columns=("p",))


def endogenous_return(p_now, p_lagged):
    """Windowed return from two log-prices: p_now - p_lagged."""
    return p_now - p_lagged


def endogenous_return_series(price_ts: TimeSeries, window_T) -> TimeSeries:
    """Price change over consecutive non-overlapping windows of length T."""
    m = _window_samples(price_ts, window_T)
    p = price_ts.values[:, 0]
    ends = np.arange(m, p.size, m)
    r = p[ends] - p[ends - m]
    return TimeSeries(
        t0=price_ts.t0 + m * price_ts.dt,
        dt=m * price_ts.dt,
        values=r,
        columns=("r",),
    )


def gaussian_return(mkt: MarketParams, T, rng, size=None):
    """Gaussian window-T return of a geometric Brownian price.

    Mean (mu - sigma**2/2)*T, variance sigma**2*T.  ``size=None`` draws one.
    """
    if not T > 0:
        raise ValueError("T must be positive")
    mean = (mkt.mu - 0.5 * mkt.sigma**2) * T
    draw = rng.standard_normal(size)
    return mean + mkt.sigma * np.sqrt(T) * draw


def r0_scale(x, a, b):
    """Linear noise-scale law b + a*|x|; b is the pure exogenous floor."""
    if a < 0 or b < 0:
        raise ValueError("a and b must be >= 0")
    return b + a * np.abs(x)


def q_gaussian_sample(scale, lambda_q, rng, size=None):
    """Symmetric heavy-tailed draw with density ~ [1 + r**2/(nu*scale**2)]**(-lambda_q/2).

    With nu = lambda_q - 1 this is ``scale`` times a Student-t variate with
    nu degrees of freedom (the normal/chi ratio construction); the density
    tail decays with exponent lambda_q.  scale = 0 degenerates to 0.
    """
    if not lambda_q > 3:
        raise ValueError("lambda_q must exceed 3 (finite variance)")
    nu = lambda_q - 1.0
    t = rng.standard_t(nu, size=size)
    return scale * t


def _window_samples(ts: TimeSeries, window_T):
    """Number of grid samples per window; the window must align to the grid."""
    if window_T < ts.dt * (1.0 - 1e-9):
        raise ValueError("window shorter than one sample")
    m = int(round(window_T / ts.dt))
    if abs(m * ts.dt - window_T) > 1e-6 * window_T:
        raise ValueError("window_T must be an integer multiple of the grid step")
    return m


def moving_average(ts: TimeSeries, window_T) -> TimeSeries:
    """Trailing mean over the last window_T of time (Riemann-sum mean).

    Each output averages the m = window_T/dt samples ending at its own time,
    so a window of exactly one sample is the identity.  Output starts once a
    full window is available.
    """
    m = _window_samples(ts, window_T)
    if m > len(ts):
        raise ValueError("series shorter than the averaging window")
    windows = np.lib.stride_tricks.sliding_window_view(ts.values, m, axis=0)
    means = windows.mean(axis=-1)
    return TimeSeries(
        t0=ts.t0 + (m - 1) * ts.dt, dt=ts.dt, values=means, columns=ts.columns
    )


def synthesize_returns(price_ts: TimeSeries, mkt: MarketParams, rng) -> TimeSeries:
    """Double-stochastic returns at non-overlapping window ends.

    At each window end t the return is a heavy-tailed draw with scale
    (b + a*|MA(p, T)(t)|) * sqrt(T); sampling windows back-to-back keeps the
    draws conditionally independent given the price path.
    """
    T = mkt.window_T
    m = _window_samples(price_ts, T)
    if price_ts.duration < 2.0 * T:
        raise ValueError("price series must cover at least two windows")
    p = price_ts.values[:, 0]
    ends = np.arange(m, p.size, m)
    ma = moving_average(price_ts, T).values[:, 0]
    # moving_average output index j corresponds to price index j + m - 1
    ma_at_ends = ma[ends - (m - 1)]
    scales = r0_scale(ma_at_ends, mkt.a, mkt.b) * np.sqrt(T)
    r = q_gaussian_sample(scales, mkt.lambda_q, rng, size=ends.size)
    return TimeSeries(
        t0=price_ts.t0 + m * price_ts.dt,
        dt=m * price_ts.dt,
        values=r,
        columns=("r",),
    )
