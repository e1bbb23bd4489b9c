"""Transition rates, drifts, diffusions and exponent laws of the herding models.

This module is the single source of model mathematics.  Everything here is a
pure function of its arguments; the simulators in :mod:`herdsim.abm` and
:mod:`herdsim.sde` only consume these formulas.

Two-state model
    ``N`` agents hold opinion 1 or 2.  A per-agent switch rate combines an
    idiosyncratic term ``sigma`` with a herding term proportional to the
    occupancy of the destination state.  A state-dependent event clock
    ``tau(x) = ((1-x)/x)**alpha`` (unity for ``alpha = 0``) accelerates events
    when the second state dominates:

        rate_1to2 = sigma1 + N*h*x / tau(x)
        rate_2to1 = (sigma2 + N*h*(1-x)) / tau(x)

    Note the asymmetric placement: only ``sigma1`` sits outside the clock.
    The matching macroscopic SDE in scaled time ``t_s = h*t`` is

        dx = [eps1*(1-x) - eps2*x/tau(x)] dt_s + sqrt(2*x*(1-x)/tau(x)) dW

    with ``eps_i = sigma_i / h``.

Three-state market model
    State 1 holds fundamentalists, states 2 and 3 pessimistic and optimistic
    chartists.  With symmetric herding, identical optimist/pessimist behavior
    and a chartist-chartist speed-up ``H``, the macroscopic variables are the
    fundamentalist fraction ``n_f`` and the chartist mood
    ``xi = (n_o - n_p)/(n_o + n_p)``, evolving independently in scaled time:

        dn_f = [(1-n_f)*eps_cf/tau - n_f*eps_fc] dt_s
               + sqrt(2*n_f*(1-n_f)/tau) dW1
        dxi  = -2*H*eps_cc*xi/tau dt_s + sqrt(2*H*(1-xi**2)/tau) dW2
        tau  = 1 / (1 + |xi*(1-n_f)/n_f|**alpha)

    The clock saturates to 1 whenever chartists vanish, so fluctuations die
    out together with the chartist population.

A 1-D power-law family ties both models to their asymptotic statistics:

    dx = (eta - lam/2) * x**(2*eta-1) dt_s + x**eta dW

generates a stationary density ~ x**(-lam) and a spectrum ~ 1/f**beta with
``beta = 1 + (lam-3)/(2*(eta-1))``; the two-state model maps onto it with
``eta = (3+alpha)/2`` and ``lam = eps2 + alpha + 1``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import UndefinedMoodError

#: Boundary guard: fractions are clamped to [DELTA, 1-DELTA] (mood to
#: [-1+DELTA, 1-DELTA]) before evaluating the clock or a diffusion, because
#: the clock diverges at the boundary and discrete integrators can overshoot.
#: Diffusions vanish at the true boundaries, so the clamp is statistically
#: invisible.
DELTA = 1e-6


# ---------------------------------------------------------------------------
# parameter bundles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TwoStateParams:
    """Scaled parameters of the two-state model.

    epsilon1, epsilon2
        Dimensionless idiosyncratic rates, ``sigma_i / h``.
    h
        Herding intensity (1/time); fixes the physical time unit only.
    n_agents
        Population size ``N``.
    alpha
        Event-clock feedback exponent, >= 0.  ``alpha = 0`` disables the
        clock entirely.
    """

    epsilon1: float
    epsilon2: float
    h: float
    n_agents: int
    alpha: float

    def __post_init__(self):
        # zero idiosyncratic rates are admissible for the jump process (they
        # make boundary states absorbing); stationary-density claims assume
        # strictly positive values
        if self.epsilon1 < 0:
            raise ValueError("epsilon1 must be >= 0")
        if self.epsilon2 < 0:
            raise ValueError("epsilon2 must be >= 0")
        if not self.h > 0:
            raise ValueError("h must be positive")
        if int(self.n_agents) != self.n_agents or self.n_agents < 2:
            raise ValueError("n_agents must be an integer >= 2")
        if self.alpha < 0:
            raise ValueError("alpha must be >= 0")

    @property
    def sigma1(self):
        return self.epsilon1 * self.h

    @property
    def sigma2(self):
        return self.epsilon2 * self.h

    @classmethod
    def from_raw(cls, sigma1, sigma2, h, n_agents, alpha):
        """Build from unscaled per-agent rates; scaled values stored once."""
        return cls(sigma1 / h, sigma2 / h, h, n_agents, alpha)


@dataclass(frozen=True)
class ThreeStateParams:
    """Scaled parameters of the three-state market model.

    eps_cf, eps_fc, eps_cc
        Dimensionless idiosyncratic rates: chartist->fundamentalist,
        fundamentalist->chartist and chartist<->chartist.  ``eps_cc`` is
        already scaled by the chartist speed-up (``sigma_cc / (H*h1)``).
    big_h
        Chartist-chartist speed-up ``H >= 1``.
    alpha
        Event-clock feedback exponent, >= 0.
    h1
        Base herding rate in 1/seconds; used only to convert scaled time to
        physical time at serialization.
    """

    eps_cf: float
    eps_fc: float
    eps_cc: float
    big_h: float
    alpha: float
    h1: float = 1.0

    def __post_init__(self):
        for name in ("eps_cf", "eps_fc", "eps_cc"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if not self.big_h >= 1:
            raise ValueError("big_h must be >= 1")
        if self.alpha < 0:
            raise ValueError("alpha must be >= 0")
        if not self.h1 > 0:
            raise ValueError("h1 must be positive")

    # Unscaled rates, derived once from the stored scaled parameters.
    @property
    def sigma_cf(self):
        return self.eps_cf * self.h1

    @property
    def sigma_fc(self):
        return self.eps_fc * self.h1

    @property
    def sigma_cc(self):
        return self.eps_cc * self.big_h * self.h1

    def raw_rates(self):
        return RawRates(
            sigma_12=self.sigma_fc / 2.0,
            sigma_13=self.sigma_fc / 2.0,
            sigma_21=self.sigma_cf,
            sigma_23=self.sigma_cc,
            sigma_31=self.sigma_cf,
            sigma_32=self.sigma_cc,
            h_12=self.h1,
            h_13=self.h1,
            h_23=self.big_h * self.h1,
        )

    @property
    def nf_fixed_point(self):
        """Zero-drift fundamentalist fraction (with xi = 0)."""
        return self.eps_cf / (self.eps_cf + self.eps_fc)


@dataclass(frozen=True)
class RawRates:
    """Unscaled three-state rate table.

    ``sigma_ji`` is the idiosyncratic rate of the j -> i move, ``h_ji`` the
    (symmetric) herding intensity of the pair; state 1 = fundamentalist,
    2 = pessimist, 3 = optimist.
    """

    sigma_12: float
    sigma_13: float
    sigma_21: float
    sigma_23: float
    sigma_31: float
    sigma_32: float
    h_12: float
    h_13: float
    h_23: float


@dataclass(frozen=True)
class MacroState:
    """Macroscopic point of the three-state system: (n_f, xi)."""

    n_f: float
    xi: float

    def __post_init__(self):
        if not 0 <= self.n_f <= 1:
            raise ValueError("n_f must lie in [0, 1]")
        if not -1 <= self.xi <= 1:
            raise ValueError("xi must lie in [-1, 1]")

    @property
    def n_o(self):
        return (1.0 - self.n_f) * (1.0 + self.xi) / 2.0

    @property
    def n_p(self):
        return (1.0 - self.n_f) * (1.0 - self.xi) / 2.0


@dataclass(frozen=True)
class ExponentPrediction:
    """Power-law exponent triple of the 1-D family.

    eta: multiplicativity exponent of the noise term.
    lam: stationary density exponent (density ~ x**-lam).
    beta: spectrum exponent (S(f) ~ 1/f**beta).
    """

    eta: float
    lam: float
    beta: float


# ---------------------------------------------------------------------------
# two-state model
# ---------------------------------------------------------------------------


def _check_fraction(x, name="x"):
    x = np.asarray(x, dtype=float)
    if np.any(x < 0) or np.any(x > 1):
        raise ValueError(f"{name} outside [0, 1]")
    return x


def tau_two_state(x, alpha):
    """Event clock ((1-x)/x)**alpha, with x clamped away from {0, 1}.

    alpha = 0 returns exactly 1 (clock disabled), so downstream formulas
    reduce exactly to their constant-rate versions.
    """
    x = np.asarray(x, dtype=float)
    if alpha == 0:
        return np.ones_like(x) if x.ndim else 1.0
    xc = np.clip(x, DELTA, 1.0 - DELTA)
    tau = ((1.0 - xc) / xc) ** alpha
    return tau if x.ndim else float(tau)


def two_state_rates(x, p: TwoStateParams):
    """Per-agent transition rates (state1->2, state2->1) at fraction x.

    Only sigma1 escapes the clock; sigma2 and both herding terms are
    accelerated by 1/tau(x).
    """
    x = _check_fraction(x)
    tau = tau_two_state(x, p.alpha)
    eta1 = p.sigma1 + p.n_agents * p.h * x / tau
    eta2 = (p.sigma2 + p.n_agents * p.h * (1.0 - x)) / tau
    return eta1, eta2


def two_state_drift_diffusion(x, p: TwoStateParams):
    """Scaled-time drift and diffusion of the two-state fraction.

    drift = eps1*(1-x) - eps2*x/tau(x), diffusion = sqrt(2*x*(1-x)/tau(x)).
    The diffusion vanishes exactly at x in {0, 1}.
    """
    x = _check_fraction(x)
    tau = tau_two_state(x, p.alpha)
    drift = p.epsilon1 * (1.0 - x) - p.epsilon2 * x / tau
    diffusion = np.sqrt(2.0 * x * (1.0 - x) / tau)
    return drift, diffusion


def y_transform(x):
    """Map the fraction x in [0, 1] to y = x/(1-x) in [0, inf].

    x = 1 maps to inf (the transform's divergence is reported, not raised).
    """
    x = _check_fraction(x)
    with np.errstate(divide="ignore"):
        y = np.where(x == 1.0, np.inf, x / (1.0 - x))
    return y if np.asarray(x).ndim else float(y)


def y_inverse(y):
    """Inverse of :func:`y_transform`: x = y/(1+y); inf maps back to 1."""
    y = np.asarray(y, dtype=float)
    if np.any(y < 0):
        raise ValueError("y must be >= 0")
    with np.errstate(invalid="ignore"):
        x = np.where(np.isinf(y), 1.0, y / (1.0 + y))
    return x if y.ndim else float(x)


def general_class_terms(x, eta, lam):
    """Drift and diffusion of the 1-D power-law family at x > 0.

    drift = (eta - lam/2) * x**(2*eta - 1), diffusion = x**eta.
    """
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("x must be positive")
    drift = (eta - lam / 2.0) * x ** (2.0 * eta - 1.0)
    diffusion = x**eta
    if x.ndim:
        return drift, diffusion
    return float(drift), float(diffusion)


def predict_exponents(alpha, eps2) -> ExponentPrediction:
    """Exponent triple implied by the two-state model's asymptotic mapping.

    eta = (3+alpha)/2, lam = eps2 + alpha + 1, beta = 1 + (lam-3)/(2*(eta-1)).
    Valid for alpha >= 0 (eta > 1, so beta is finite).
    """
    if alpha < 0:
        raise ValueError("alpha must be >= 0")
    eta = (3.0 + alpha) / 2.0
    lam = eps2 + alpha + 1.0
    beta = 1.0 + (lam - 3.0) / (2.0 * (eta - 1.0))
    return ExponentPrediction(eta=eta, lam=lam, beta=beta)


# ---------------------------------------------------------------------------
# three-state model
# ---------------------------------------------------------------------------


def tau_three_state(n_f, xi, alpha):
    """Event clock of the three-state model, in (0, 1].

    tau = 1 / (1 + |xi*(1-n_f)/n_f|**alpha); equals 1 when xi = 0, when
    n_f = 1, or for alpha = 0 (clock disabled).  n_f must be positive
    (callers clamp to the DELTA floor first).
    """
    n_f = np.asarray(n_f, dtype=float)
    xi = np.asarray(xi, dtype=float)
    if np.any(n_f <= 0):
        raise ValueError("tau diverges at n_f = 0; clamp n_f to >= DELTA first")
    if alpha == 0:
        out = np.ones(np.broadcast(n_f, xi).shape)
        return out if out.ndim else 1.0
    base = np.abs((1.0 - n_f) / n_f * xi)
    tau = 1.0 / (1.0 + base**alpha)
    return tau if tau.ndim else float(tau)


def mood(n_o, n_p):
    """Normalized optimist-pessimist imbalance (n_o - n_p)/(n_o + n_p).

    Raises UndefinedMoodError when there are no chartists; pipeline callers
    substitute 0 in that case (no chartists means no meaningful mood, and the
    value is dynamically irrelevant since the chartist fraction is zero).
    """
    if n_o < 0 or n_p < 0:
        raise ValueError("populations must be non-negative")
    total = n_o + n_p
    if total == 0:
        raise UndefinedMoodError("mood undefined: no chartists present")
    return (n_o - n_p) / total


def mood_from_counts(n_o, n_p):
    """Vectorized mood with the zero-chartist convention xi = 0."""
    n_o = np.asarray(n_o, dtype=float)
    n_p = np.asarray(n_p, dtype=float)
    total = n_o + n_p
    safe = np.where(total > 0, total, 1.0)
    return np.where(total > 0, (n_o - n_p) / safe, 0.0)


def three_state_rates(pop, raw: RawRates):
    """Per-agent rates of the six moves, keyed (from_state, to_state).

    rate(j -> i) = sigma_ji + N * h_ji * x_i, with the occupancy of the
    destination state driving the herding term.  States: 1 fundamentalist,
    2 pessimist, 3 optimist.
    """
    x1, x2, x3 = np.asarray(pop.counts, dtype=float) / pop.n_total
    n = pop.n_total
    return {
        (1, 2): raw.sigma_12 + n * raw.h_12 * x2,
        (1, 3): raw.sigma_13 + n * raw.h_13 * x3,
        (2, 1): raw.sigma_21 + n * raw.h_12 * x1,
        (2, 3): raw.sigma_23 + n * raw.h_23 * x3,
        (3, 1): raw.sigma_31 + n * raw.h_13 * x1,
        (3, 2): raw.sigma_32 + n * raw.h_23 * x2,
    }


def fokker_planck_coefficients(x1, x2, raw: RawRates):
    """Drift vector and diffusion matrix of the three-state master equation.

    Returns (D1, D2) for the reduced coordinates (x1, x2) with
    x3 = 1 - x1 - x2; D2 is symmetric and positive semidefinite on the
    simplex.
    """
    if x1 < 0 or x2 < 0 or x1 + x2 > 1:
        raise ValueError("(x1, x2) outside the population simplex")
    x3 = 1.0 - x1 - x2
    d1 = np.array(
        [
            raw.sigma_21 * x2 + raw.sigma_31 * x3 - (raw.sigma_12 + raw.sigma_13) * x1,
            raw.sigma_12 * x1 + raw.sigma_32 * x3 - (raw.sigma_21 + raw.sigma_23) * x2,
        ]
    )
    cross = -raw.h_12 * x1 * x2
    d2 = np.array(
        [
            [raw.h_12 * x1 * x2 + raw.h_13 * x1 * x3, cross],
            [cross, raw.h_12 * x1 * x2 + raw.h_23 * x2 * x3],
        ]
    )
    return d1, d2


def three_state_drift_diffusion(n_f, xi, p: ThreeStateParams):
    """Scaled-time drift and (diagonal) diffusion of (n_f, xi).

    The two noise channels are independent:

        drift_nf = (1-n_f)*eps_cf/tau - n_f*eps_fc
        diff_nf  = sqrt(2*n_f*(1-n_f)/tau)
        drift_xi = -2*H*eps_cc*xi/tau
        diff_xi  = sqrt(2*H*(1-xi**2)/tau)

    Accepts scalars or arrays; results are stacked on the last axis.
    """
    n_f = np.asarray(n_f, dtype=float)
    xi = np.asarray(xi, dtype=float)
    inv_tau = 1.0 / tau_three_state(np.clip(n_f, DELTA, None), xi, p.alpha)
    shape = np.broadcast(n_f, xi).shape
    drift = np.empty(shape + (2,))
    diffusion = np.empty(shape + (2,))
    drift[..., 0] = (1.0 - n_f) * p.eps_cf * inv_tau - n_f * p.eps_fc
    drift[..., 1] = (-2.0 * p.big_h * p.eps_cc) * xi * inv_tau
    diffusion[..., 0] = np.sqrt(2.0 * n_f * (1.0 - n_f) * inv_tau)
    diffusion[..., 1] = np.sqrt(2.0 * p.big_h * (1.0 - xi * xi) * inv_tau)
    return drift, diffusion
