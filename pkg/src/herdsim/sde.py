"""Euler-Maruyama integration with boundary-aware adaptive stepping.

The herding SDEs carry multiplicative noise whose coefficients vary on the
scale of the distance to the domain boundary (powers of x, 1-x, 1-xi**2 and
the event clock).  The integrator therefore controls the step so that the
expected per-step displacement stays well below that local scale:

    dt = min(max_dt, kappa**2 / R),
    R  = max(|drift| / width, diffusion**2 / width**2),

with ``width`` the distance to the nearest *natural* bound of the system
(where the coefficients become singular) plus the DELTA guard.  For the
scale-free power-law family the natural domain is (0, inf) — the
user-supplied reflecting limits are artificial cut-offs in a region of
locally constant coefficients, so they do not enter the step control.

Boundary handling is reflection: the diffusion vanishes at the true
boundaries, so reflection preserves the stationary law while preventing
numeric escape.  States never leave the clamped domain.
"""

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import kinetics
from .errors import NumericFailure
from .kinetics import DELTA, ThreeStateParams, TwoStateParams
from .series import TimeSeries
from .streams import rng_stream


@dataclass
class SdeSystem:
    """Coefficient evaluators plus domain data for a 1- or 2-D system.

    drift, diffusion
        Vectorized callables mapping states of shape (..., dim) to
        coefficients of the same shape.  Diffusion is diagonal: one
        independent Wiener channel per dimension.
    domain_lo, domain_hi
        Reflecting bounds (already clamped by DELTA where the true boundary
        is singular).
    scale_lo, scale_hi
        Natural bounds used by the step control; default to the reflecting
        bounds.  Scale-free systems use (0, inf).
    coefficients
        Optional fused evaluator returning (drift, diffusion) in one call;
        the integration loop prefers it because both are needed per step.
        Defaults to calling the two evaluators separately.
    tau
        Optional event-clock evaluator for diagnostics; the clock is already
        folded into drift/diffusion.  None means the clock is identically 1.
    """

    dim: int
    drift: Callable
    diffusion: Callable
    domain_lo: np.ndarray
    domain_hi: np.ndarray
    scale_lo: Optional[np.ndarray] = None
    scale_hi: Optional[np.ndarray] = None
    coefficients: Optional[Callable] = None
    tau: Optional[Callable] = None
    columns: tuple = ("x",)

    def __post_init__(self):
        self.domain_lo = np.broadcast_to(
            np.asarray(self.domain_lo, dtype=float), (self.dim,)
        )
        self.domain_hi = np.broadcast_to(
            np.asarray(self.domain_hi, dtype=float), (self.dim,)
        )
        if np.any(self.domain_lo >= self.domain_hi):
            raise ValueError("domain_lo must be below domain_hi")
        if self.scale_lo is None:
            self.scale_lo = self.domain_lo
        if self.scale_hi is None:
            self.scale_hi = self.domain_hi
        self.scale_lo = np.broadcast_to(
            np.asarray(self.scale_lo, dtype=float), (self.dim,)
        )
        self.scale_hi = np.broadcast_to(
            np.asarray(self.scale_hi, dtype=float), (self.dim,)
        )
        if len(self.columns) != self.dim:
            raise ValueError("one column name per dimension required")
        if self.coefficients is None:
            drift, diffusion = self.drift, self.diffusion
            self.coefficients = lambda state: (drift(state), diffusion(state))


@dataclass(frozen=True)
class IntegratorConfig:
    """Step control, run length, sampling grid, seed and start point."""

    t_end: float
    sample_dt: float
    seed: int
    initial: np.ndarray
    kappa: float = 0.1
    max_dt: float = 0.01

    def __post_init__(self):
        if not 0 < self.kappa <= 1:
            raise ValueError("kappa must lie in (0, 1]")
        if not self.max_dt > 0:
            raise ValueError("max_dt must be positive")
        if not self.t_end > 0:
            raise ValueError("t_end must be positive")
        if not self.sample_dt > 0:
            raise ValueError("sample_dt must be positive")
        object.__setattr__(
            self, "initial", np.atleast_1d(np.asarray(self.initial, dtype=float))
        )


def reflect(state, lo, hi):
    """Fold states back into [lo, hi] by mirror reflection at the bounds."""
    state = np.asarray(state, dtype=float)
    for _ in range(64):
        below = state < lo
        above = state > hi
        if not (below.any() or above.any()):
            return state
        state = np.where(below, 2.0 * lo - state, state)
        state = np.where(above, 2.0 * hi - state, state)
    # pathological overshoot (many widths past the bound): give up and clip
    return np.clip(state, lo, hi)


def em_step(state, system: SdeSystem, dt, dw):
    """One Euler-Maruyama step followed by reflection into the domain.

    ``dw`` holds the Gaussian increments, standard normals already scaled by
    sqrt(dt); ``dt`` may be scalar or per-path of shape (..., 1).
    """
    a = system.drift(state)
    b = system.diffusion(state)
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        raise NumericFailure(None, "non-finite drift or diffusion")
    new = state + a * dt + b * dw
    return reflect(new, system.domain_lo, system.domain_hi)


def adaptive_dt(state, system: SdeSystem, cfg: IntegratorConfig):
    """Boundary-aware step size for the current state(s).

    Returns a scalar for a (dim,) state, or shape (n,) for (n, dim) states.
    """
    state = np.asarray(state, dtype=float)
    a = system.drift(state)
    b = system.diffusion(state)
    width = np.minimum(state - system.scale_lo, system.scale_hi - state) + DELTA
    with np.errstate(divide="ignore", invalid="ignore"):
        r = np.maximum(np.abs(a) / width, b * b / (width * width))
        r = r.max(axis=-1)
        dt = np.where(r > 0, cfg.kappa**2 / np.maximum(r, 1e-300), np.inf)
    dt = np.minimum(cfg.max_dt, dt)
    return float(dt) if dt.ndim == 0 else dt


def integrate(system: SdeSystem, cfg: IntegratorConfig, stream=0) -> TimeSeries:
    """Integrate a single trajectory, sampled on the uniform grid.

    Deterministic for a fixed (seed, stream); all samples lie inside the
    clamped domain.  Numeric failures propagate with the offending time
    attached.  Sweeps give each trajectory its own stream index.
    """
    values = simulate_paths(system, cfg, n_paths=1, stream=stream)
    return TimeSeries(
        t0=0.0, dt=cfg.sample_dt, values=values[:, 0, :], columns=system.columns
    )


def simulate_paths(system: SdeSystem, cfg: IntegratorConfig, n_paths: int, stream=0):
    """Integrate ``n_paths`` independent trajectories in lock-step.

    Returns samples of shape (n_grid, n_paths, dim).  Every path advances
    toward its own next sample time each sweep (steps are capped at the grid
    so samples land exactly on it).  One counter-based stream keyed by the
    seed drives the ensemble, so output is reproducible for a fixed
    (seed, n_paths) pair.
    """
    if cfg.initial.shape != (system.dim,):
        raise ValueError(
            f"initial state must have shape ({system.dim},), got {cfg.initial.shape}"
        )
    if np.any(cfg.initial < system.domain_lo) or np.any(
        cfg.initial > system.domain_hi
    ):
        raise ValueError("initial state outside the admissible domain")
    rng = rng_stream(cfg.seed, stream)
    n_grid = int(np.floor(cfg.t_end / cfg.sample_dt)) + 1
    state = np.tile(cfg.initial, (n_paths, 1))
    t_now = np.zeros(n_paths)
    next_k = np.ones(n_paths, dtype=np.int64)  # next grid index per path
    out = np.empty((n_grid, n_paths, system.dim))
    out[0] = state
    lo, hi = system.domain_lo, system.domain_hi
    scale_lo, scale_hi = system.scale_lo, system.scale_hi
    kappa_sq = cfg.kappa**2
    active = np.arange(n_paths)
    while active.size:
        sub = state[active]
        a, b = system.coefficients(sub)
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise NumericFailure(
                float(t_now[active].min()), "non-finite drift or diffusion"
            )
        # step control: displacement stays below kappa * (distance to the
        # natural bounds); same rule as adaptive_dt, fused with the step
        width = np.minimum(sub - scale_lo, scale_hi - sub) + DELTA
        r = np.maximum(np.abs(a) / width, b * b / (width * width)).max(axis=-1)
        with np.errstate(divide="ignore"):
            dt = np.minimum(cfg.max_dt, kappa_sq / r)
        lag = next_k[active] * cfg.sample_dt - t_now[active]
        capped = dt >= lag
        dt = np.where(capped, lag, dt)
        dw = rng.standard_normal(sub.shape) * np.sqrt(dt)[:, None]
        new = reflect(sub + a * dt[:, None] + b * dw, lo, hi)
        state[active] = new
        # land exactly on the grid (no float drift), record, move the pointer
        t_now[active] = np.where(capped, next_k[active] * cfg.sample_dt, t_now[active] + dt)
        hit = active[capped]
        if hit.size:
            out[next_k[hit], hit] = new[capped]
            next_k[hit] += 1
            if np.any(next_k[hit] >= n_grid):
                active = active[next_k[active] < n_grid]
    return out


# ---------------------------------------------------------------------------
# system factories
# ---------------------------------------------------------------------------


def two_state_system(p: TwoStateParams) -> SdeSystem:
    """Two-state fraction dynamics on the clamped interval [DELTA, 1-DELTA]."""

    def coefficients(state):
        d, b = kinetics.two_state_drift_diffusion(state[..., 0], p)
        return d[..., None], b[..., None]

    def drift(state):
        return coefficients(state)[0]

    def diffusion(state):
        return coefficients(state)[1]

    return SdeSystem(
        dim=1,
        drift=drift,
        diffusion=diffusion,
        coefficients=coefficients,
        domain_lo=np.array([DELTA]),
        domain_hi=np.array([1.0 - DELTA]),
        scale_lo=np.array([0.0]),
        scale_hi=np.array([1.0]),
        tau=lambda state: kinetics.tau_two_state(state[..., 0], p.alpha),
        columns=("x",),
    )


#: Reflection floor for the fundamentalist fraction when the event clock is
#: active.  With alpha > 0 the n_f diffusion *diverges* towards n_f = 0
#: (2*n_f/tau ~ 2*xi**2/n_f), so the usual boundary argument (vanishing
#: diffusion makes a tiny clamp invisible) does not apply: paths dive to any
#: floor and the step control shrinks like n_f**3, stalling the run.  The
#: stationary weight below 1e-4 is ~1e-9 of total time, so reflecting there
#: leaves every observable statistic unchanged while keeping step costs
#: bounded.
NF_DIVE_FLOOR = 1e-4


def three_state_system(p: ThreeStateParams, nf_floor=None) -> SdeSystem:
    """(n_f, xi) dynamics on the clamped rectangle, independent channels."""
    if nf_floor is None:
        nf_floor = DELTA if p.alpha == 0 else NF_DIVE_FLOOR

    def coefficients(state):
        return kinetics.three_state_drift_diffusion(state[..., 0], state[..., 1], p)

    def drift(state):
        return coefficients(state)[0]

    def diffusion(state):
        return coefficients(state)[1]

    return SdeSystem(
        dim=2,
        drift=drift,
        diffusion=diffusion,
        coefficients=coefficients,
        domain_lo=np.array([nf_floor, -1.0 + DELTA]),
        domain_hi=np.array([1.0 - DELTA, 1.0 - DELTA]),
        scale_lo=np.array([0.0, -1.0]),
        scale_hi=np.array([1.0, 1.0]),
        tau=lambda state: kinetics.tau_three_state(
            np.clip(state[..., 0], DELTA, None), state[..., 1], p.alpha
        ),
        columns=("n_f", "xi"),
    )


def general_class_system(eta, lam, x_min, x_max) -> SdeSystem:
    """Power-law family restricted to reflecting limits [x_min, x_max].

    The family is scale-free and needs artificial bounds to possess a
    normalizable stationary state; the step control keeps using the natural
    domain (0, inf), where the coefficients actually vary.
    """
    if not 0 < x_min < x_max:
        raise ValueError("need 0 < x_min < x_max")

    def coefficients(state):
        d, b = kinetics.general_class_terms(state[..., 0], eta, lam)
        return d[..., None], b[..., None]

    def drift(state):
        return coefficients(state)[0]

    def diffusion(state):
        return coefficients(state)[1]

    return SdeSystem(
        dim=1,
        drift=drift,
        diffusion=diffusion,
        coefficients=coefficients,
        domain_lo=np.array([x_min]),
        domain_hi=np.array([x_max]),
        scale_lo=np.array([0.0]),
        scale_hi=np.array([np.inf]),
        columns=("x",),
    )
