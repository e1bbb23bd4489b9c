"""Exact event-driven simulation of the two- and three-state jump processes.

The microscopic models are one-step (birth-death) Markov chains: each event
moves exactly one agent between states.  Simulation is exact — the waiting
time to the next event is exponential in the total rate and the channel is
chosen proportionally to its aggregate rate — with no tau-leaping, so the
output serves as a trustworthy oracle for the macroscopic SDE engine.

Time unit: trajectory configs are expressed in scaled time (t_s = h*t for the
two-state model, h1*t for the three-state model); rates are converted
internally.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kinetics
from .errors import AbsorbingStateError
from .kinetics import ThreeStateParams, TwoStateParams, tau_three_state
from .series import TimeSeries
from .streams import rng_stream


@dataclass
class AgentPopulation:
    """Integer occupation counts of the discrete states.

    Two-state order: (state 1, state 2); the reported fraction ``x`` is the
    state-2 share.  Three-state order: (fundamentalist, pessimist, optimist).
    """

    counts: np.ndarray
    n_total: int

    def __post_init__(self):
        c = np.asarray(self.counts, dtype=np.int64)
        if c.ndim != 1 or c.shape[0] not in (2, 3):
            raise ValueError("counts must hold 2 or 3 states")
        if np.any(c < 0):
            raise ValueError("counts must be non-negative")
        if c.sum() != self.n_total:
            raise ValueError("counts must sum to n_total")
        self.counts = c

    @classmethod
    def two_state(cls, x_count, n_total):
        return cls(np.array([n_total - x_count, x_count]), n_total)

    @classmethod
    def three_state(cls, n_fund, n_pess, n_opt):
        return cls(np.array([n_fund, n_pess, n_opt]), n_fund + n_pess + n_opt)

    @property
    def fractions(self):
        return self.counts / self.n_total


@dataclass(frozen=True)
class TrajectoryConfig:
    """Run length, sampling grid (both in scaled time), seed and start point."""

    t_end: float
    sample_dt: float
    seed: int
    initial: AgentPopulation

    def __post_init__(self):
        if not self.t_end > 0:
            raise ValueError("t_end must be positive")
        if not self.sample_dt > 0:
            raise ValueError("sample_dt must be positive")


# Channel tables: transition id (from_state, to_state) and count increments.
_TWO_STATE_CHANNELS = ((1, 2), (2, 1))
_TWO_STATE_DELTAS = np.array([[-1, 1], [1, -1]], dtype=np.int64)
_THREE_STATE_CHANNELS = ((1, 2), (1, 3), (2, 1), (2, 3), (3, 1), (3, 2))
_THREE_STATE_DELTAS = np.array(
    [
        [-1, 1, 0],
        [-1, 0, 1],
        [1, -1, 0],
        [0, -1, 1],
        [1, 0, -1],
        [0, 1, -1],
    ],
    dtype=np.int64,
)


def three_state_scaled_rates(counts, n_total, p: ThreeStateParams):
    """Six per-agent rates in scaled time (units of h1), clock included.

    The clock placement mirrors the two-state convention: the market-exit
    rate (eps_fc terms) stays outside 1/tau, every other term (chartist
    entry and all herding) is accelerated by it; with alpha = 0 this is the
    plain constant-rate table.  ``counts`` may be shape (3,) or (m, 3) for
    an ensemble.
    """
    c = np.asarray(counts, dtype=float)
    x1 = c[..., 0] / n_total
    x2 = c[..., 1] / n_total
    x3 = c[..., 2] / n_total
    xi = kinetics.mood_from_counts(x3, x2)
    # the macroscopic clock feedback has no meaning below the lattice
    # resolution, so floor the fraction at half an agent
    floor = max(kinetics.DELTA, 0.5 / n_total)
    inv_tau = 1.0 / tau_three_state(np.clip(x1, floor, None), xi, p.alpha)
    n = n_total
    out = np.empty(c.shape[:-1] + (6,))
    out[..., 0] = p.eps_fc / 2.0 + n * x2 * inv_tau
    out[..., 1] = p.eps_fc / 2.0 + n * x3 * inv_tau
    out[..., 2] = (p.eps_cf + n * x1) * inv_tau
    out[..., 3] = p.big_h * (p.eps_cc + n * x3) * inv_tau
    out[..., 4] = (p.eps_cf + n * x1) * inv_tau
    out[..., 5] = p.big_h * (p.eps_cc + n * x2) * inv_tau
    return out


@lru_cache(maxsize=64)
def _scaled_rate_fn(model, n_total):
    """Closure computing aggregate scaled-time channel rates for (m, S) counts."""
    n = n_total
    if isinstance(model, TwoStateParams):
        e1, e2, alpha = model.epsilon1, model.epsilon2, model.alpha

        def rates(c):
            x = c[..., 1] / n
            if alpha == 0:
                inv_tau = 1.0
            else:
                xc = np.clip(x, kinetics.DELTA, 1.0 - kinetics.DELTA)
                inv_tau = (xc / (1.0 - xc)) ** alpha
            r1 = c[..., 0] * (e1 + n * x * inv_tau)
            r2 = c[..., 1] * (e2 + n * (1.0 - x)) * inv_tau
            return np.stack(np.broadcast_arrays(r1, r2), axis=-1)

        return rates
    if isinstance(model, ThreeStateParams):

        def rates(c):
            per_agent = three_state_scaled_rates(c, n, model)
            return c[..., [0, 0, 1, 1, 2, 2]] * per_agent

        return rates
    raise TypeError(f"unsupported model type {type(model)!r}")


def _aggregate_scaled_rates(counts, n_total, model):
    """Aggregate channel rates in scaled time for a (possibly batched) state."""
    return _scaled_rate_fn(model, n_total)(np.asarray(counts, dtype=float))


def _channels(model):
    if isinstance(model, TwoStateParams):
        return _TWO_STATE_CHANNELS, _TWO_STATE_DELTAS
    return _THREE_STATE_CHANNELS, _THREE_STATE_DELTAS


def total_transition_rates(pop: AgentPopulation, model):
    """Aggregate rate of each transition channel, in physical time.

    The aggregate rate of the j -> i move is X_j times the per-agent rate;
    channels with an empty source state therefore carry rate zero.  Returns a
    list of ((from_state, to_state), rate) pairs.
    """
    scale = model.h if isinstance(model, TwoStateParams) else model.h1
    channels, _ = _channels(model)
    agg = _aggregate_scaled_rates(pop.counts, pop.n_total, model) * scale
    return [(tid, float(r)) for tid, r in zip(channels, agg)]


def next_event(pop: AgentPopulation, model, rng):
    """Draw (transition id, waiting time) for the next event, in physical time.

    Waiting time is exponential with mean 1/total rate; the channel is chosen
    proportionally to its aggregate rate.  Raises AbsorbingStateError when
    every channel is dead.
    """
    scale = model.h if isinstance(model, TwoStateParams) else model.h1
    channels, _ = _channels(model)
    values = _aggregate_scaled_rates(pop.counts, pop.n_total, model) * scale
    total = values.sum()
    if total <= 0:
        raise AbsorbingStateError("all transition rates are zero")
    wait = rng.exponential(1.0 / total)
    cum = np.cumsum(values)
    idx = int(np.searchsorted(cum, rng.random() * total, side="right"))
    idx = min(idx, len(channels) - 1)
    return channels[idx], wait


def _fractions_row(counts, model):
    n = counts.sum()
    if isinstance(model, TwoStateParams):
        return (counts[1] / n,)
    return (
        counts[0] / n,
        float(kinetics.mood_from_counts(counts[2] / n, counts[1] / n)),
    )


def simulate_population(cfg: TrajectoryConfig, model, stream=0) -> TimeSeries:
    """Exact single-trajectory simulation sampled on the uniform grid.

    Each grid sample holds the population at the latest event before the grid
    time (the jump process is piecewise constant).  Columns: ``x`` for the
    two-state model, ``n_f, xi`` for the three-state model.  Identical
    (seed, stream) pairs reproduce identical output; sweeps give each
    trajectory its own stream index.
    """
    scale = model.h if isinstance(model, TwoStateParams) else model.h1
    channels, deltas = _channels(model)
    chan_index = {tid: k for k, tid in enumerate(channels)}
    rng = rng_stream(cfg.seed, stream)
    n_grid = int(np.floor(cfg.t_end / cfg.sample_dt)) + 1

    pop = AgentPopulation(cfg.initial.counts.copy(), cfg.initial.n_total)
    t_phys = 0.0
    out = np.empty((n_grid, 1 if isinstance(model, TwoStateParams) else 2))
    out[0] = _fractions_row(pop.counts, model)
    k = 1
    absorbed = False
    while k < n_grid:
        if absorbed:
            out[k] = _fractions_row(pop.counts, model)
            k += 1
            continue
        try:
            tid, wait = next_event(pop, model, rng)
        except AbsorbingStateError:
            absorbed = True
            continue
        t_next = t_phys + wait
        while k < n_grid and t_next >= (k * cfg.sample_dt) / scale:
            out[k] = _fractions_row(pop.counts, model)
            k += 1
        pop.counts += deltas[chan_index[tid]]
        t_phys = t_next
    columns = ("x",) if isinstance(model, TwoStateParams) else ("n_f", "xi")
    return TimeSeries(t0=0.0, dt=cfg.sample_dt, values=out, columns=columns)


def simulate_ensemble(
    model,
    initial: AgentPopulation,
    t_end,
    sample_dt,
    n_paths,
    seed,
    check_conservation=False,
    return_event_count=False,
):
    """Vectorized exact simulation of ``n_paths`` independent trajectories.

    Returns fractions of shape (n_grid, n_paths, n_states), sampled on the
    scaled-time grid.  Each sweep advances every unfinished path by one event
    or records one grid sample, whichever comes first on that path; when a
    drawn wait would cross the path's next grid time, the sample is recorded
    with the pre-event (hold) value and the wait is discarded — exact by
    memorylessness of the exponential law.  A single counter-based stream
    drives the whole ensemble, so results are reproducible for a fixed
    (seed, n_paths) pair.

    ``check_conservation=True`` asserts the population invariants after
    every applied event (used by the invariant tests; conservation holds by
    construction since every channel moves exactly one agent).
    ``return_event_count=True`` additionally returns the number of applied
    events.
    """
    if isinstance(model, TwoStateParams):
        return _simulate_ensemble_two_state(
            model, initial, t_end, sample_dt, n_paths, seed, check_conservation,
            return_event_count,
        )
    _, deltas = _channels(model)
    n_states = deltas.shape[1]
    n_channels = deltas.shape[0]
    n_total = initial.n_total
    rate_fn = _scaled_rate_fn(model, n_total)
    rng = rng_stream(seed, 0)
    n_grid = int(np.floor(t_end / sample_dt)) + 1

    counts = np.tile(initial.counts, (n_paths, 1)).astype(np.int64)
    t = np.zeros(n_paths)
    next_k = np.ones(n_paths, dtype=np.int64)  # next grid index per path
    out = np.empty((n_grid, n_paths, n_states))
    out[0] = counts / n_total
    n_events = 0

    active = np.arange(n_paths)
    with np.errstate(divide="ignore"):
        while active.size:
            rates = rate_fn(counts[active])
            total = rates.sum(axis=-1)
            grid_t = next_k[active] * sample_dt
            waits = rng.exponential(1.0, size=active.size) / total
            t_new = np.where(total > 0, t[active] + waits, np.inf)
            crossed = t_new >= grid_t

            hit = active[crossed]
            if hit.size:
                out[next_k[hit], hit] = counts[hit] / n_total
                t[hit] = grid_t[crossed]
                next_k[hit] += 1

            idx = active[~crossed]
            if idx.size:
                n_events += idx.size
                u = rng.random(idx.size) * total[~crossed]
                cum = np.cumsum(rates[~crossed], axis=-1)
                chan = (cum <= u[:, None]).sum(axis=-1)
                np.minimum(chan, n_channels - 1, out=chan)
                counts[idx] += deltas[chan]
                t[idx] = t_new[~crossed]
                if check_conservation:
                    if np.any(counts[idx] < 0) or np.any(
                        counts[idx].sum(axis=-1) != n_total
                    ):
                        raise AssertionError("population invariant violated")
            if hit.size and np.any(next_k[hit] >= n_grid):
                active = active[next_k[active] < n_grid]
    if return_event_count:
        return out, n_events
    return out


def _simulate_ensemble_two_state(
    p: TwoStateParams, initial, t_end, sample_dt, n_paths, seed,
    check_conservation, return_event_count=False,
):
    """Two-state fast path: the state is fully described by the X count."""
    n = initial.n_total
    e1, e2, alpha = p.epsilon1, p.epsilon2, p.alpha
    can_die = e1 == 0 or e2 == 0  # only boundary states can absorb
    rng = rng_stream(seed, 0)
    n_grid = int(np.floor(t_end / sample_dt)) + 1

    x_count = np.full(n_paths, initial.counts[1], dtype=np.int64)
    t = np.zeros(n_paths)
    next_k = np.ones(n_paths, dtype=np.int64)
    t_grid = np.full(n_paths, sample_dt)  # each path's next grid time
    samples = np.empty((n_grid, n_paths), dtype=np.int64)
    samples[0] = x_count
    n_events = 0

    active = np.arange(n_paths)
    with np.errstate(divide="ignore"):
        while active.size:
            x_sub = x_count[active]
            n_minus = n - x_sub
            if alpha == 0:
                r_up = n_minus * (e1 + x_sub)
                r_dn = x_sub * (e2 + n_minus)
            else:
                frac = np.clip(x_sub / n, kinetics.DELTA, 1.0 - kinetics.DELTA)
                inv_tau = (frac / (1.0 - frac)) ** alpha
                r_up = n_minus * (e1 + x_sub * inv_tau)
                r_dn = x_sub * (e2 + n_minus) * inv_tau
            total = r_up + r_dn
            grid_t = t_grid[active]
            waits = rng.exponential(1.0, size=active.size) / total
            t_new = t[active] + waits
            if can_die:
                t_new = np.where(total > 0, t_new, np.inf)
            crossed = t_new >= grid_t

            hit = active[crossed]
            if hit.size:
                samples[next_k[hit], hit] = x_count[hit]
                t[hit] = grid_t[crossed]
                next_k[hit] += 1
                t_grid[hit] += sample_dt

            idx = active[~crossed]
            if idx.size:
                n_events += idx.size
                # channel choice reduces to a threshold test; u < r_up can
                # only happen when r_up > 0, so edge states are safe
                u = rng.random(idx.size) * total[~crossed]
                x_count[idx] += np.where(u < r_up[~crossed], 1, -1)
                t[idx] = t_new[~crossed]
                if check_conservation:
                    if np.any(x_count[idx] < 0) or np.any(x_count[idx] > n):
                        raise AssertionError("population invariant violated")
            if hit.size and np.any(next_k[hit] >= n_grid):
                active = active[next_k[active] < n_grid]
    out = np.empty((n_grid, n_paths, 2))
    out[:, :, 1] = samples / n
    out[:, :, 0] = 1.0 - out[:, :, 1]
    if return_event_count:
        return out, n_events
    return out
