"""Herding-model market simulator.

Microscopic (exact jump-process) and macroscopic (SDE) simulation of two- and
three-state herding agent populations, double-stochastic return synthesis
with heavy-tailed exogenous noise, and the density/spectrum estimation
toolkit used to verify their power-law statistics.
"""

__version__ = "0.1.0"

from .abm import (
    AgentPopulation,
    TrajectoryConfig,
    next_event,
    simulate_ensemble,
    simulate_population,
    total_transition_rates,
)
from .analysis import (
    HistogramEstimate,
    PowerLawFit,
    SpectrumEstimate,
    TailEstimate,
    default_pdf_fit_range,
    fit_power_law,
    hill_is_stable,
    hill_tail_exponent,
    ks_distance,
    pdf_log_binned,
    psd_welch,
)
from .errors import (
    AbsorbingStateError,
    ConfigError,
    DegenerateHistogramError,
    HerdsimError,
    NumericFailure,
    UndefinedMoodError,
)
from .kinetics import (
    DELTA,
    ExponentPrediction,
    MacroState,
    RawRates,
    ThreeStateParams,
    TwoStateParams,
    fokker_planck_coefficients,
    general_class_terms,
    mood,
    mood_from_counts,
    predict_exponents,
    tau_three_state,
    tau_two_state,
    three_state_drift_diffusion,
    three_state_rates,
    two_state_drift_diffusion,
    two_state_rates,
    y_inverse,
    y_transform,
)
from .market import (
    MarketParams,
    endogenous_return,
    endogenous_return_series,
    gaussian_return,
    log_price,
    log_price_series,
    moving_average,
    q_gaussian_sample,
    r0_scale,
    synthesize_returns,
)
from .sde import (
    IntegratorConfig,
    SdeSystem,
    adaptive_dt,
    em_step,
    general_class_system,
    integrate,
    reflect,
    simulate_paths,
    three_state_system,
    two_state_system,
)
from .series import TimeSeries, read_csv, write_csv
from .streams import rng_stream
