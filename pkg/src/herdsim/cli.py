"""Command-line front end: config parsing, run orchestration, serialization.

Usage: ``herdsim <mode> --config <path> [--seed N] [--out DIR]``.

Modes
    predict    exponent triple from (alpha, eps2), written as JSON
    abm2/abm3  exact jump-process trajectories (CSV t,x / t,n_f,xi)
    sde2/sde3  macroscopic SDE trajectories (same CSV contracts)
    gen-class  the 1-D power-law family on reflecting limits (CSV t,x)
    returns    double-stochastic returns from a three-state CSV (CSV t,r)
    analyze    density + spectrum (+ optional fits) of a series CSV

Every run writes ``run_manifest.json`` holding the fully resolved config,
seed and package version; feeding that config back reproduces all artifacts
byte-identically.  Exit status: 0 success, 1 config error, 2 numeric
failure.  ``HERDSIM_THREADS`` caps concurrently dispatched trajectories of a
multi-path run; per-trajectory streams are derived from (seed, index) so the
output does not depend on scheduling.
"""

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import __version__, abm, analysis, kinetics, market, sde
from .errors import ConfigError, HerdsimError, NumericFailure
from .series import TimeSeries, read_csv, write_csv
from .streams import rng_stream

MODES = ("abm2", "abm3", "sde2", "sde3", "gen-class", "returns", "analyze", "predict")

DEFAULT_ALPHA = 2.0
DEFAULT_KAPPA = 0.1
DEFAULT_MAX_DT = 0.01
DEFAULT_A_SQRT_T = 0.16


@dataclass
class RunConfig:
    """Validated run description; ``resolved`` is the defaults-applied dict."""

    mode: str
    seed: int
    resolved: dict


def _type_name(t):
    return {float: "number", int: "integer", str: "string", bool: "boolean"}[t]


class _Block:
    """Helper validating one JSON object against allowed keys."""

    def __init__(self, obj, path):
        if not isinstance(obj, dict):
            raise ConfigError(path, "expected an object")
        self.obj = obj
        self.path = path
        self.seen = set()

    def get(self, key, kind, default=None, required=False, check=None, why=""):
        self.seen.add(key)
        if key not in self.obj:
            if required:
                raise ConfigError(f"{self.path}.{key}", "missing required key")
            return default
        value = self.obj[key]
        if kind is float and isinstance(value, bool):
            raise ConfigError(f"{self.path}.{key}", "expected a number")
        if kind is float and isinstance(value, int):
            value = float(value)
        if kind is int and isinstance(value, float) and value.is_integer():
            value = int(value)
        if not isinstance(value, kind):
            raise ConfigError(f"{self.path}.{key}", f"expected a {_type_name(kind)}")
        if check is not None and not check(value):
            raise ConfigError(f"{self.path}.{key}", why or "invalid value")
        return value

    def reject_unknown(self):
        unknown = set(self.obj) - self.seen
        if unknown:
            key = sorted(unknown)[0]
            raise ConfigError(f"{self.path}.{key}", "unknown key")


def _positive(v):
    return v > 0


def _nonneg(v):
    return v >= 0


def _parse_two_state_model(obj):
    b = _Block(obj, "model")
    eps1 = b.get("eps1", float, required=True, check=_nonneg, why="must be >= 0")
    eps2 = b.get("eps2", float, required=True, check=_nonneg, why="must be >= 0")
    h = b.get("h", float, default=1.0, check=_positive, why="must be positive")
    n = b.get("N", int, default=100, check=lambda v: v >= 2, why="must be >= 2")
    alpha = b.get("alpha", float, default=DEFAULT_ALPHA, check=_nonneg, why="must be >= 0")
    b.reject_unknown()
    return {"eps1": eps1, "eps2": eps2, "h": h, "N": n, "alpha": alpha}


def _parse_three_state_model(obj, with_population):
    b = _Block(obj, "model")
    out = {
        "eps_cf": b.get("eps_cf", float, required=True, check=_positive, why="must be positive"),
        "eps_fc": b.get("eps_fc", float, required=True, check=_positive, why="must be positive"),
        "eps_cc": b.get("eps_cc", float, required=True, check=_positive, why="must be positive"),
        "H": b.get("H", float, required=True, check=lambda v: v >= 1, why="must be >= 1"),
        "alpha": b.get("alpha", float, default=DEFAULT_ALPHA, check=_nonneg, why="must be >= 0"),
        "h1": b.get("h1", float, default=1.0, check=_positive, why="must be positive"),
    }
    if with_population:
        out["N"] = b.get("N", int, default=100, check=lambda v: v >= 3, why="must be >= 3")
    b.reject_unknown()
    return out


def _parse_gen_class_model(obj):
    b = _Block(obj, "model")
    eta = b.get("eta", float)
    lam = b.get("lambda", float)
    alpha = b.get("alpha", float, check=_nonneg, why="must be >= 0")
    eps2 = b.get("eps2", float)
    x_min = b.get("x_min", float, default=1.0, check=_positive, why="must be positive")
    x_max = b.get("x_max", float, default=1000.0, check=_positive, why="must be positive")
    b.reject_unknown()
    if (eta is None) != (lam is None):
        raise ConfigError("model.eta", "eta and lambda must be given together")
    if eta is None:
        if alpha is None or eps2 is None:
            raise ConfigError("model.alpha", "need either (eta, lambda) or (alpha, eps2)")
        pred = kinetics.predict_exponents(alpha, eps2)
        eta, lam = pred.eta, pred.lam
    elif alpha is not None or eps2 is not None:
        raise ConfigError("model.alpha", "give either (eta, lambda) or (alpha, eps2), not both")
    if eta <= 1:
        raise ConfigError("model.eta", "must exceed 1")
    if x_max <= x_min:
        raise ConfigError("model.x_max", "must exceed x_min")
    return {"eta": eta, "lambda": lam, "x_min": x_min, "x_max": x_max}


def _parse_trajectory(obj, path="trajectory"):
    b = _Block(obj, path)
    out = {
        "t_end": b.get("t_end", float, required=True, check=_positive, why="must be positive"),
        "sample_dt": b.get("sample_dt", float, required=True, check=_positive, why="must be positive"),
        "n_paths": b.get("n_paths", int, default=1, check=lambda v: v >= 1, why="must be >= 1"),
    }
    initial = b.get("initial", list)
    if initial is not None:
        if not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in initial):
            raise ConfigError(f"{path}.initial", "expected a list of numbers")
        out["initial"] = [float(v) for v in initial]
    b.reject_unknown()
    return out


def _parse_integrator(obj):
    b = _Block(obj, "integrator")
    out = {
        "t_end": b.get("t_end", float, required=True, check=_positive, why="must be positive"),
        "sample_dt": b.get("sample_dt", float, required=True, check=_positive, why="must be positive"),
        "kappa": b.get("kappa", float, default=DEFAULT_KAPPA,
                       check=lambda v: 0 < v <= 1, why="must lie in (0, 1]"),
        "max_dt": b.get("max_dt", float, default=DEFAULT_MAX_DT, check=_positive, why="must be positive"),
        "n_paths": b.get("n_paths", int, default=1, check=lambda v: v >= 1, why="must be >= 1"),
    }
    initial = b.get("initial", list)
    if initial is not None:
        if not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in initial):
            raise ConfigError("integrator.initial", "expected a list of numbers")
        out["initial"] = [float(v) for v in initial]
    b.reject_unknown()
    return out


def _parse_market(obj, window_required=True):
    b = _Block(obj, "market")
    lam = b.get("lambda", float, required=True, check=lambda v: v > 3, why="must exceed 3")
    window = b.get("window_T", float, required=window_required, check=_positive, why="must be positive")
    r0_bar = b.get("r0_bar", float, default=1.0, check=_positive, why="must be positive")
    mu = b.get("mu", float, default=0.0)
    sigma = b.get("sigma", float, default=0.0, check=_nonneg, why="must be >= 0")
    a = b.get("a", float, check=_nonneg, why="must be >= 0")
    bb = b.get("b", float, check=_nonneg, why="must be >= 0")
    b_over_a = b.get("b_over_a", float, check=_nonneg, why="must be >= 0")
    a_sqrt_t = b.get("a_sqrt_T", float, check=_nonneg, why="must be >= 0")
    b.reject_unknown()
    if b_over_a is not None:
        if a is not None or bb is not None:
            raise ConfigError("market.b_over_a", "mixes with explicit a/b")
        if a_sqrt_t is None:
            a_sqrt_t = DEFAULT_A_SQRT_T
        a = a_sqrt_t / np.sqrt(window)
        bb = b_over_a * a
    elif a is None or bb is None:
        raise ConfigError("market.a", "need either (a, b) or b_over_a")
    elif a_sqrt_t is not None:
        raise ConfigError("market.a_sqrt_T", "mixes with explicit a/b")
    return {
        "lambda": lam, "window_T": window, "r0_bar": r0_bar,
        "mu": mu, "sigma": sigma, "a": a, "b": bb,
    }


def _parse_analysis(obj):
    b = _Block(obj, "analysis")
    out = {
        "column": b.get("column", str),
        "burn_in": b.get("burn_in", float, default=0.1,
                         check=lambda v: 0 <= v < 1, why="must lie in [0, 1)"),
        "absolute": b.get("absolute", bool, default=False),
        "pdf_bins": b.get("pdf_bins", int, default=60, check=lambda v: v >= 4, why="must be >= 4"),
        "psd_segments": b.get("psd_segments", int, default=16,
                              check=lambda v: v >= 1, why="must be >= 1"),
    }
    pdf_range = b.get("pdf_fit_range", list)
    psd_ranges = b.get("psd_fit_ranges", list)
    b.reject_unknown()
    if pdf_range is not None:
        if len(pdf_range) != 2 or not all(isinstance(v, (int, float)) for v in pdf_range):
            raise ConfigError("analysis.pdf_fit_range", "expected [lo, hi]")
        out["pdf_fit_range"] = [float(v) for v in pdf_range]
    if psd_ranges is not None:
        for i, rng in enumerate(psd_ranges):
            if (not isinstance(rng, list) or len(rng) != 2
                    or not all(isinstance(v, (int, float)) for v in rng)):
                raise ConfigError(f"analysis.psd_fit_ranges[{i}]", "expected [lo, hi]")
        out["psd_fit_ranges"] = [[float(v) for v in rng] for rng in psd_ranges]
    return out


def parse_config(text: str, mode=None) -> RunConfig:
    """Validate a JSON config document and apply defaults.

    Unknown keys are rejected; every violation carries the offending field
    path in its message.
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("$", f"malformed JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise ConfigError("$", "top level must be an object")
    top = _Block(raw, "$")
    cfg_mode = top.get("mode", str)
    if cfg_mode is None and mode is None:
        raise ConfigError("$.mode", "missing required key")
    if cfg_mode is not None and mode is not None and cfg_mode != mode:
        raise ConfigError("$.mode", f"config says {cfg_mode!r} but {mode!r} was requested")
    mode = cfg_mode or mode
    if mode not in MODES:
        raise ConfigError("$.mode", f"unknown mode {mode!r}")
    seed = top.get("seed", int, default=0, check=_nonneg, why="must be >= 0")

    resolved = {"mode": mode, "seed": seed}
    model = top.get("model", dict)
    trajectory = top.get("trajectory", dict)
    integrator = top.get("integrator", dict)
    market_blk = top.get("market", dict)
    analysis_blk = top.get("analysis", dict)
    input_path = top.get("input", str)
    top.reject_unknown()

    def need(block, name):
        if block is None:
            raise ConfigError(f"$.{name}", f"missing block required by mode {mode!r}")
        return block

    if mode == "predict":
        b = _Block(need(model, "model"), "model")
        resolved["model"] = {
            "alpha": b.get("alpha", float, required=True, check=_nonneg, why="must be >= 0"),
            "eps2": b.get("eps2", float, required=True),
        }
        b.reject_unknown()
    elif mode in ("abm2", "sde2"):
        resolved["model"] = _parse_two_state_model(need(model, "model"))
        if mode == "abm2":
            resolved["trajectory"] = _parse_trajectory(need(trajectory, "trajectory"))
        else:
            resolved["integrator"] = _parse_integrator(need(integrator, "integrator"))
    elif mode in ("abm3", "sde3"):
        resolved["model"] = _parse_three_state_model(need(model, "model"), mode == "abm3")
        if mode == "abm3":
            resolved["trajectory"] = _parse_trajectory(need(trajectory, "trajectory"))
        else:
            resolved["integrator"] = _parse_integrator(need(integrator, "integrator"))
    elif mode == "gen-class":
        resolved["model"] = _parse_gen_class_model(need(model, "model"))
        resolved["integrator"] = _parse_integrator(need(integrator, "integrator"))
    elif mode == "returns":
        resolved["market"] = _parse_market(need(market_blk, "market"))
        if input_path is None:
            raise ConfigError("$.input", "returns mode needs an input series path")
        resolved["input"] = input_path
    elif mode == "analyze":
        resolved["analysis"] = _parse_analysis(analysis_blk if analysis_blk is not None else {})
        if input_path is None:
            raise ConfigError("$.input", "analyze mode needs an input series path")
        resolved["input"] = input_path

    return RunConfig(mode=mode, seed=seed, resolved=resolved)


# ---------------------------------------------------------------------------
# runners
# ---------------------------------------------------------------------------


def _thread_cap():
    raw = os.environ.get("HERDSIM_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _write_series(ts: TimeSeries, out_dir, name, time_scale=1.0):
    """Serialize, converting scaled time to physical units when asked."""
    if time_scale != 1.0:
        ts = TimeSeries(
            t0=ts.t0 / time_scale, dt=ts.dt / time_scale,
            values=ts.values, columns=ts.columns,
        )
    path = os.path.join(out_dir, name)
    write_csv(ts, path)
    return name


def _run_trajectories(n_paths, worker):
    """Dispatch trajectory indices, optionally in parallel."""
    indices = list(range(n_paths))
    threads = min(_thread_cap(), n_paths)
    if threads == 1:
        return [worker(i) for i in indices]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(worker, indices))


def _traj_name(base, i, n_paths):
    return f"{base}.csv" if n_paths == 1 else f"{base}_{i:03d}.csv"


def _two_state_params(m):
    return kinetics.TwoStateParams(
        epsilon1=m["eps1"], epsilon2=m["eps2"], h=m["h"],
        n_agents=m["N"], alpha=m["alpha"],
    )


def _three_state_params(m):
    return kinetics.ThreeStateParams(
        eps_cf=m["eps_cf"], eps_fc=m["eps_fc"], eps_cc=m["eps_cc"],
        big_h=m["H"], alpha=m["alpha"], h1=m["h1"],
    )


def _run_abm2(cfg, out_dir):
    m = cfg.resolved["model"]
    tr = cfg.resolved["trajectory"]
    p = _two_state_params(m)
    if "initial" in tr:
        if len(tr["initial"]) != 2:
            raise ConfigError("trajectory.initial", "two-state initial is [count1, count2]")
        pop = abm.AgentPopulation(np.array(tr["initial"], dtype=int), m["N"])
    else:
        x0 = int(round(m["N"] * m["eps1"] / (m["eps1"] + m["eps2"]))) if m["eps1"] + m["eps2"] > 0 else m["N"] // 2
        pop = abm.AgentPopulation.two_state(x0, m["N"])

    def worker(i):
        tcfg = abm.TrajectoryConfig(
            t_end=tr["t_end"], sample_dt=tr["sample_dt"], seed=cfg.seed, initial=pop
        )
        ts = abm.simulate_population(tcfg, p, stream=i)
        return _write_series(ts, out_dir, _traj_name("abm2", i, tr["n_paths"]), p.h)

    return _run_trajectories(tr["n_paths"], worker)


def _run_abm3(cfg, out_dir):
    m = cfg.resolved["model"]
    tr = cfg.resolved["trajectory"]
    p = _three_state_params(m)
    n = m["N"]
    if "initial" in tr:
        if len(tr["initial"]) != 3:
            raise ConfigError("trajectory.initial", "three-state initial is [n_f, n_p, n_o] counts")
        pop = abm.AgentPopulation(np.array(tr["initial"], dtype=int), n)
    else:
        nf0 = int(round(n * p.nf_fixed_point))
        npess = (n - nf0) // 2
        pop = abm.AgentPopulation.three_state(nf0, npess, n - nf0 - npess)

    def worker(i):
        tcfg = abm.TrajectoryConfig(
            t_end=tr["t_end"], sample_dt=tr["sample_dt"], seed=cfg.seed, initial=pop
        )
        ts = abm.simulate_population(tcfg, p, stream=i)
        return _write_series(ts, out_dir, _traj_name("abm3", i, tr["n_paths"]), p.h1)

    return _run_trajectories(tr["n_paths"], worker)


def _integrator_config(blk, seed, initial):
    return sde.IntegratorConfig(
        t_end=blk["t_end"], sample_dt=blk["sample_dt"], seed=seed,
        initial=np.asarray(initial, dtype=float),
        kappa=blk["kappa"], max_dt=blk["max_dt"],
    )


def _run_sde(cfg, out_dir, system, initial, base, time_scale):
    blk = cfg.resolved["integrator"]

    def worker(i):
        icfg = _integrator_config(blk, cfg.seed, initial)
        ts = sde.integrate(system, icfg, stream=i)
        return _write_series(ts, out_dir, _traj_name(base, i, blk["n_paths"]), time_scale)

    return _run_trajectories(blk["n_paths"], worker)


def _run_sde2(cfg, out_dir):
    m = cfg.resolved["model"]
    p = _two_state_params(m)
    blk = cfg.resolved["integrator"]
    initial = blk.get("initial", [m["eps1"] / (m["eps1"] + m["eps2"])])
    if len(initial) != 1:
        raise ConfigError("integrator.initial", "two-state initial is [x]")
    return _run_sde(cfg, out_dir, sde.two_state_system(p), initial, "sde2", p.h)


def _run_sde3(cfg, out_dir):
    m = cfg.resolved["model"]
    p = _three_state_params(m)
    blk = cfg.resolved["integrator"]
    initial = blk.get("initial", [p.nf_fixed_point, 0.0])
    if len(initial) != 2:
        raise ConfigError("integrator.initial", "three-state initial is [n_f, xi]")
    return _run_sde(cfg, out_dir, sde.three_state_system(p), initial, "sde3", p.h1)


def _run_gen_class(cfg, out_dir):
    m = cfg.resolved["model"]
    blk = cfg.resolved["integrator"]
    system = sde.general_class_system(m["eta"], m["lambda"], m["x_min"], m["x_max"])
    initial = blk.get("initial", [2.0 * m["x_min"]])
    if len(initial) != 1:
        raise ConfigError("integrator.initial", "initial is [x]")
    return _run_sde(cfg, out_dir, system, initial, "gen_class", 1.0)


def _run_returns(cfg, out_dir):
    mk = cfg.resolved["market"]
    ts = read_csv(cfg.resolved["input"])
    if set(("n_f", "xi")) <= set(ts.columns):
        price = market.log_price_series(ts, mk["r0_bar"])
    elif ts.columns == ("p",):
        price = ts
    else:
        raise ConfigError("$.input", "expected columns (n_f, xi) or (p)")
    params = market.MarketParams(
        a=mk["a"], b=mk["b"], lambda_q=mk["lambda"], window_T=mk["window_T"],
        r0_bar=mk["r0_bar"], mu=mk["mu"], sigma=mk["sigma"],
    )
    r = market.synthesize_returns(price, params, rng_stream(cfg.seed, 0))
    return [_write_series(r, out_dir, "returns.csv")]


def _run_analyze(cfg, out_dir):
    opts = cfg.resolved["analysis"]
    ts = read_csv(cfg.resolved["input"])
    column = opts["column"] or ts.columns[-1]
    if column not in ts.columns:
        raise ConfigError("analysis.column", f"no column {column!r} in input")
    ts = ts.drop_burn_in(opts["burn_in"])
    x = ts.column(column)
    outputs = []
    fits = {}

    samples = np.abs(x) if opts["absolute"] else x
    positive = samples[samples > 0]
    hist = analysis.pdf_log_binned(positive, n_bins=opts["pdf_bins"])
    pdf_ts_path = os.path.join(out_dir, "pdf.csv")
    with open(pdf_ts_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("x,p\n")
        for c, d in zip(hist.centers, hist.densities):
            fh.write(f"{float(c)!r},{float(d)!r}\n")
    outputs.append("pdf.csv")
    pdf_range = opts.get("pdf_fit_range")
    if pdf_range is None:
        pdf_range = analysis.default_pdf_fit_range(positive)
    try:
        fit = analysis.fit_power_law(hist.centers, hist.densities, tuple(pdf_range))
        fits["pdf"] = {
            "exponent": fit.exponent, "stderr": fit.stderr,
            "fit_range": list(fit.fit_range), "residual_rms": fit.residual_rms,
        }
    except ValueError as exc:
        fits["pdf"] = {"error": str(exc)}

    single = TimeSeries(ts.t0, ts.dt, x, columns=(column,))
    spec = analysis.psd_welch(single, segment_count=opts["psd_segments"])
    psd_path = os.path.join(out_dir, "psd.csv")
    with open(psd_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("f,S\n")
        for f, s in zip(spec.frequencies, spec.psd):
            fh.write(f"{float(f)!r},{float(s)!r}\n")
    outputs.append("psd.csv")
    fits["psd"] = []
    for rng in opts.get("psd_fit_ranges", []):
        try:
            fit = analysis.fit_power_law(spec.frequencies, spec.psd, tuple(rng))
            fits["psd"].append({
                "exponent": fit.exponent, "stderr": fit.stderr,
                "fit_range": list(fit.fit_range), "residual_rms": fit.residual_rms,
            })
        except ValueError as exc:
            fits["psd"].append({"error": str(exc), "fit_range": list(rng)})

    with open(os.path.join(out_dir, "fits.json"), "w", encoding="utf-8", newline="\n") as fh:
        json.dump(fits, fh, indent=2, sort_keys=True)
        fh.write("\n")
    outputs.append("fits.json")
    return outputs


def _run_predict(cfg, out_dir):
    m = cfg.resolved["model"]
    pred = kinetics.predict_exponents(m["alpha"], m["eps2"])
    path = os.path.join(out_dir, "predict.json")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(
            {"eta": pred.eta, "lambda": pred.lam, "beta": pred.beta},
            fh, indent=2, sort_keys=True,
        )
        fh.write("\n")
    return ["predict.json"]


_RUNNERS = {
    "predict": _run_predict,
    "abm2": _run_abm2,
    "abm3": _run_abm3,
    "sde2": _run_sde2,
    "sde3": _run_sde3,
    "gen-class": _run_gen_class,
    "returns": _run_returns,
    "analyze": _run_analyze,
}


def run(cfg: RunConfig, out_dir=".") -> dict:
    """Execute a validated config; returns the manifest written alongside."""
    os.makedirs(out_dir, exist_ok=True)
    outputs = _RUNNERS[cfg.mode](cfg, out_dir)
    manifest = {
        "version": __version__,
        "mode": cfg.mode,
        "seed": cfg.seed,
        "config": cfg.resolved,
        "outputs": sorted(outputs),
    }
    with open(os.path.join(out_dir, "run_manifest.json"), "w",
              encoding="utf-8", newline="\n") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return manifest


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="herdsim",
        description="Herding-model market simulator and analysis front end",
    )
    parser.add_argument("mode", choices=MODES)
    parser.add_argument("--config", required=True, help="path to a JSON config")
    parser.add_argument("--seed", type=int, default=None, help="override the config seed")
    parser.add_argument("--out", default=".", help="output directory")
    args = parser.parse_args(argv)

    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1

    try:
        cfg = parse_config(text, mode=args.mode)
        if args.seed is not None:
            if args.seed < 0:
                raise ConfigError("--seed", "must be >= 0")
            cfg = RunConfig(
                mode=cfg.mode, seed=args.seed,
                resolved={**cfg.resolved, "seed": args.seed},
            )
        run(cfg, out_dir=args.out)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except NumericFailure as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 2
    except HerdsimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
