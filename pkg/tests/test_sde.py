"""Integrator tests: step mechanics, boundaries, and stationary-law oracles."""

import numpy as np
import pytest

import herdsim as hs
from oracles import stationary_cdf

UNIT = hs.SdeSystem


def constant_system(drift_c=0.0, diff_c=0.0, lo=-1e9, hi=1e9, dim=1):
    return hs.SdeSystem(
        dim=dim,
        drift=lambda s: np.full_like(s, drift_c),
        diffusion=lambda s: np.full_like(s, diff_c),
        domain_lo=np.full(dim, lo),
        domain_hi=np.full(dim, hi),
    )


def linear_decay_system(lo=0.0, hi=2.0):
    return hs.SdeSystem(
        dim=1,
        drift=lambda s: -s,
        diffusion=lambda s: np.zeros_like(s),
        domain_lo=np.array([lo]),
        domain_hi=np.array([hi]),
    )


class TestEmStep:
    def test_deterministic_euler(self):
        new = hs.em_step(np.array([1.0]), linear_decay_system(), 0.1, np.array([0.0]))
        assert new[0] == pytest.approx(0.9)

    def test_zero_drift_zero_noise(self):
        sys0 = constant_system()
        state = np.array([0.37])
        assert hs.em_step(state, sys0, 0.05, np.array([0.0]))[0] == 0.37

    def test_reflection_of_overshoot(self):
        d = hs.DELTA
        sys0 = constant_system(lo=d, hi=1 - d)
        # drift pushes from 0.008 to -0.002 in one step: reflected to ~0.002
        sysd = hs.SdeSystem(
            dim=1,
            drift=lambda s: np.full_like(s, -0.1),
            diffusion=lambda s: np.zeros_like(s),
            domain_lo=np.array([d]),
            domain_hi=np.array([1 - d]),
        )
        new = hs.em_step(np.array([0.008]), sysd, 0.1, np.array([0.0]))
        assert new[0] == pytest.approx(0.002 + 2 * d, abs=1e-12)

    def test_numeric_failure_signal(self):
        bad = hs.SdeSystem(
            dim=1,
            drift=lambda s: np.full_like(s, np.nan),
            diffusion=lambda s: np.zeros_like(s),
            domain_lo=np.array([0.0]),
            domain_hi=np.array([1.0]),
        )
        with pytest.raises(hs.NumericFailure):
            hs.em_step(np.array([0.5]), bad, 0.1, np.array([0.0]))

    def test_ensemble_shape(self):
        sys0 = constant_system(diff_c=1.0)
        state = np.zeros((8, 1))
        dw = np.full((8, 1), 0.2)
        new = hs.em_step(state, sys0, 0.04, dw)
        assert new.shape == (8, 1)
        assert np.allclose(new, 0.2)


class TestAdaptiveDt:
    def test_cap_binds_far_from_boundary(self):
        sys0 = constant_system(drift_c=1e-6, diff_c=1e-6, lo=0.0, hi=1e6)
        cfg = hs.IntegratorConfig(
            t_end=1.0, sample_dt=0.1, seed=0, initial=np.array([5e5]),
            kappa=0.1, max_dt=0.25,
        )
        assert hs.adaptive_dt(np.array([5e5]), sys0, cfg) == 0.25

    def test_formula_substitution(self):
        # diffusion^2 / width^2 = 1e4 with kappa = 0.1 gives dt = 1e-6
        width = 1.0 - hs.DELTA  # state at 1.0 in [0, 2]: distance to bound 1
        sysd = constant_system(diff_c=100.0 * (width + 2 * hs.DELTA), lo=0.0, hi=2.0)
        sysd = hs.SdeSystem(
            dim=1,
            drift=lambda s: np.zeros_like(s),
            diffusion=lambda s: np.full_like(s, 100.0 * (1.0 + hs.DELTA)),
            domain_lo=np.array([0.0]),
            domain_hi=np.array([2.0]),
        )
        cfg = hs.IntegratorConfig(
            t_end=1.0, sample_dt=0.1, seed=0, initial=np.array([1.0]),
            kappa=0.1, max_dt=1.0,
        )
        dt = hs.adaptive_dt(np.array([1.0]), sysd, cfg)
        assert dt == pytest.approx(1e-6, rel=1e-9)

    def test_shrinks_towards_boundary(self):
        p = hs.TwoStateParams(1.0, 1.0, 1.0, 100, 0.0)
        sysd = hs.two_state_system(p)
        cfg = hs.IntegratorConfig(
            t_end=1.0, sample_dt=0.1, seed=0, initial=np.array([0.5]),
            kappa=0.1, max_dt=1.0,
        )
        xs = [0.4, 0.2, 0.1, 0.05, 0.01, 0.001]
        dts = [hs.adaptive_dt(np.array([x]), sysd, cfg) for x in xs]
        assert np.all(np.diff(dts) < 0)


class TestIntegrate:
    def test_deterministic_ode_accuracy(self):
        cfg = hs.IntegratorConfig(
            t_end=1.0, sample_dt=0.5, seed=0, initial=np.array([1.0]),
            kappa=0.1, max_dt=1e-3,
        )
        ts = hs.integrate(linear_decay_system(), cfg)
        assert ts.values[-1, 0] == pytest.approx(np.exp(-1.0), rel=1e-3)

    def test_determinism(self):
        p = hs.TwoStateParams(1.0, 1.0, 1.0, 100, 0.0)
        cfg = hs.IntegratorConfig(
            t_end=5.0, sample_dt=0.1, seed=77, initial=np.array([0.5]),
        )
        a = hs.integrate(hs.two_state_system(p), cfg)
        b = hs.integrate(hs.two_state_system(p), cfg)
        assert np.array_equal(a.values, b.values)

    def test_numeric_failure_carries_time(self):
        bad = hs.SdeSystem(
            dim=1,
            drift=lambda s: np.where(s > 0.6, np.nan, 0.1 * np.ones_like(s)),
            diffusion=lambda s: np.zeros_like(s),
            domain_lo=np.array([0.0]),
            domain_hi=np.array([1.0]),
        )
        cfg = hs.IntegratorConfig(
            t_end=10.0, sample_dt=0.5, seed=0, initial=np.array([0.5]),
        )
        with pytest.raises(hs.NumericFailure) as err:
            hs.integrate(bad, cfg)
        assert err.value.t is not None and err.value.t > 0

    def test_trajectories_stay_in_domain(self):
        # boundary-hugging parameters: the density diverges at both ends
        p = hs.TwoStateParams(0.5, 0.5, 1.0, 100, 0.0)
        sysd = hs.two_state_system(p)
        cfg = hs.IntegratorConfig(
            t_end=5.0, sample_dt=0.05, seed=13, initial=np.array([0.5]), kappa=0.3,
        )
        vals = hs.simulate_paths(sysd, cfg, n_paths=64)
        assert vals.min() >= hs.DELTA and vals.max() <= 1 - hs.DELTA


@pytest.mark.slow
class TestStationaryOracles:
    def test_two_state_uniform(self, two_state_stationary):
        # constant-clock symmetric herding: stationary law from flux balance
        # (quadrature oracle) is the uniform density
        e1 = e2 = 1.0
        cdf = stationary_cdf(
            lambda x: e1 * (1 - x) - e2 * x,
            lambda x: np.sqrt(2 * x * (1 - x)),
            hs.DELTA, 1 - hs.DELTA,
        )
        xs = two_state_stationary(e1, e2, "sde")
        assert hs.ks_distance(xs, cdf) < 0.02
        # uniform density explicitly
        assert np.abs(xs.mean() - 0.5) < 0.01

    def test_mood_uniform_when_cc_rate_is_one(self):
        # tau = 1, eps_cc = 1: the mood marginal is uniform on (-1, 1)
        p = hs.ThreeStateParams(1.0, 1.0, 1.0, 10.0, 0.0)
        cdf = stationary_cdf(
            lambda v: -2.0 * p.big_h * p.eps_cc * v,
            lambda v: np.sqrt(2.0 * p.big_h * (1 - v**2)),
            -1 + hs.DELTA, 1 - hs.DELTA,
        )
        cfg = hs.IntegratorConfig(
            t_end=5.0, sample_dt=0.05, seed=9,
            initial=np.array([0.5, 0.0]), kappa=0.2, max_dt=0.01,
        )
        vals = hs.simulate_paths(hs.three_state_system(p), cfg, n_paths=256)
        xi = vals[20:, :, 1].ravel()
        assert hs.ks_distance(xi, cdf) < 0.02
        # explicit uniform check too
        assert hs.ks_distance(xi, lambda q: (np.asarray(q) + 1) / 2) < 0.02

    def test_general_class_tail_exponent(self):
        # stationary density of the power-law family on [1, 1000] decays as
        # x**-lam; verified via the log-binned histogram fit
        gsys = hs.general_class_system(2.0, 4.0, 1.0, 1000.0)
        cfg = hs.IntegratorConfig(
            t_end=400.0, sample_dt=0.02, seed=17, initial=np.array([1.5]),
            kappa=0.15, max_dt=0.01,
        )
        vals = hs.simulate_paths(gsys, cfg, n_paths=16)
        xs = vals[2000:, :, 0].ravel()
        hist = hs.pdf_log_binned(xs, n_bins=60)
        fit = hs.fit_power_law(
            hist.centers, hist.densities, hs.default_pdf_fit_range(xs)
        )
        assert fit.exponent == pytest.approx(4.0, abs=0.15)

    def test_kappa_halving_within_mc_error(self):
        e1 = e2 = 2.0
        p = hs.TwoStateParams(e1, e2, 1.0, 1000, 0.0)
        cdf = stationary_cdf(
            lambda x: e1 * (1 - x) - e2 * x,
            lambda x: np.sqrt(2 * x * (1 - x)),
            hs.DELTA, 1 - hs.DELTA,
        )
        ks = {}
        for kappa in (0.2, 0.1):
            cfg = hs.IntegratorConfig(
                t_end=7.0, sample_dt=0.5, seed=4, initial=np.array([0.5]),
                kappa=kappa, max_dt=0.01,
            )
            vals = hs.simulate_paths(hs.two_state_system(p), cfg, n_paths=512)
            xs = vals[2:, :, 0].ravel()
            ks[kappa] = hs.ks_distance(xs, cdf)
        n_eff = 512 * 12
        assert abs(ks[0.2] - ks[0.1]) < 1.36 / np.sqrt(n_eff)

    def test_noise_channels_independent(self):
        # constant-coefficient 2-D system: per-sample state differences are
        # the applied increments; their empirical correlation must vanish
        sys2 = constant_system(diff_c=1.0, dim=2)
        cfg = hs.IntegratorConfig(
            t_end=100.0, sample_dt=0.01, seed=3,
            initial=np.zeros(2), kappa=0.5, max_dt=0.01,
        )
        vals = hs.simulate_paths(sys2, cfg, n_paths=100)
        inc = np.diff(vals, axis=0)  # (n-1, paths, 2)
        a = inc[..., 0].ravel()
        b = inc[..., 1].ravel()
        corr = np.corrcoef(a, b)[0, 1]
        assert a.size >= 10**6
        assert abs(corr) < 0.01
