"""Estimator tests against analytic sampling oracles."""

import numpy as np
import pytest

import herdsim as hs


def pareto_samples(rng, pdf_exponent, n, x_min=1.0):
    """Inverse-CDF sampling of a density ~ x**-pdf_exponent above x_min."""
    ccdf_index = pdf_exponent - 1.0
    return x_min * rng.random(n) ** (-1.0 / ccdf_index)


class TestPdfLogBinned:
    def test_uniform_density(self):
        rng = np.random.default_rng(0)
        hist = hs.pdf_log_binned(rng.uniform(1.0, 2.0, 10**5), n_bins=20)
        inner = hist.densities[1:-1]
        assert np.all(np.abs(inner - 1.0) < 0.1)

    def test_pareto_slope(self):
        rng = np.random.default_rng(1)
        xs = pareto_samples(rng, 3.0, 10**5)
        hist = hs.pdf_log_binned(xs, n_bins=50)
        fit = hs.fit_power_law(
            hist.centers, hist.densities, hs.default_pdf_fit_range(xs)
        )
        assert fit.exponent == pytest.approx(3.0, abs=0.1)

    def test_degenerate_signal(self):
        with pytest.raises(hs.DegenerateHistogramError):
            hs.pdf_log_binned(np.full(10**5, 3.3))

    def test_mass_conservation(self):
        rng = np.random.default_rng(2)
        hist = hs.pdf_log_binned(rng.lognormal(size=10**4), n_bins=40)
        assert hist.covered_mass == pytest.approx(1.0, abs=1e-6)

    def test_input_validation(self):
        with pytest.raises(ValueError):
            hs.pdf_log_binned(np.ones(10))  # too few
        with pytest.raises(ValueError):
            hs.pdf_log_binned(np.linspace(-1, 1, 2000))  # non-positive


class TestPsdWelch:
    def test_sine_peak_bin(self):
        dt = 0.01
        t = np.arange(2**14) * dt
        f0 = 3.0
        ts = hs.TimeSeries(0.0, dt, np.sin(2 * np.pi * f0 * t))
        est = hs.psd_welch(ts, segment_count=4)
        peak = est.frequencies[np.argmax(est.psd)]
        df = est.frequencies[1] - est.frequencies[0]
        assert abs(peak - f0) <= df

    def test_white_noise_flat(self):
        rng = np.random.default_rng(3)
        ts = hs.TimeSeries(0.0, 0.01, rng.standard_normal(2**17))
        est = hs.psd_welch(ts, segment_count=16)
        fit = hs.fit_power_law(est.frequencies, est.psd, (1.0, 10.0))
        assert abs(fit.exponent) < 0.1

    def test_random_walk_slope(self):
        rng = np.random.default_rng(4)
        ts = hs.TimeSeries(0.0, 0.01, np.cumsum(rng.standard_normal(2**18)))
        est = hs.psd_welch(ts, segment_count=16)
        fit = hs.fit_power_law(est.frequencies, est.psd, (1.0, 30.0))
        assert fit.exponent == pytest.approx(2.0, abs=0.15)

    def test_parseval(self):
        # integrated one-sided PSD matches the variance
        rng = np.random.default_rng(5)
        failures = 0
        for _ in range(100):
            x = rng.standard_normal(2048)
            ts = hs.TimeSeries(0.0, 0.5, x)
            est = hs.psd_welch(ts, segment_count=4)
            df = est.frequencies[1] - est.frequencies[0]
            power = est.psd.sum() * df
            seg = x[: 4 * 512].reshape(4, 512)
            var = ((seg - seg.mean(axis=1, keepdims=True)) ** 2).mean()
            if abs(power / var - 1.0) > 0.05:
                failures += 1
        assert failures == 0

    def test_too_short(self):
        ts = hs.TimeSeries(0.0, 1.0, np.zeros(100))
        with pytest.raises(ValueError):
            hs.psd_welch(ts, segment_count=16)

    def test_frequencies_increase_to_nyquist(self):
        ts = hs.TimeSeries(0.0, 0.25, np.random.default_rng(0).standard_normal(4096))
        est = hs.psd_welch(ts, segment_count=8)
        assert np.all(np.diff(est.frequencies) > 0)
        assert est.frequencies[-1] == pytest.approx(2.0)  # Nyquist of dt=0.25
        assert np.all(est.psd >= 0)


class TestFitPowerLaw:
    def test_exact_power_law(self):
        x = np.logspace(0, 2, 30)
        fit = hs.fit_power_law(x, x**-3.0, (1.0, 100.0))
        assert fit.exponent == pytest.approx(3.0, abs=1e-12)
        assert fit.residual_rms == pytest.approx(0.0, abs=1e-12)

    def test_constant(self):
        x = np.logspace(0, 2, 30)
        fit = hs.fit_power_law(x, np.full(30, 2.5), (1.0, 100.0))
        assert fit.exponent == pytest.approx(0.0, abs=1e-12)

    def test_scale_equivariance(self):
        # rescaling x by c and y by c**-s leaves the exponent unchanged
        rng = np.random.default_rng(6)
        x = np.logspace(0, 2, 40)
        y = x**-2.0 * np.exp(rng.normal(0, 0.05, 40))
        f1 = hs.fit_power_law(x, y, (1.0, 100.0))
        c, s = 7.5, 2.0
        f2 = hs.fit_power_law(c * x, y * c**-s, (c, 100.0 * c))
        assert f2.exponent == pytest.approx(f1.exponent, rel=1e-9)

    def test_too_few_points(self):
        with pytest.raises(ValueError):
            hs.fit_power_law([1, 2, 3], [1, 1, 1], (1.0, 3.0))


class TestHill:
    def test_pareto_oracle(self):
        rng = np.random.default_rng(7)
        xs = pareto_samples(rng, 3.0, 10**6)
        est = hs.hill_tail_exponent(xs, k=10**4)
        assert est.exponent == pytest.approx(3.0, abs=0.06)
        assert est.stderr == pytest.approx(est.exponent / 100.0)

    def test_exponential_flagged_unstable(self):
        rng = np.random.default_rng(8)
        xs = rng.exponential(1.0, 10**5)
        assert not hs.hill_is_stable(xs, k_values=(500, 2000, 8000))

    def test_pareto_stable(self):
        rng = np.random.default_rng(9)
        xs = pareto_samples(rng, 3.0, 10**6)
        assert hs.hill_is_stable(xs, k_values=(2500, 10**4, 4 * 10**4))

    def test_agrees_with_density_fit(self):
        rng = np.random.default_rng(10)
        xs = pareto_samples(rng, 3.5, 10**6)
        hill = hs.hill_tail_exponent(xs, k=10**4)
        hist = hs.pdf_log_binned(xs, n_bins=60)
        fit = hs.fit_power_law(
            hist.centers, hist.densities, hs.default_pdf_fit_range(xs)
        )
        gap = abs(hill.exponent - fit.exponent)
        assert gap < 3 * np.hypot(hill.stderr, fit.stderr) + 0.02

    def test_k_validation(self):
        with pytest.raises(ValueError):
            hs.hill_tail_exponent(np.ones(100) + 1, k=50)


class TestKsDistance:
    def test_null_distribution(self):
        rng = np.random.default_rng(11)
        xs = rng.random(10**5)
        assert hs.ks_distance(xs, lambda q: q) < 0.01

    def test_point_mass_vs_continuous(self):
        xs = np.full(1000, 0.5)
        assert hs.ks_distance(xs, lambda q: np.asarray(q)) >= 0.5

    def test_disjoint_support(self):
        xs = np.linspace(10, 11, 500)
        cdf = lambda q: np.clip(q, 0, 1)  # support [0, 1]
        assert hs.ks_distance(xs, cdf) == pytest.approx(1.0)

    def test_min_samples(self):
        with pytest.raises(ValueError):
            hs.ks_distance(np.ones(50), lambda q: q)
