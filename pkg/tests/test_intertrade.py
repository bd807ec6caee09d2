import math

import numpy as np
import pytest
from scipy import stats
from scipy.integrate import quad
from scipy.special import gammaln

from ticknoise.errors import DomainError
from ticknoise.intertrade import (
    GGD,
    Exponential,
    Weibull,
    _laplace_numeric,
    laplace_image,
    laplace_image_grid,
    normalize_scale,
    pdf,
    sample_durations,
    survival,
    tail_cutoff,
)


class TestScale:
    def test_weibull_exponential_case(self):
        assert normalize_scale(Weibull(1.0)) == pytest.approx(1.0, rel=1e-14)

    def test_weibull_half(self):
        assert normalize_scale(Weibull(0.5)) == pytest.approx(2.0, rel=1e-13)

    def test_ggd_collapses_to_weibull(self):
        for beta in (0.5, 0.8, 1.7):
            assert normalize_scale(GGD(beta, beta)) == pytest.approx(
                normalize_scale(Weibull(beta)), rel=1e-14)

    def test_half_family_closed_form(self):
        for th in (0.4, 0.6, 0.8, 1.0, 1.2):
            closed = 2.0 * th * (1.0 + 2.0 * th)
            assert normalize_scale(GGD(th, 0.5)) == pytest.approx(closed, rel=1e-12)

    def test_mean_is_one(self):
        for dist in (Exponential(), Weibull(0.8), GGD(0.8, 2.0 / 3.0), GGD(1.3, 1.5)):
            mean, _ = quad(lambda t: survival(dist, t), 0.0, np.inf, limit=300,
                           epsabs=1e-11, epsrel=1e-10)
            assert mean == pytest.approx(1.0, abs=1e-8)


class TestSurvival:
    def test_at_zero(self):
        for dist in (Exponential(), Weibull(0.7), GGD(0.8, 0.5)):
            assert survival(dist, 0.0) == 1.0

    def test_weibull_closed_form(self):
        beta = 0.8
        lam = normalize_scale(Weibull(beta))
        for tau in (0.2, 1.0, 4.0):
            assert survival(Weibull(beta), tau) == pytest.approx(
                math.exp(-((lam * tau) ** beta)), rel=1e-11)

    def test_monotone(self):
        taus = np.linspace(0.0, 12.0, 200)
        for dist in (GGD(0.8, 2.0 / 3.0), Weibull(1.6)):
            q = survival(dist, taus)
            assert np.all(np.diff(q) < 0)

    def test_heavier_tail_for_smaller_beta(self):
        # fixed shape 0.8: at large tau the small-beta curves sit on top
        q13 = survival(GGD(0.8, 1.0 / 3.0), 5.0)
        q12 = survival(GGD(0.8, 0.5), 5.0)
        q23 = survival(GGD(0.8, 2.0 / 3.0), 5.0)
        qw = survival(Weibull(0.8), 5.0)
        assert q13 > q12 > q23 > qw


class TestSampling:
    def test_mean(self):
        taus = sample_durations(GGD(0.8, 2.0 / 3.0), 1_000_000, 3)
        se = taus.std(ddof=1) / math.sqrt(len(taus))
        assert abs(taus.mean() - 1.0) < 3.0 * se

    def test_kolmogorov_vs_survival(self):
        for dist in (Weibull(0.8), GGD(0.8, 0.5)):
            taus = sample_durations(dist, 20_000, 17)
            grid = np.sort(taus)
            cdf_vals = 1.0 - np.asarray(survival(dist, grid))
            res = stats.ks_1samp(taus, lambda x: np.interp(x, grid, cdf_vals))
            assert res.pvalue > 0.01

    def test_dkw_band(self):
        n = 100_000
        dist = GGD(0.8, 2.0 / 3.0)
        taus = np.sort(sample_durations(dist, n, 23))
        emp_surv = 1.0 - np.arange(1, n + 1) / n
        grid_idx = np.linspace(0, n - 1, 400).astype(int)
        model = np.asarray(survival(dist, taus[grid_idx]))
        band = math.sqrt(math.log(2.0 / 0.01) / (2.0 * n))
        assert np.max(np.abs(emp_surv[grid_idx] - model)) < band

    def test_dispersion_index(self):
        # clustering below beta = 1, quasi-periodicity above
        for beta, side in ((0.5, "over"), (2.0, "under")):
            taus = sample_durations(Weibull(beta), 200_000, 31)
            times = np.cumsum(taus)
            counts = np.bincount(times.astype(np.int64))[1:-1]
            index = counts.var() / counts.mean()
            assert index > 1.2 if side == "over" else index < 0.8


class TestLaplace:
    def test_normalized_at_zero(self):
        for dist in (Exponential(), Weibull(0.8), GGD(0.8, 0.5)):
            assert laplace_image(dist, 0.0) == 1.0

    def test_exponential_closed_form(self):
        for w in (0.3, 2.0, 40.0):
            assert laplace_image(Exponential(), 1j * w) == pytest.approx(
                1.0 / (1.0 + 1j * w), rel=1e-14)

    def test_gamma_family_closed_form(self):
        dist = GGD(1.7, 1.0)
        lam = normalize_scale(dist)
        s = 0.4 + 2.3j
        assert laplace_image(dist, s) == pytest.approx((1.0 + s / lam) ** (-1.7), rel=1e-13)

    def test_magnitude_bound(self):
        for dist in (Exponential(), GGD(0.8, 2.0 / 3.0)):
            for w in (0.1, 1.0, 10.0, 120.0):
                assert abs(laplace_image(dist, 1j * w)) <= 1.0 + 1e-12

    def test_domain(self):
        with pytest.raises(DomainError):
            laplace_image(Exponential(), -0.1 + 1j)

    @pytest.mark.parametrize("beta", [0.5, 1.0 / 3.0, 2.0 / 3.0])
    def test_analytic_matches_quadrature(self, beta):
        dist = GGD(0.8, beta)
        for s in (1.0, 1.0 + 2.0j, 0.5 + 5.0j, 3.0j):
            analytic = laplace_image(dist, s)
            numeric = _laplace_numeric(dist, complex(s))
            assert abs(analytic - numeric) < 1e-6

    def test_grid_matches_scalar(self):
        dist = GGD(0.8, 2.0 / 3.0)
        omegas = np.array([0.0, 0.05, 0.3, 1.0, 8.0, 60.0])
        grid_vals = laplace_image_grid(dist, omegas)
        for w, v in zip(omegas, grid_vals):
            assert abs(v - laplace_image(dist, 1j * w)) < 1e-10

    def test_weibull_numeric_branch(self):
        # no analytic image at beta = 0.8; numeric route still normalized
        dist = Weibull(0.8)
        val = laplace_image(dist, 1j * 1.5)
        mean, _ = quad(lambda t: t * pdf(dist, t), 0, tail_cutoff(dist), limit=300)
        assert abs(val) < 1.0
        assert mean == pytest.approx(1.0, abs=1e-8)
        re_o, _ = quad(lambda t: pdf(dist, t) * math.cos(1.5 * t), 0, tail_cutoff(dist), limit=400)
        assert val.real == pytest.approx(re_o, abs=1e-9)


def test_scale_identity_via_gammaln():
    # duplication-style identity for the half family against the gamma ratio
    for th in (0.4, 0.8, 1.2):
        ratio = math.exp(gammaln((1 + th) / 0.5) - gammaln(th / 0.5))
        assert 2.0 * th * (1.0 + 2.0 * th) == pytest.approx(ratio, rel=1e-12)
