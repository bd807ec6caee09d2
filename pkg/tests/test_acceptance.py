"""Acceptance gate: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -s` to see the lines as they
complete.  Parameter choices that the criteria leave open are pinned here
and documented next to each test.
"""

import time

import numpy as np
import pytest

from ticknoise.arfima import correlation_exact, correlation_powerlaw
from ticknoise.bounce import inverse_moment
from ticknoise.intertrade import GGD, Exponential, _laplace_numeric, laplace_image
from ticknoise.montecarlo import (
    EventStream,
    delayed_product_integral,
    empirical_epps,
    realized_volatility,
    simulate_stream,
)
from ticknoise.spectral import (
    DelayKernel,
    epps_curve,
    excess_spectrum,
    excess_spectrum_zero,
    noise_strength,
    noise_strength_delta,
    true_volatility,
    window_acf_curve,
)
from ticknoise.tick_model import ModelParams, abs_moment_product, abs_return_corr, quadratic_approx


def report(num: int, ok: bool, detail: str, elapsed: float, budget: float) -> bool:
    status = "PASS" if ok and elapsed < budget else "FAIL"
    print(f"ACCEPTANCE {num}: {status} [{elapsed:.1f}s/{budget:.0f}s] {detail}")
    return ok and elapsed < budget


def test_criterion_1_arfima_powerlaw_bound():
    # exact-vs-power-law correlation ratio over d in {0.05..0.45}, m in 1..50.
    # The true maximum of |rho_m / varrho_m - 1| on this grid is 0.0141886
    # (at d = 0.2, m = 1), slightly above the stated 1.4 percent; the
    # criterion is asserted as written and fails by that margin.
    t0 = time.time()
    worst = 0.0
    for d in np.arange(0.05, 0.46, 0.05):
        m = np.arange(1, 51)
        ratio = correlation_exact(float(d), m) / correlation_powerlaw(1.0 - 2 * float(d), m)
        worst = max(worst, float(np.max(np.abs(ratio - 1.0))))
    ok = report(1, worst <= 0.014, f"max |rho/varrho - 1| = {worst:.7f} <= 0.014",
                time.time() - t0, 1.0)
    assert ok


def test_criterion_2_quadratic_approximation_bound():
    t0 = time.time()
    worst, arg = 0.0, None
    for theta in (0.5, 1.0, 1.5):
        f0 = abs_moment_product(theta, 0.0)
        for rho in np.linspace(0.01, 0.5, 50):
            centered = abs_moment_product(theta, float(rho)) - f0
            err = abs(quadratic_approx(theta, float(rho)) / centered - 1.0)
            if err > worst:
                worst, arg = err, (theta, round(float(rho), 2))
    ok = worst <= 0.05 and arg == (0.5, 0.5)
    assert report(2, ok, f"max |G/F - 1| = {worst:.5f} at (theta, rho) = {arg}",
                  time.time() - t0, 10.0)


def test_criterion_3_absolute_return_powerlaw_slope():
    t0 = time.time()
    p = ModelParams.from_scalars(alpha=0.1, q=0.1, mu=4.0)
    m = np.arange(1, 101)
    vals = np.array([abs_return_corr(p, 1.0, int(k), "exact") for k in m])
    slope = float(np.polyfit(np.log(m), np.log(vals), 1)[0])
    ok = abs(slope - (-0.2)) <= 0.02
    assert report(3, ok, f"log-log slope = {slope:.4f}, target -0.2 +/- 0.02",
                  time.time() - t0, 10.0)


def test_criterion_4_zero_frequency_distribution_independence():
    t0 = time.time()
    p = ModelParams.from_scalars(alpha=0.1, q=0.1, mu=4.0)
    vals = [excess_spectrum(p, dist, 0.0)
            for dist in (Exponential(), GGD(0.8, 2.0 / 3.0), GGD(0.8, 0.5))]
    spread = max(vals) - min(vals)
    assert report(4, spread <= 1e-6, f"b(0) spread across duration laws = {spread:.2e}",
                  time.time() - t0, 30.0)


def test_criterion_5_laplace_image_cross_validation():
    t0 = time.time()
    worst = 0.0
    s_values = [base + off for base in (0.5, 1.0, 2.0) for off in (0.0, 1.0j, 5.0j)]
    for vartheta in (0.4, 0.6, 0.8, 1.0, 1.2):
        for beta in (0.5, 1.0 / 3.0, 2.0 / 3.0):
            dist = GGD(vartheta, beta)
            for s in s_values:
                diff = abs(laplace_image(dist, s) - _laplace_numeric(dist, complex(s)))
                worst = max(worst, diff)
    assert report(5, worst <= 1e-6,
                  f"max |analytic - quadrature| = {worst:.2e} over 5x3x9 grid",
                  time.time() - t0, 60.0)


def test_criterion_6_noise_strength_family():
    # S_delta leg pinned at q = 0.2 with exponential durations: for q > 0 the
    # correlation tail decays exponentially, which the 0.5 percent target at
    # delta = 1000 presumes
    t0 = time.time()
    s_half = noise_strength(ModelParams.from_scalars(alpha=0.2, q=0.5, mu=5.0))
    strengths = [noise_strength(ModelParams.from_scalars(alpha=0.2, q=q, mu=5.0))
                 for q in (0.0, 0.1, 0.2, 0.3, 0.4, 0.5)]
    p = ModelParams.from_scalars(alpha=0.2, q=0.2, mu=5.0)
    deltas = (1.0, 3.0, 10.0, 30.0, 100.0, 300.0, 1000.0)
    s_delta = [noise_strength_delta(p, Exponential(), d) for d in deltas]
    ok = (
        s_half == 1.0
        and all(b < a for a, b in zip(strengths, strengths[1:]))
        and all(b < a for a, b in zip(s_delta, s_delta[1:]))
        and abs(s_delta[-1] - 1.0) <= 0.005
    )
    assert report(6, ok,
                  f"S(q=1/2) = {s_half}, S decreasing over q, "
                  f"S_d(1000) = {s_delta[-1]:.5f} within 0.5%",
                  time.time() - t0, 60.0)


def test_criterion_7_realized_volatility_limits():
    # parameters are free here; alpha = 0.5 keeps the moving-average cutoff
    # bias orders below the Monte Carlo resolution, mu = 5 keeps fourth
    # moments finite for clean pooling; 16 seeds, horizon 1e6
    t0 = time.time()
    p = ModelParams.from_scalars(alpha=0.5, q=0.1, mu=5.0, trunc=10_000, tail_tol=2e-3)
    dist = Exponential()
    horizon = 1_000_000.0
    micro, macro = [], []
    for seed in range(1000, 1016):
        stream = simulate_stream(p, dist, horizon, seed)
        micro.append(realized_volatility(stream, 0.01).value)
        macro.append(realized_volatility(stream, 1000.0).value)
    e2 = inverse_moment(2.0, p.amplitude)
    d_true = true_volatility(p)
    micro_mean, micro_se = np.mean(micro), np.std(micro, ddof=1) / 4.0
    macro_mean, macro_se = np.mean(macro), np.std(macro, ddof=1) / 4.0
    ok = (abs(micro_mean - e2) <= 3.0 * micro_se
          and abs(macro_mean - d_true) <= 3.0 * macro_se)
    assert report(
        7, ok,
        f"D(0.01) = {micro_mean:.5f} +- {micro_se:.5f} vs eps2 = {e2:.5f}; "
        f"D(1000) = {macro_mean:.5f} +- {macro_se:.5f} vs D_true = {d_true:.5f}",
        time.time() - t0, 600.0)


def test_criterion_8_epps_curve():
    # duration law pinned to the clustered generalized-gamma (0.8, 1/3),
    # whose image is one of the shipped analytic families; the empirical leg
    # runs at lambda = 1 with per-seed large-window normalization
    t0 = time.time()
    p = ModelParams.from_scalars(alpha=0.1, q=0.0, mu=4.0, trunc=10_000, tail_tol=1.2)
    dist = GGD(0.8, 1.0 / 3.0)
    ok = True
    detail = []
    common = epps_curve(p, dist, DelayKernel(1.0), [2.0]).y[0]
    for lam in (1.0, 2.0, 3.0):
        grid = np.geomspace(lam / 10.0, 50.0 * lam, 10)
        curve = epps_curve(p, dist, DelayKernel(lam), grid)
        lo, hi = curve.y[0], curve.y[-1]
        mono = bool(np.all(np.diff(curve.y) > 0))
        ok &= lo < 0.05 and hi > 0.95 and mono
        detail.append(f"lam={lam:g}: S12({lam/10:g})={lo:.4f} S12({50*lam:g})={hi:.4f}")
        if lam > 1.0:
            at2 = epps_curve(p, dist, DelayKernel(lam), [2.0]).y[0]
            ok &= at2 < common
            common = at2
    emp_grid = np.geomspace(0.2, 100.0, 10)
    emp = empirical_epps(p, dist, 1.0, emp_grid, 200_000.0, range(2000, 2016),
                         delta_ref=1000.0)
    ana = epps_curve(p, dist, DelayKernel(1.0), emp_grid)
    dev = np.abs(emp.y - ana.y) / np.maximum(emp.yerr, 1e-12)
    ok &= bool(np.all(dev <= 3.0))
    assert report(8, ok, "; ".join(detail) + f"; empirical max |dev|/se = {dev.max():.2f}",
                  time.time() - t0, 600.0)


def test_criterion_9_window_correlation_negative_range():
    t0 = time.time()
    dist = GGD(0.8, 2.0 / 3.0)
    taus = np.arange(1.2, 2.001, 0.1)
    ok = True
    for q in (0.0, 0.1, 0.2, 0.3):
        p = ModelParams.from_scalars(alpha=0.1, q=q, mu=4.0)
        curve = window_acf_curve(p, dist, 1.0, np.concatenate([[0.0], taus]))
        ratio = curve.y[1:] / curve.y[0]
        ok &= bool(np.all(ratio < 0.0))
    assert report(9, ok, "K(tau)/K(0) < 0 on tau in [1.2, 2.0] for q in {0,.1,.2,.3}",
                  time.time() - t0, 60.0)


def test_criterion_10_delayed_window_fixtures():
    t0 = time.time()
    stream = EventStream(times=np.array([3.0]), returns=np.array([1.1]), horizon=10.0)
    disjoint = delayed_product_integral(stream, zeta=0.5, delta=0.4)
    delta, zeta = 0.4, 0.15
    cross = delayed_product_integral(stream, zeta, delta)
    auto = delayed_product_integral(stream, 0.0, delta)
    ratio_err = abs(cross / auto - (delta - zeta) / delta)
    ok = disjoint == 0.0 and ratio_err <= 1e-12
    assert report(10, ok,
                  f"disjoint product = {disjoint}, overlap ratio error = {ratio_err:.2e}",
                  time.time() - t0, 1.0)
