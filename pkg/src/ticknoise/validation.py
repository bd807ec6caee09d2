"""Oracle cross-validation suite behind the `validate` CLI command.

Every check compares an implementation path against an independent route
(closed form, high-accuracy series, quadrature of a defining integral, or a
deterministic fixture) and reports {check_name, target, actual, tolerance,
pass}.  The suite is deterministic and runs in well under a minute.
"""

from __future__ import annotations

import math

import numpy as np

from .arfima import ArfimaParams, correlation_exact, correlation_powerlaw, ma_coefficients
from .bounce import AmplitudeParams, BounceParams, amplitude_pdf, bounce_corr, inverse_moment
from .config import RunConfig
from .errors import TickNoiseError
from .intertrade import GGD, Exponential, _laplace_numeric, laplace_image, normalize_scale
from .montecarlo import EventStream, delayed_product_integral, simulate_stream
from .spectral import (
    DelayKernel,
    cross_volatility,
    excess_series_zero,
    excess_spectrum,
    excess_spectrum_zero,
    noise_strength_delta,
    volatility_density,
)
from .specfun import kummer_phi, log_gamma
from .tick_model import (
    ModelParams,
    abs_moment_product,
    abs_moment_product_theta1,
    quadratic_approx,
    simulate_ticks,
)


def _check(name: str, target: float, actual: float, tolerance: float) -> dict:
    return {
        "check_name": name,
        "target": float(target),
        "actual": float(actual),
        "tolerance": float(tolerance),
        "pass": bool(abs(actual - target) <= tolerance),
    }


def _kummer_transformation() -> dict:
    rng = np.random.default_rng(20260808)
    worst = 0.0
    for _ in range(40):
        a = rng.uniform(0.2, 3.0)
        b = rng.uniform(0.3, 3.5)
        z = complex(rng.uniform(-10, 10), rng.uniform(-10, 10))
        if abs(z) > 10:
            z = z / abs(z) * 10
        lhs = kummer_phi(a, b, z)
        rhs = np.exp(z) * kummer_phi(b - a, b, -z)
        worst = max(worst, abs(lhs - rhs) / max(abs(lhs), 1e-30))
    return _check("kummer_transformation_identity", 0.0, worst, 1e-10)


def _laplace_cross_validation() -> dict:
    worst = 0.0
    s_values = [base + off for base in (0.5, 1.0, 2.0) for off in (0.0, 1.0j, 5.0j)]
    for th in (0.4, 0.6, 0.8, 1.0, 1.2):
        for beta in (0.5, 1.0 / 3.0, 2.0 / 3.0):
            dist = GGD(th, beta)
            for s in s_values:
                diff = abs(laplace_image(dist, s) - _laplace_numeric(dist, complex(s)))
                worst = max(worst, diff)
    return _check("laplace_analytic_vs_quadrature", 0.0, worst, 1e-6)


def _arfima_series_consistency() -> dict:
    # truncated coefficient series with an integral tail correction
    d, m, trunc = 0.25, 1, 1_000_000
    a = ma_coefficients(d, trunc + m)
    num = float(a[:-m] @ a[m:])
    den = float(a[: trunc + 1] @ a[: trunc + 1])
    g2 = math.exp(2.0 * log_gamma(d))
    tail = trunc ** (2 * d - 1.0) / ((1.0 - 2 * d) * g2)
    actual = (num + tail) / (den + tail)
    return _check("arfima_exact_vs_coefficient_series", correlation_exact(d, m), actual, 1e-8)


def _arfima_ratio_oracle() -> dict:
    worst = 0.0
    for d in np.arange(0.05, 0.46, 0.05):
        for m in range(1, 51):
            ratio = correlation_exact(float(d), m) / correlation_powerlaw(1.0 - 2.0 * float(d), m)
            worst = max(worst, abs(ratio - 1.0))
    # frozen independent evaluation of the same maximum (gamma-function oracle)
    return _check("arfima_powerlaw_ratio_max", 0.014188596572, worst, 1e-9)


def _sign_branch_identity() -> dict:
    worst = 0.0
    for q in (0.0, 0.1, 0.2, 0.3, 0.4):
        qt = math.log(1.0 / abs(2 * q - 1.0)) if q != 0.5 else float("inf")
        for m in range(1, 20):
            two_branch = math.exp(-qt * m) * (-1.0) ** m
            worst = max(worst, abs(two_branch - bounce_corr(q, m)))
    return _check("sign_memory_two_branch_identity", 0.0, worst, 1e-14)


def _inverse_moment_quadrature() -> dict:
    from scipy.integrate import quad

    worst = 0.0
    for mu in (4.0, 5.0, 6.0):
        for theta in (0.5, 1.0, 1.5, 2.0, 3.0):
            p = AmplitudeParams(mu, 1.0)
            val, _ = quad(lambda e: e ** (-theta) * amplitude_pdf(e, p), 0.0, np.inf,
                          epsabs=1e-13, epsrel=1e-12)
            worst = max(worst, abs(inverse_moment(theta, p) / val - 1.0))
    return _check("inverse_moment_vs_quadrature", 0.0, worst, 1e-8)


def _theta1_closed_form() -> dict:
    worst = 0.0
    for rho in (0.1, 0.3, 0.5, 0.7, 0.9):
        worst = max(worst, abs(abs_moment_product(1.0, rho) - abs_moment_product_theta1(rho)))
    return _check("abs_moment_theta1_closed_form", 0.0, worst, 1e-8)


def _quadratic_bound() -> dict:
    worst = 0.0
    for theta in (0.5, 1.0, 1.5):
        f0 = abs_moment_product(theta, 0.0)
        for rho in np.linspace(0.01, 0.5, 50):
            ftil = abs_moment_product(theta, float(rho)) - f0
            worst = max(worst, abs(quadratic_approx(theta, float(rho)) / ftil - 1.0))
    return _check("quadratic_kernel_worst_error", 0.049816660, worst, 1e-6)


def _bzero_series(params: tuple[float, float, float], tol: float) -> dict:
    alpha, mu, q = params
    p = ModelParams(ArfimaParams.from_alpha(alpha), BounceParams(q), AmplitudeParams(mu, 1.0))
    quad_route = excess_spectrum_zero(p)
    series_route = excess_series_zero(p)
    return _check(f"excess_zero_series_alpha{alpha:g}_q{q:g}", series_route, quad_route, tol)


def _bzero_dist_independence() -> dict:
    p = ModelParams(ArfimaParams.from_alpha(0.1), BounceParams(0.1), AmplitudeParams(4.0, 1.0))
    vals = [excess_spectrum(p, dist, 0.0)
            for dist in (Exponential(), GGD(0.8, 2.0 / 3.0), GGD(0.8, 0.5))]
    return _check("excess_zero_distribution_independence", 0.0, max(vals) - min(vals), 1e-6)


def _lambda_half_identity() -> dict:
    worst = 0.0
    for th in (0.4, 0.6, 0.8, 1.0, 1.2):
        closed = 2.0 * th * (1.0 + 2.0 * th)
        worst = max(worst, abs(normalize_scale(GGD(th, 0.5)) / closed - 1.0))
    return _check("ggd_half_scale_closed_form", 0.0, worst, 1e-12)


def _epps_duality() -> dict:
    p = ModelParams(ArfimaParams.from_alpha(0.2), BounceParams(0.1), AmplitudeParams(4.0, 1.0))
    dist = Exponential()
    worst = 0.0
    for delta in (0.5, 1.0, 5.0):
        a = cross_volatility(p, dist, DelayKernel(0.0), delta)
        b = volatility_density(p, dist, delta)
        worst = max(worst, abs(a - b))
    return _check("delay_free_cross_equals_volatility", 0.0, worst, 1e-12)


def _fixtures() -> list[dict]:
    stream = EventStream(times=np.array([1.0]), returns=np.array([0.7]), horizon=3.0)
    disjoint = delayed_product_integral(stream, zeta=0.30, delta=0.25)
    overlap = delayed_product_integral(stream, zeta=0.10, delta=0.25)
    ratio = overlap / (0.7**2 * 0.25)
    return [
        _check("single_tick_disjoint_product", 0.0, disjoint, 0.0),
        _check("single_tick_overlap_ratio", (0.25 - 0.10) / 0.25, ratio, 1e-12),
    ]


def _mc_smoke(cfg: RunConfig) -> list[dict]:
    p = cfg.model_params()
    dist = cfg.intertrade_dist()
    horizon = min(cfg.horizon, 20_000.0)
    counts, variances = [], []
    for seed in cfg.seeds()[:4]:
        stream = simulate_stream(p, dist, horizon, seed)
        counts.append(len(stream.times) / horizon)
        variances.append(float(np.mean(stream.returns**2)))
    rate = float(np.mean(counts))
    rate_se = float(np.std(counts, ddof=1) / math.sqrt(len(counts))) or 1e-3
    e2 = inverse_moment(2.0, p.amplitude)
    var = float(np.mean(variances))
    var_se = float(np.std(variances, ddof=1) / math.sqrt(len(variances))) or 1e-3
    return [
        _check("stream_mean_rate", 1.0, rate, 3.0 * rate_se),
        _check("tick_variance_vs_inverse_moment", e2, var, 3.0 * var_se),
    ]


def run_validation(cfg: RunConfig | None = None) -> list[dict]:
    cfg = cfg or RunConfig()
    checks = [
        _kummer_transformation(),
        _laplace_cross_validation(),
        _arfima_series_consistency(),
        _arfima_ratio_oracle(),
        _sign_branch_identity(),
        _inverse_moment_quadrature(),
        _theta1_closed_form(),
        _quadratic_bound(),
        _bzero_series((0.2, 5.0, 0.1), 1e-5),
        _bzero_series((0.1, 4.0, 0.0), 1e-5),
        _bzero_dist_independence(),
        _lambda_half_identity(),
        _epps_duality(),
    ]
    checks.extend(_fixtures())
    try:
        checks.extend(_mc_smoke(cfg))
    except TickNoiseError as exc:
        checks.append({"check_name": "mc_smoke", "target": 0.0, "actual": float("nan"),
                       "tolerance": 0.0, "pass": False, "error": str(exc)})
    return checks
