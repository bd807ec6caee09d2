"""Reproduction of the model's figure families as CSV column sets.

Each builder returns (header, columns) with parameters baked to the figure's
caption; grid ranges are package choices documented here.  Figures showing
single stochastic realizations of the delayed-pair construction are unit
fixtures in the Monte Carlo test layer, not CSV targets.
"""

from __future__ import annotations

import numpy as np

from .arfima import correlation_exact, correlation_powerlaw
from .bounce import AmplitudeParams, BounceParams
from .arfima import ArfimaParams
from .config import RunConfig
from .errors import ConfigError
from .intertrade import GGD, Exponential, Weibull, sample_durations, survival
from .spectral import (
    DelayKernel,
    epps_curve,
    noise_strength_delta,
    noise_strength_scalars,
    spectrum_table,
    window_acf_curve,
)
from .tick_model import (
    ModelParams,
    abs_moment_product,
    abs_return_corr,
    abs_corr_theta_profile,
    quadratic_approx,
    tick_correlation,
)

_GGD_SHAPE = 0.8


def _params(alpha: float, q: float, mu: float) -> ModelParams:
    return ModelParams(ArfimaParams.from_alpha(alpha), BounceParams(q), AmplitudeParams(mu, 1.0))


def _fig1(cfg: RunConfig):
    m = np.arange(0, 21)
    cols = [m.astype(float)]
    header = ["m"]
    for q in (0.1, 0.2, 0.3):
        cols.append(np.asarray(tick_correlation(_params(0.1, q, 4.0), m)))
        header.append(f"K_q{q}")
    return header, cols


def _fig2(cfg: RunConfig):
    m = np.arange(1, 101)
    header, cols = ["m"], [m.astype(float)]
    p = _params(0.1, 0.1, 4.0)
    for theta in (0.5, 1.0, 1.5):
        cols.append(np.array([abs_return_corr(p, theta, int(k), "exact") for k in m]))
        header.append(f"A_theta{theta}")
    return header, cols


def _fig3(cfg: RunConfig):
    grid = np.arange(0.05, 1.451, 0.025)
    header, cols = ["theta"], [grid]
    for mu in (3.0, 4.0, 5.0, 6.0):
        p = _params(0.1, 0.1, mu)
        cols.append(abs_corr_theta_profile(p, grid, m=1).y)
        header.append(f"profile_mu{mu:g}")
    return header, cols


def _fig4(cfg: RunConfig):
    n = 60
    header, cols = ["k"], [np.arange(1, n + 1, dtype=float)]
    for beta in (0.5, 1.0, 2.0):
        taus = sample_durations(Weibull(beta), n, cfg.seed)
        cols.append(np.cumsum(taus))
        header.append(f"t_beta{beta:g}")
    return header, cols


def _fig5(cfg: RunConfig):
    tau = np.arange(0.0, 10.0001, 0.05)
    header, cols = ["tau"], [tau]
    header.append("weibull_beta0.8")
    cols.append(np.asarray(survival(Weibull(0.8), tau)))
    for beta, name in ((1.0 / 3.0, "ggd_beta1_3"), (0.5, "ggd_beta1_2"), (2.0 / 3.0, "ggd_beta2_3")):
        cols.append(np.asarray(survival(GGD(_GGD_SHAPE, beta), tau)))
        header.append(name)
    return header, cols


def _fig6(cfg: RunConfig):
    omega = np.arange(0.0, 20.0001, 0.1)
    p = _params(0.1, 0.1, 4.0)
    header, cols = ["omega"], [omega]
    for dist, name in ((Exponential(), "exponential"),
                       (GGD(_GGD_SHAPE, 0.5), "ggd_beta1_2"),
                       (GGD(_GGD_SHAPE, 2.0 / 3.0), "ggd_beta2_3")):
        table = spectrum_table(p, dist, cfg.qspec())
        cols.append(table(omega))
        header.append(name)
    return header, cols


def _kd_ratio(p, dist, delta, taus, qspec):
    curve = window_acf_curve(p, dist, delta, taus, qspec)
    return curve.y / curve.y[0]


def _fig7(cfg: RunConfig):
    taus = np.arange(0.0, 5.0001, 0.05)
    dist = GGD(_GGD_SHAPE, 2.0 / 3.0)
    header, cols = ["tau"], [taus]
    for q in (0.0, 0.1, 0.2, 0.3):
        cols.append(_kd_ratio(_params(0.1, q, 4.0), dist, 1.0, taus, cfg.qspec()))
        header.append(f"Kratio_q{q:g}")
    return header, cols


def _fig8(cfg: RunConfig):
    taus = np.arange(0.0, 12.0001, 0.05)
    dist = GGD(_GGD_SHAPE, 2.0 / 3.0)
    p = _params(0.1, 0.0, 4.0)
    header, cols = ["tau"], [taus]
    for delta in (1.0, 2.0, 3.0):
        cols.append(_kd_ratio(p, dist, delta, taus, cfg.qspec()))
        header.append(f"Kratio_delta{delta:g}")
    return header, cols


def _strength_family(x_name, x_values, q_values, fixed):
    header, cols = [x_name], [np.asarray(x_values, dtype=float)]
    for q in q_values:
        vals = [noise_strength_scalars(a, q, AmplitudeParams(mu, 1.0))
                for a, mu in fixed(x_values)]
        cols.append(np.array(vals))
        header.append(f"S_q{q:g}")
    return header, cols


def _fig9(cfg: RunConfig):
    alphas = np.arange(0.0, 0.981, 0.02)
    return _strength_family("alpha", alphas, (0.0, 0.1, 0.2, 0.3, 0.4, 0.5),
                            lambda xs: [(float(a), 4.0) for a in xs])


def _fig10(cfg: RunConfig):
    qs = np.arange(0.0, 0.5001, 0.01)
    header, cols = ["q"], [qs]
    for alpha in (0.0, 0.1, 0.2, 0.3, 0.4, 0.5):
        vals = [noise_strength_scalars(alpha, float(q), AmplitudeParams(5.0, 1.0)) for q in qs]
        cols.append(np.array(vals))
        header.append(f"S_alpha{alpha:g}")
    return header, cols


def _fig11(cfg: RunConfig):
    mus = np.arange(2.2, 8.001, 0.1)
    return _strength_family("mu", mus, (0.0, 0.1, 0.2, 0.3, 0.4, 0.5),
                            lambda xs: [(0.2, float(m)) for m in xs])


def _fig12(cfg: RunConfig):
    deltas = np.geomspace(0.01, 1000.0, 26)
    dist = GGD(_GGD_SHAPE, 2.0 / 3.0)
    header, cols = ["delta"], [deltas]
    for q in (0.0, 0.1, 0.2, 0.3, 0.4):
        p = _params(0.1, q, 5.0)
        cols.append(np.array([noise_strength_delta(p, dist, float(d), cfg.qspec())
                              for d in deltas]))
        header.append(f"Sdelta_q{q:g}")
    return header, cols


def _fig15(cfg: RunConfig):
    deltas = np.geomspace(0.1, 150.0, 25)
    dist = GGD(_GGD_SHAPE, 1.0 / 3.0)
    p = _params(0.1, 0.0, 4.0)
    header, cols = ["delta"], [deltas]
    for lam in (1.0, 2.0, 3.0):
        curve = epps_curve(p, dist, DelayKernel(lam), deltas, cfg.qspec())
        cols.append(curve.y)
        header.append(f"S12_lambda{lam:g}")
    return header, cols


def _figA1(cfg: RunConfig):
    d = np.arange(0.01, 0.491, 0.005)
    header, cols = ["d"], [d]
    for m in (1, 2, 3, 10):
        ratio = np.array([correlation_exact(float(dd), m) / correlation_powerlaw(1 - 2 * float(dd), m)
                          for dd in d])
        cols.append(ratio)
        header.append(f"ratio_m{m}")
    return header, cols


def _figA2(cfg: RunConfig):
    d = np.arange(0.005, 0.4951, 0.005)
    rho1 = np.array([correlation_exact(float(dd), 1) for dd in d])
    return ["d", "rho1"], [d, rho1]


def _figA3(cfg: RunConfig):
    rho = np.arange(0.0, 0.5001, 0.01)
    header, cols = ["rho"], [rho]
    for theta in (0.5, 1.0, 1.5):
        f0 = abs_moment_product(theta, 0.0)
        ftil = np.array([abs_moment_product(theta, float(r)) - f0 if r > 0 else 0.0 for r in rho])
        quad = np.array([quadratic_approx(theta, float(r)) for r in rho])
        cols.extend([ftil, quad])
        header.extend([f"centered_theta{theta:g}", f"quadratic_theta{theta:g}"])
    return header, cols


def _figA4(cfg: RunConfig):
    rho = np.arange(0.01, 0.5001, 0.01)
    header, cols = ["rho"], [rho]
    for theta in (0.5, 1.0, 1.5):
        f0 = abs_moment_product(theta, 0.0)
        ratio = np.array([(abs_moment_product(theta, float(r)) - f0)
                          / quadratic_approx(theta, float(r)) for r in rho])
        cols.append(ratio)
        header.append(f"ratio_theta{theta:g}")
    return header, cols


FIGURES = {
    "1": _fig1, "2": _fig2, "3": _fig3, "4": _fig4, "5": _fig5, "6": _fig6,
    "7": _fig7, "8": _fig8, "9": _fig9, "10": _fig10, "11": _fig11, "12": _fig12,
    "15": _fig15, "A1": _figA1, "A2": _figA2, "A3": _figA3, "A4": _figA4,
}


def run_figure(figure_id: str, cfg: RunConfig):
    """(header, columns) for a recognized figure id."""
    key = str(figure_id).strip().upper()
    if key.startswith("FIG"):
        key = key[3:]
    if key not in FIGURES:
        raise ConfigError(f"unknown figure id {figure_id!r}; known: {sorted(FIGURES)}")
    return FIGURES[key](cfg)
