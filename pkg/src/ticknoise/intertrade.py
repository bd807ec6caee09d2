"""Inter-trade duration models, samplers and Laplace images.

All three families -- exponential, Weibull(beta), generalized gamma
(vartheta, beta) -- are normalized so the mean duration is exactly one; the
scale factor is a ratio of gamma functions of the shape parameters.  The
Weibull family is the generalized-gamma diagonal vartheta = beta, and the
exponential sits at vartheta = beta = 1.

Laplace images f^(s) = integral f(tau) e^(-s tau) dtau are available on two
routes:

* analytic, for the exponential, for beta = 1 (plain gamma densities) and
  for beta in {1/2, 1/3, 2/3}, where the image is a finite combination of
  confluent / generalized hypergeometric series;
* numeric, adaptive quadrature of the defining integral with the oscillatory
  part handled by cosine/sine-weighted rules, truncated where the survival
  probability drops below 1e-12.

The numeric route is the ground truth: the analytic expressions are only
trusted because the cross-validation suite checks them against quadrature on
a parameter grid (see ticknoise.validation).  The hypergeometric series also
lose roughly e^|z| in precision at oscillatory arguments, so the analytic
branch bails out to quadrature once its series argument exceeds
_SERIES_RADIUS (|z| = 18 keeps the loss under ~1e-8).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

import numpy as np
from scipy import integrate

from .errors import DomainError
from .specfun import (
    DEFAULT_SERIES,
    SeriesControl,
    _sum_series_vec,
    gen_hypergeometric,
    kummer_phi,
    log_gamma,
    regularized_gamma_q,
)

_SERIES_RADIUS = 18.0
_SURVIVAL_FLOOR = 1e-12


@dataclass(frozen=True)
class Exponential:
    pass


@dataclass(frozen=True)
class Weibull:
    beta: float

    def __post_init__(self):
        if not (self.beta > 0):
            raise DomainError(f"Weibull shape beta = {self.beta} must be positive")


@dataclass(frozen=True)
class GGD:
    vartheta: float
    beta: float

    def __post_init__(self):
        if not (self.vartheta > 0 and self.beta > 0):
            raise DomainError("GGD shapes vartheta and beta must be positive")


IntertradeDist = Union[Exponential, Weibull, GGD]


def _shapes(dist: IntertradeDist) -> tuple[float, float]:
    """(vartheta, beta) of the generalized-gamma form of `dist`."""
    if isinstance(dist, Exponential):
        return 1.0, 1.0
    if isinstance(dist, Weibull):
        return dist.beta, dist.beta
    if isinstance(dist, GGD):
        return dist.vartheta, dist.beta
    raise DomainError(f"unknown inter-trade distribution {dist!r}")


def normalize_scale(dist: IntertradeDist) -> float:
    """Scale factor lambda giving the distribution unit mean."""
    th, beta = _shapes(dist)
    return float(np.exp(log_gamma((1.0 + th) / beta) - log_gamma(th / beta)))


def pdf(dist: IntertradeDist, tau):
    """Duration density at tau >= 0."""
    th, beta = _shapes(dist)
    lam = normalize_scale(dist)
    tau = np.asarray(tau, dtype=float)
    u = lam * np.where(tau > 0, tau, 1.0)
    norm = lam * beta / np.exp(log_gamma(th / beta))
    out = np.where(tau > 0, norm * u ** (th - 1.0) * np.exp(-(u**beta)), 0.0)
    if th == 1.0:
        out = np.where(tau == 0, lam * beta / np.exp(log_gamma(th / beta)), out)
    return float(out) if out.ndim == 0 else out


def survival(dist: IntertradeDist, tau):
    """Probability that a duration exceeds tau."""
    th, beta = _shapes(dist)
    lam = normalize_scale(dist)
    a = th / beta

    def _one(t: float) -> float:
        if t < 0:
            raise DomainError("tau must be >= 0")
        if t == 0.0:
            return 1.0
        return regularized_gamma_q(a, (lam * t) ** beta)

    arr = np.asarray(tau, dtype=float)
    if arr.ndim == 0:
        return _one(float(arr))
    return np.array([_one(float(t)) for t in arr.ravel()]).reshape(arr.shape)


def sample_durations(dist: IntertradeDist, n: int, seed: int) -> np.ndarray:
    """n iid unit-mean durations, via the exact gamma power transform."""
    if n < 1:
        raise DomainError("n must be >= 1")
    th, beta = _shapes(dist)
    lam = normalize_scale(dist)
    rng = np.random.default_rng(seed)
    g = rng.gamma(th / beta, 1.0, size=n)
    return g ** (1.0 / beta) / lam


@lru_cache(maxsize=64)
def tail_cutoff(dist: IntertradeDist, floor: float = _SURVIVAL_FLOOR) -> float:
    """tau beyond which the survival probability is below `floor`."""
    lo, hi = 1.0, 2.0
    while survival(dist, hi) > floor:
        lo, hi = hi, hi * 2.0
        if hi > 1e9:
            raise DomainError("survival tail does not decay; bad shape parameters")
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if survival(dist, mid) > floor:
            lo = mid
        else:
            hi = mid
    return hi


def _is(x: float, target: float) -> bool:
    return abs(x - target) < 1e-12


def _b_pair(k: int) -> tuple[float, float]:
    return ((2 * k + 1) ** 2 + 7) / 24.0, (41 - (2 * k - 5) ** 2) / 24.0


def _image_half(th: float, s: complex, ctl: SeriesControl) -> complex:
    # beta = 1/2; argument of the confluent series is 1/(4s)
    z = 1.0 / (4.0 * s)
    g2t = math.exp(log_gamma(2.0 * th))
    out = math.exp(log_gamma(th)) * kummer_phi(th, 0.5, z, ctl)
    out -= s ** (-0.5) * math.exp(log_gamma(th + 0.5)) * kummer_phi(th + 0.5, 1.5, z, ctl)
    return out / (2.0 * g2t * s**th)


def _image_third(th: float, s: complex, ctl: SeriesControl) -> complex:
    # beta = 1/3; argument -1/(27s)
    z = -1.0 / (27.0 * s)
    total = 0.0 + 0.0j
    for k in range(3):
        b1, b2 = _b_pair(k)
        coef = (-1.0) ** k * 2.0 ** ((k + 1) * (2 - k) / 2.0) * math.exp(log_gamma(th + k / 3.0))
        total += coef * s ** (-k / 3.0) * gen_hypergeometric([th + k / 3.0], [b1, b2], z, ctl)
    return total / (6.0 * math.exp(log_gamma(3.0 * th)) * s**th)


def _image_two_thirds(th: float, s: complex, ctl: SeriesControl) -> complex:
    # beta = 2/3; argument -4/(27 s^2)
    z = -4.0 / (27.0 * s * s)
    total = 0.0 + 0.0j
    for k in range(3):
        b1, b2 = _b_pair(k)
        a1 = th / 2.0 + ((6 * k - 5) ** 2 + 47) / 144.0
        a2 = th / 2.0 + k * (13 - 3 * k) / 12.0
        coef = (-1.0) ** k * 2.0 ** ((k + 1) * (2 - k) / 2.0) * math.exp(log_gamma(th + 2.0 * k / 3.0))
        total += coef * s ** (-2.0 * k / 3.0) * gen_hypergeometric([a1, a2], [b1, b2], z, ctl)
    return total / (3.0 * math.exp(log_gamma(1.5 * th)) * s**th)


def _analytic_argument(beta: float, s_scaled: complex) -> complex:
    if _is(beta, 0.5):
        return 1.0 / (4.0 * s_scaled)
    if _is(beta, 1.0 / 3.0):
        return -1.0 / (27.0 * s_scaled)
    return -4.0 / (27.0 * s_scaled * s_scaled)


def has_analytic_image(dist: IntertradeDist) -> bool:
    _, beta = _shapes(dist)
    return any(_is(beta, t) for t in (1.0, 0.5, 1.0 / 3.0, 2.0 / 3.0))


def _laplace_numeric(dist: IntertradeDist, s: complex, rel_tol: float = 1e-11) -> complex:
    sr, si = s.real, abs(s.imag)
    sign = 1.0 if s.imag >= 0 else -1.0
    tau_max = tail_cutoff(dist)
    th, beta = _shapes(dist)
    lam = normalize_scale(dist)
    norm = lam * beta / math.exp(log_gamma(th / beta))

    def damped(t):
        if t <= 0.0:
            return 0.0
        u = lam * t
        return norm * u ** (th - 1.0) * math.exp(-(u**beta) - sr * t)

    t_split = min(1.0, tau_max)
    re1, _ = integrate.quad(lambda t: damped(t) * math.cos(si * t), 0.0, t_split,
                            epsabs=1e-12, epsrel=rel_tol, limit=400)
    im1, _ = integrate.quad(lambda t: damped(t) * math.sin(si * t), 0.0, t_split,
                            epsabs=1e-12, epsrel=rel_tol, limit=400)
    re2 = im2 = 0.0
    if tau_max > t_split:
        if si * (tau_max - t_split) > 8.0:
            re2, _ = integrate.quad(damped, t_split, tau_max, weight="cos", wvar=si,
                                    epsabs=1e-12, epsrel=rel_tol, limit=2000)
            im2, _ = integrate.quad(damped, t_split, tau_max, weight="sin", wvar=si,
                                    epsabs=1e-12, epsrel=rel_tol, limit=2000)
        else:
            re2, _ = integrate.quad(lambda t: damped(t) * math.cos(si * t), t_split, tau_max,
                                    epsabs=1e-12, epsrel=rel_tol, limit=400)
            im2, _ = integrate.quad(lambda t: damped(t) * math.sin(si * t), t_split, tau_max,
                                    epsabs=1e-12, epsrel=rel_tol, limit=400)
    return complex(re1 + re2, -sign * (im1 + im2))


def laplace_image(dist: IntertradeDist, s, ctl: SeriesControl = DEFAULT_SERIES) -> complex:
    """f^(s) for Re(s) >= 0, via the analytic branch when it is accurate."""
    s = complex(s)
    if s.real < 0:
        raise DomainError("laplace_image requires Re(s) >= 0")
    if s == 0:
        return 1.0 + 0.0j
    th, beta = _shapes(dist)
    if isinstance(dist, Exponential):
        return 1.0 / (1.0 + s)
    if _is(beta, 1.0):
        # gamma density: closed form image
        return (1.0 + s / normalize_scale(dist)) ** (-th)
    if _is(beta, 0.5) or _is(beta, 1.0 / 3.0) or _is(beta, 2.0 / 3.0):
        s_scaled = s / normalize_scale(dist)
        z = _analytic_argument(beta, s_scaled)
        if abs(z) <= min(ctl.z_max, _SERIES_RADIUS):
            if _is(beta, 0.5):
                return _image_half(th, s_scaled, ctl)
            if _is(beta, 1.0 / 3.0):
                return _image_third(th, s_scaled, ctl)
            return _image_two_thirds(th, s_scaled, ctl)
    return _laplace_numeric(dist, s)


def laplace_image_grid(dist: IntertradeDist, omegas: np.ndarray,
                       ctl: SeriesControl = DEFAULT_SERIES) -> np.ndarray:
    """f^(i omega) on an array of frequencies, vectorizing the series branch.

    Identical branch policy to `laplace_image`; grid points that fall outside
    the series envelope are evaluated by quadrature one at a time.
    """
    omegas = np.asarray(omegas, dtype=float)
    out = np.empty(omegas.shape, dtype=complex)
    zero = omegas == 0.0
    out[zero] = 1.0
    live = ~zero
    if not live.any():
        return out
    w = omegas[live]
    th, beta = _shapes(dist)
    if isinstance(dist, Exponential):
        out[live] = 1.0 / (1.0 + 1j * w)
        return out
    if _is(beta, 1.0):
        out[live] = (1.0 + 1j * w / normalize_scale(dist)) ** (-th)
        return out
    if has_analytic_image(dist):
        lam = normalize_scale(dist)
        s_scaled = 1j * w / lam
        z = _analytic_argument(beta, s_scaled)
        ok = np.abs(z) <= min(ctl.z_max, _SERIES_RADIUS)
        vals = np.empty(w.shape, dtype=complex)
        if ok.any():
            ss, zz = s_scaled[ok], z[ok]
            if _is(beta, 0.5):
                acc = math.exp(log_gamma(th)) * _sum_series_vec((th,), (0.5,), zz, ctl)
                acc -= ss ** (-0.5) * math.exp(log_gamma(th + 0.5)) * _sum_series_vec(
                    (th + 0.5,), (1.5,), zz, ctl)
                vals[ok] = acc / (2.0 * math.exp(log_gamma(2.0 * th)) * ss**th)
            elif _is(beta, 1.0 / 3.0):
                acc = np.zeros(zz.shape, dtype=complex)
                for k in range(3):
                    b1, b2 = _b_pair(k)
                    coef = (-1.0) ** k * 2.0 ** ((k + 1) * (2 - k) / 2.0) * math.exp(
                        log_gamma(th + k / 3.0))
                    acc += coef * ss ** (-k / 3.0) * _sum_series_vec(
                        (th + k / 3.0,), (b1, b2), zz, ctl)
                vals[ok] = acc / (6.0 * math.exp(log_gamma(3.0 * th)) * ss**th)
            else:
                acc = np.zeros(zz.shape, dtype=complex)
                for k in range(3):
                    b1, b2 = _b_pair(k)
                    a1 = th / 2.0 + ((6 * k - 5) ** 2 + 47) / 144.0
                    a2 = th / 2.0 + k * (13 - 3 * k) / 12.0
                    coef = (-1.0) ** k * 2.0 ** ((k + 1) * (2 - k) / 2.0) * math.exp(
                        log_gamma(th + 2.0 * k / 3.0))
                    acc += coef * ss ** (-2.0 * k / 3.0) * _sum_series_vec(
                        (a1, a2), (b1, b2), zz, ctl)
                vals[ok] = acc / (3.0 * math.exp(log_gamma(1.5 * th)) * ss**th)
        for i in np.flatnonzero(~ok):
            vals[i] = _laplace_numeric(dist, 1j * w[i])
        out[live] = vals
        return out
    for i, wi in zip(np.flatnonzero(live), w):
        out[i] = _laplace_numeric(dist, 1j * wi)
    return out
