"""Composition of the three factors into tick returns, and tick-scale statistics.

A tick return is r_k = X_k M_k / H_k with the long-memory Gaussian factor,
the bounce sign and the amplitude divisor drawn from independent streams.
Analytics shipped here:

* `tick_correlation` -- E[r_k r_{k+m}]: variance eps_2 at lag zero, and for
  m >= 1 the product of the sign memory (2q-1)^m, the power-law factor
  correlation and the squared inverse first moment of the amplitude.
* `abs_moment_product` -- E[|X|^theta |Y|^theta] for standard bivariate
  normals at correlation rho, by adaptive quadrature, with closed forms at
  rho = 0 and rho = 1.
* `abs_return_corr` -- the lag-m autocorrelation of |r|^theta, either
  assembled exactly from the quadrature kernel at the exact factor
  correlation, or in the quadratic (power-law) approximation chi * m^(-2*alpha).
* `abs_corr_theta_profile` -- that correlation as a function of theta,
  normalized to unit maximum; in approximation mode the lag cancels exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from . import seeding
from .arfima import ArfimaParams, correlation_exact, powerlaw_prefactor, sample_path
from .bounce import AmplitudeParams, BounceParams, inverse_moment, sample_amplitude, sample_bounce
from .curves import CorrelationCurve
from .errors import DomainError
from .specfun import log_gamma


@dataclass(frozen=True)
class ModelParams:
    arfima: ArfimaParams
    bounce: BounceParams
    amplitude: AmplitudeParams

    @property
    def alpha(self) -> float:
        return self.arfima.alpha

    @property
    def sigma(self) -> float:
        """Decay exponent of the absolute-return correlation, 2 * alpha."""
        return 2.0 * self.arfima.alpha

    @classmethod
    def from_scalars(cls, alpha: float | None = None, d: float | None = None,
                     q: float = 0.1, mu: float = 4.0, b: float = 1.0,
                     trunc: int = 10_000, tail_tol: float = 1e-4) -> "ModelParams":
        if (alpha is None) == (d is None):
            raise DomainError("give exactly one of alpha or d")
        arf = ArfimaParams.from_alpha(alpha, trunc, tail_tol) if d is None \
            else ArfimaParams(d, trunc, tail_tol)
        return cls(arf, BounceParams(q), AmplitudeParams(mu, b))


@dataclass(frozen=True)
class TickSeries:
    """Aligned factor arrays of one realization; returns = gaussians*signs/amplitudes."""

    returns: np.ndarray
    signs: np.ndarray
    amplitudes: np.ndarray
    gaussians: np.ndarray


def simulate_ticks(p: ModelParams, n: int, seed: int) -> TickSeries:
    """n tick returns; the three factor streams use independent child seeds."""
    x = sample_path(p.arfima, n, seeding.child_seed(seed, seeding.STREAM_GAUSSIAN)).values
    m = sample_bounce(p.bounce.q, n, seeding.child_seed(seed, seeding.STREAM_SIGN))
    h = sample_amplitude(p.amplitude, n, seeding.child_seed(seed, seeding.STREAM_AMPLITUDE))
    return TickSeries(returns=x * m / h, signs=m, amplitudes=h, gaussians=x)


def gamma_coef(p: ModelParams) -> float:
    """Prefactor F(alpha) * eps_1^2 / eps_2 of the lagged return correlation."""
    e1 = inverse_moment(1.0, p.amplitude)
    e2 = inverse_moment(2.0, p.amplitude)
    return powerlaw_prefactor(p.alpha) * e1 * e1 / e2


def tick_correlation(p: ModelParams, m) -> float:
    """E[r_k r_{k+m}]; lag zero gives the variance eps_2, q = 1/2 kills all memory."""
    e2 = inverse_moment(2.0, p.amplitude)
    m_arr = np.asarray(m)
    if np.any(m_arr < 0):
        raise DomainError("lag m must be >= 0")
    q = p.bounce.q
    mf = m_arr.astype(float)
    sign_mem = (2.0 * q - 1.0) ** mf
    body = e2 * gamma_coef(p) * sign_mem * np.maximum(mf, 1.0) ** (-p.alpha)
    out = np.where(m_arr == 0, e2, body)
    return float(out) if out.ndim == 0 else out


def _abs_moment_rho1(theta: float) -> float:
    return 2.0**theta / math.sqrt(math.pi) * math.exp(log_gamma(0.5 + theta))


def _abs_moment_rho0(theta: float) -> float:
    return 2.0**theta / math.pi * math.exp(2.0 * log_gamma((1.0 + theta) / 2.0))


def abs_moment_product(theta: float, rho: float) -> float:
    """E[|X|^theta |Y|^theta], X and Y standard normal with correlation rho.

    Quadrature on [0, pi/2]; exact endpoints at rho = 0 and rho = 1, and the
    rho = 1 closed form is reused above rho = 0.999 where the integrand
    becomes numerically singular.
    """
    if not (theta > 0):
        raise DomainError("theta must be positive")
    if not (0.0 <= rho <= 1.0):
        raise DomainError("rho must lie in [0, 1]")
    if rho == 0.0:
        return _abs_moment_rho0(theta)
    if rho >= 0.999:
        return _abs_moment_rho1(theta)

    def integrand(u: float) -> float:
        s = rho * math.sin(u)
        return ((1.0 + s) ** (-(1.0 + theta)) + (1.0 - s) ** (-(1.0 + theta))) * math.sin(u) ** theta

    val, _ = integrate.quad(integrand, 0.0, math.pi / 2.0, epsabs=1e-13, epsrel=1e-11, limit=200)
    return math.exp(log_gamma(1.0 + theta)) / math.pi * (1.0 - rho * rho) ** (0.5 + theta) * val


def abs_moment_product_theta1(rho: float) -> float:
    """Closed form of the kernel at theta = 1 (oracle for the quadrature path)."""
    if not (0.0 <= rho <= 1.0):
        raise DomainError("rho must lie in [0, 1]")
    return 2.0 / math.pi * (math.sqrt(1.0 - rho * rho) + rho * math.asin(rho))


def quadratic_coefficient(theta: float) -> float:
    """Leading Taylor coefficient g_theta of the centered kernel in rho^2."""
    if not (theta > 0):
        raise DomainError("theta must be positive")
    return float(
        math.exp(log_gamma((1.0 + theta) / 2.0) + log_gamma(theta) - log_gamma(theta / 2.0))
        * theta**2 / math.sqrt(math.pi)
    )


def quadratic_approx(theta: float, rho: float) -> float:
    """Quadratic approximation g_theta * rho^2 of the centered kernel."""
    return quadratic_coefficient(theta) * rho * rho


def _abs_corr_denominator(p: ModelParams, theta: float) -> float:
    e_t = inverse_moment(theta, p.amplitude)
    e_2t = inverse_moment(2.0 * theta, p.amplitude)
    return e_2t * _abs_moment_rho1(theta) - e_t * e_t * _abs_moment_rho0(theta)


def _check_theta(p: ModelParams, theta: float) -> None:
    if not (0.0 < theta < p.amplitude.mu / 2.0):
        raise DomainError(
            f"theta = {theta} outside (0, mu/2 = {p.amplitude.mu / 2.0}): "
            "the normalizing absolute moment diverges"
        )


def abs_corr_coefficient(p: ModelParams, theta: float) -> float:
    """Amplitude chi of the power-law absolute-return correlation chi * m^(-sigma)."""
    _check_theta(p, theta)
    e_t = inverse_moment(theta, p.amplitude)
    pref = powerlaw_prefactor(p.alpha)
    return pref * pref * quadratic_coefficient(theta) * e_t * e_t / _abs_corr_denominator(p, theta)


def abs_return_corr(p: ModelParams, theta: float, m: int, mode: str = "exact") -> float:
    """Lag-m autocorrelation of |r|^theta.

    mode="exact" assembles the quadrature kernel at the exact factor
    correlation; mode="approx" returns the power law chi * m^(-2 alpha).
    """
    _check_theta(p, theta)
    if m < 0:
        raise DomainError("lag m must be >= 0")
    if m == 0:
        return 1.0
    if mode == "approx":
        return abs_corr_coefficient(p, theta) * float(m) ** (-p.sigma)
    if mode != "exact":
        raise DomainError(f"unknown mode {mode!r}")
    rho = correlation_exact(p.arfima.d, m)
    e_t = inverse_moment(theta, p.amplitude)
    centered = abs_moment_product(theta, rho) - _abs_moment_rho0(theta)
    return e_t * e_t * centered / _abs_corr_denominator(p, theta)


def abs_corr_theta_profile(p: ModelParams, theta_grid, m: int, mode: str = "approx") -> CorrelationCurve:
    """Normalized theta-profile of the lag-m absolute-return correlation.

    In approximation mode the m^(-sigma) factor cancels, so the profile is
    the same curve for every lag.
    """
    if m < 1:
        raise DomainError("m must be >= 1")
    theta_grid = np.asarray(theta_grid, dtype=float)
    vals = np.array([abs_return_corr(p, float(t), m, mode) for t in theta_grid])
    peak = vals.max()
    if not (peak > 0):
        raise DomainError("profile has no positive maximum on this grid")
    return CorrelationCurve(theta_grid, vals / peak)
