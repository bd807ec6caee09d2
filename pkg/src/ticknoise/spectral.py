"""Calendar-time analytics: spectra, windowed correlations, noise and Epps curves.

Everything in this module reduces to two deterministic quadratures.

1.  The relative excess spectrum b(omega) of the instantaneous-return
    correlation (the spectrum is proportional to 1 + b(omega)).  Summing the
    lagged correlation against the renewal convolution powers gives

        b(w) = -(2 c gamma / Gamma(alpha)) *
               int_0^inf v^(alpha-1) Re[ f^ / (e^v + c f^) ] dv,
        c = 1 - 2q,   f^ = f^(i w),

    which is evaluated with a Gauss-Jacobi rule absorbing the v^(alpha-1)
    weight near zero plus Gauss-Legendre panels out to v = 40 (the integrand
    decays like e^-v; e^-40 is far below every tolerance used here).  At
    w = 0 the image equals one for every unit-mean duration law, which is why
    the zero-frequency value -- and hence the noise strength -- does not
    depend on the duration shape.

2.  Frequency integrals against the window kernel
    T~_W(w) = (4/w^2) sin^2(w W / 2):  windowed autocovariances, volatility
    densities and delayed cross-volatilities.  These use composite
    Gauss-Legendre panels sized to the fastest oscillation (default eight
    panels per period).  The pure window part integrates in closed form
    (its cosine transform is the triangle), so only the b-weighted part is
    quadratured; the neglected tail beyond omega_max is bounded by
    4 max|b| / omega_max and kept as a reported diagnostic.

b(omega) is computed once per (model, duration-law, quadrature) triple on a
master grid, then interpolated with a cubic spline; grid density is chosen so
the interpolation error sits well below the quadrature tolerances (the table
records a measured bound).  All results are deterministic in the inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
import numpy as np
from scipy.interpolate import CubicSpline
from scipy.special import roots_jacobi, roots_legendre

from .bounce import AmplitudeParams, inverse_moment
from .curves import CorrelationCurve
from .errors import DegenerateModelError, DomainError
from .intertrade import IntertradeDist, laplace_image, laplace_image_grid
from .specfun import log_gamma
from .tick_model import ModelParams
from .arfima import powerlaw_prefactor

_V_MAX = 40.0


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and grid policy for the spectral quadratures."""

    rel_tol: float = 1e-8
    omega_max: float = 200.0
    panels_per_period: int = 8
    panel_nodes: int = 8
    jacobi_nodes: int = 64
    legendre_nodes: int = 24
    master_step: float = 0.05
    master_geo_points: int = 160

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.omega_max > 0):
            raise DomainError("rel_tol and omega_max must be positive")
        if min(self.panels_per_period, self.panel_nodes, self.jacobi_nodes,
               self.legendre_nodes, self.master_geo_points) < 2:
            raise DomainError("quadrature node counts must be >= 2")

    def u_max(self, alpha: float) -> float:
        """Upper limit of the power-substituted integral, from the e^v tail bound."""
        return _V_MAX**alpha


DEFAULT_QUAD = QuadratureSpec()


@dataclass(frozen=True)
class DelayKernel:
    """Gaussian inter-asset delay of standard deviation lam (lam = 0: no delay)."""

    lam: float

    def __post_init__(self):
        if self.lam < 0:
            raise DomainError("delay scale must be >= 0")

    def kappa_tilde(self, omega):
        """Spectrum of the delay density: exp(-omega^2 lam^2 / 2)."""
        w = np.asarray(omega, dtype=float)
        out = np.exp(-(w * self.lam) ** 2 / 2.0)
        return float(out) if out.ndim == 0 else out


def _check_spectral_q(q: float) -> None:
    if not (0.0 <= q <= 0.5):
        raise DomainError(f"spectral operations require q in [0, 1/2], got {q}")


@lru_cache(maxsize=32)
def _v_rule(alpha: float, jac_n: int, leg_n: int):
    """Nodes/weights for int_0^inf v^(alpha-1) h(v) dv with h smooth, decaying."""
    xj, wj = roots_jacobi(jac_n, 0.0, alpha - 1.0)
    vj = xj + 1.0                       # jacobi weight (1+x)^(alpha-1) on [-1, 1] -> [0, 2]
    xl, wl = roots_legendre(leg_n)
    edges = np.linspace(2.0, _V_MAX, 11)
    vl = np.concatenate([(a + b) / 2.0 + (b - a) / 2.0 * xl for a, b in zip(edges[:-1], edges[1:])])
    wl_full = np.concatenate([(b - a) / 2.0 * wl for a, b in zip(edges[:-1], edges[1:])])
    wl_full = wl_full * vl ** (alpha - 1.0)   # explicit weight away from the singularity
    return vj, wj, vl, wl_full


def gamma_for(alpha: float, amplitude: AmplitudeParams) -> float:
    e1 = inverse_moment(1.0, amplitude)
    e2 = inverse_moment(2.0, amplitude)
    return powerlaw_prefactor(alpha) * e1 * e1 / e2


def _excess_values(fhat: np.ndarray, alpha: float, q: float, gamma: float,
                   qspec: QuadratureSpec) -> np.ndarray:
    """b(omega) for an array of Laplace-image values (vectorized over omega)."""
    c = 1.0 - 2.0 * q
    if c == 0.0:
        return np.zeros(np.shape(fhat), dtype=float)
    f = np.asarray(fhat, dtype=complex)[..., None]
    if alpha == 0.0:
        z = -c * f[..., 0]
        return gamma * 2.0 * np.real(z / (1.0 - z))
    vj, wj, vl, wl = _v_rule(alpha, qspec.jacobi_nodes, qspec.legendre_nodes)
    hj = np.real(f / (np.exp(vj) + c * f))
    hl = np.real(f / (np.exp(vl) + c * f))
    integral = hj @ wj + hl @ wl
    return -2.0 * c * gamma / math.exp(log_gamma(alpha)) * integral


def excess_spectrum_scalars(alpha: float, q: float, amplitude: AmplitudeParams,
                            fhat: complex, qspec: QuadratureSpec = DEFAULT_QUAD) -> float:
    """b at a single frequency given the duration image value there.

    Accepts alpha in [0, 1): the alpha = 0 limit sums the memoryless-factor
    geometric series in closed form (used by the noise-strength figures).
    """
    if not (0.0 <= alpha < 1.0):
        raise DomainError(f"alpha = {alpha} outside [0, 1)")
    _check_spectral_q(q)
    gamma = gamma_for(alpha, amplitude)
    return float(_excess_values(np.asarray(fhat, dtype=complex), alpha, q, gamma, qspec))


def excess_spectrum(p: ModelParams, dist: IntertradeDist, omega: float,
                    qspec: QuadratureSpec = DEFAULT_QUAD) -> float:
    """Relative excess spectrum b(omega) for omega >= 0."""
    if omega < 0:
        raise DomainError("omega must be >= 0")
    fhat = laplace_image(dist, 1j * omega)
    return excess_spectrum_scalars(p.alpha, p.bounce.q, p.amplitude, fhat, qspec)


def excess_spectrum_zero(p: ModelParams, qspec: QuadratureSpec = DEFAULT_QUAD) -> float:
    """b(0); duration-law independent since every unit-mean image equals 1 at 0."""
    return excess_spectrum_scalars(p.alpha, p.bounce.q, p.amplitude, 1.0 + 0.0j, qspec)


def excess_series_zero(p: ModelParams, terms: int = 1_000_000) -> float:
    """Independent series route to b(0): 2 sum_m (2q-1)^m gamma m^(-alpha).

    For q = 0 the series alternates and converges slowly; averaging the last
    two partial sums bounds the remainder by the term difference, far below
    the direct term-size bound.  Cross-validates the quadrature route.
    """
    _check_spectral_q(p.bounce.q)
    gamma = gamma_for(p.alpha, p.amplitude)
    m = np.arange(1, terms + 1, dtype=float)
    t = (2.0 * p.bounce.q - 1.0) ** np.arange(1, terms + 1) * m ** (-p.alpha)
    s_last = t.sum()
    s_prev = s_last - t[-1]
    return 2.0 * gamma * 0.5 * (s_last + s_prev)


def triangle_spectrum(delta: float, omega):
    """Window-kernel spectrum (4/w^2) sin^2(w delta / 2), = delta^2 at w = 0."""
    if not (delta > 0):
        raise DomainError("delta must be positive")
    w = np.asarray(omega, dtype=float)
    out = delta**2 * np.sinc(w * delta / (2.0 * math.pi)) ** 2
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True, eq=False)
class SpectrumTable:
    """b(omega) sampled on a master grid with a spline for off-grid reads."""

    omega: np.ndarray
    excess: np.ndarray
    spline: CubicSpline
    interp_error: float
    tail_level: float

    def __call__(self, w):
        return self.spline(w)


def _master_grid(qspec: QuadratureSpec) -> np.ndarray:
    geo = np.geomspace(1e-3, 1.0, qspec.master_geo_points, endpoint=False)
    lin = np.arange(1.0, qspec.omega_max + qspec.master_step / 2.0, qspec.master_step)
    return np.concatenate([[0.0], geo, lin])


@lru_cache(maxsize=16)
def _fhat_master(dist: IntertradeDist, qspec: QuadratureSpec):
    """Duration-law image on the master grid; shared by every model using `dist`."""
    grid = _master_grid(qspec)
    probes = 0.5 * (grid[1:] + grid[:-1])[:: max(len(grid) // 16, 1)]
    return grid, laplace_image_grid(dist, grid), probes, laplace_image_grid(dist, probes)


@lru_cache(maxsize=16)
def _spectrum_table(p: ModelParams, dist: IntertradeDist, qspec: QuadratureSpec) -> SpectrumTable:
    _check_spectral_q(p.bounce.q)
    grid, fhat, probes, fhat_probes = _fhat_master(dist, qspec)
    gamma = gamma_for(p.alpha, p.amplitude)
    vals = _excess_values(fhat, p.alpha, p.bounce.q, gamma, qspec)
    spline = CubicSpline(grid, vals)
    # measured interpolation error at off-grid probes
    direct = _excess_values(fhat_probes, p.alpha, p.bounce.q, gamma, qspec)
    interp_error = float(np.max(np.abs(spline(probes) - direct))) if len(probes) else 0.0
    tail_level = float(np.max(np.abs(vals[grid > 0.9 * qspec.omega_max]))) if len(grid) else 0.0
    return SpectrumTable(grid, vals, spline, interp_error, tail_level)


def spectrum_table(p: ModelParams, dist: IntertradeDist,
                   qspec: QuadratureSpec = DEFAULT_QUAD) -> SpectrumTable:
    return _spectrum_table(p, dist, qspec)


def _panel_rule(omega_max: float, fastest_period_scale: float, qspec: QuadratureSpec):
    """Composite Gauss-Legendre nodes on [0, omega_max], panels per oscillation period."""
    period = 2.0 * math.pi / max(fastest_period_scale, 1e-12)
    width = period / qspec.panels_per_period
    n_panels = max(int(math.ceil(omega_max / width)), 4)
    n_panels = min(n_panels, 2_000_000 // qspec.panel_nodes)
    edges = np.linspace(0.0, omega_max, n_panels + 1)
    xl, wl = roots_legendre(qspec.panel_nodes)
    half = np.diff(edges) / 2.0
    mid = (edges[:-1] + edges[1:]) / 2.0
    nodes = (mid[:, None] + half[:, None] * xl[None, :]).ravel()
    weights = (half[:, None] * wl[None, :]).ravel()
    return nodes, weights


def eps2(p: ModelParams) -> float:
    return inverse_moment(2.0, p.amplitude)


def window_acf_curve(p: ModelParams, dist: IntertradeDist, delta: float, taus,
                     qspec: QuadratureSpec = DEFAULT_QUAD) -> CorrelationCurve:
    """K_W(tau) on a tau grid: covariance of window-delta returns in calendar time.

    Split as (pure window part, exact) + (b-weighted part, panel quadrature):
    the pure part's cosine transform is the triangle itself.
    """
    if not (delta > 0):
        raise DomainError("delta must be positive")
    taus = np.asarray(taus, dtype=float)
    table = spectrum_table(p, dist, qspec)
    nodes, weights = _panel_rule(qspec.omega_max, delta + float(np.max(np.abs(taus))), qspec)
    tri = triangle_spectrum(delta, nodes)
    weighted = weights * tri * table(nodes)
    cosines = np.cos(np.outer(taus, nodes))
    part_b = cosines @ weighted
    part_tri = np.pi * np.maximum(delta - np.abs(taus), 0.0)
    e2 = eps2(p)
    return CorrelationCurve(taus, e2 / math.pi * (part_tri + part_b))


def window_acf(p: ModelParams, dist: IntertradeDist, delta: float, tau: float,
               qspec: QuadratureSpec = DEFAULT_QUAD) -> float:
    """K_W(tau) at a single lag; even in tau; K_W(0) = delta * volatility density."""
    return float(window_acf_curve(p, dist, delta, [abs(tau)], qspec).y[0])


def window_acf_tail_bound(p: ModelParams, dist: IntertradeDist,
                          qspec: QuadratureSpec = DEFAULT_QUAD) -> float:
    """Bound on the neglected omega > omega_max contribution to any K_W value."""
    table = spectrum_table(p, dist, qspec)
    return eps2(p) / math.pi * 4.0 * table.tail_level / qspec.omega_max


def volatility_density(p: ModelParams, dist: IntertradeDist, delta: float,
                       qspec: QuadratureSpec = DEFAULT_QUAD) -> float:
    """D(delta) = K_W(0) / delta, the mean squared window return per unit time."""
    return window_acf(p, dist, delta, 0.0, qspec) / delta


def true_volatility(p: ModelParams, qspec: QuadratureSpec = DEFAULT_QUAD) -> float:
    """Large-window limit eps2 * (1 + b(0)); raises if the model is degenerate."""
    base = 1.0 + excess_spectrum_zero(p, qspec)
    if not (base > 0.0):
        raise DegenerateModelError(f"1 + b(0) = {base} is not positive")
    return eps2(p) * base


def noise_strength(p: ModelParams, qspec: QuadratureSpec = DEFAULT_QUAD) -> float:
    """S = small-window over large-window volatility = 1 / (1 + b(0)) >= 1."""
    return eps2(p) / true_volatility(p, qspec)


def noise_strength_scalars(alpha: float, q: float, amplitude: AmplitudeParams,
                           qspec: QuadratureSpec = DEFAULT_QUAD) -> float:
    """Noise strength from bare scalars; admits the alpha = 0 limit."""
    base = 1.0 + excess_spectrum_scalars(alpha, q, amplitude, 1.0 + 0.0j, qspec)
    if not (base > 0.0):
        raise DegenerateModelError(f"1 + b(0) = {base} is not positive")
    return 1.0 / base


def noise_strength_delta(p: ModelParams, dist: IntertradeDist, delta: float,
                         qspec: QuadratureSpec = DEFAULT_QUAD) -> float:
    """S_W = D(delta) / D_true; decreasing from S at delta -> 0 toward 1."""
    return volatility_density(p, dist, delta, qspec) / true_volatility(p, qspec)


def cross_volatility(p: ModelParams, dist: IntertradeDist, kernel: DelayKernel,
                     delta: float, qspec: QuadratureSpec = DEFAULT_QUAD) -> float:
    """Delayed-pair volatility density D_12(delta).

    lam = 0 reduces to the volatility density by the identical code path
    (the delay spectrum is then identically one).
    """
    if not (delta > 0):
        raise DomainError("delta must be positive")
    if kernel.lam == 0.0:
        return volatility_density(p, dist, delta, qspec)
    w_need = 8.6 / kernel.lam
    if w_need > qspec.omega_max and kernel.lam < 0.05:
        raise DomainError(
            f"delay scale {kernel.lam} needs omega_max >= {w_need:.1f}; raise omega_max")
    w_eff = min(qspec.omega_max, w_need)
    table = spectrum_table(p, dist, qspec)
    nodes, weights = _panel_rule(w_eff, delta, qspec)
    integrand = (1.0 + table(nodes)) * kernel.kappa_tilde(nodes) * triangle_spectrum(delta, nodes)
    return eps2(p) / (math.pi * delta) * float(weights @ integrand)


def epps_curve(p: ModelParams, dist: IntertradeDist, kernel: DelayKernel, delta_grid,
               qspec: QuadratureSpec = DEFAULT_QUAD) -> CorrelationCurve:
    """Normalized delayed cross-volatility S12(delta) over a window grid."""
    delta_grid = np.asarray(delta_grid, dtype=float)
    if np.any(delta_grid <= 0):
        raise DomainError("delta grid must be positive")
    d_true = true_volatility(p, qspec)
    vals = np.array([cross_volatility(p, dist, kernel, float(d), qspec) / d_true
                     for d in delta_grid])
    return CorrelationCurve(delta_grid, vals)
