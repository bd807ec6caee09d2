"""Tick-by-tick return model with analytic microstructure-noise and Epps curves.

The model composes a long-memory Gaussian factor, a bounce sign process and
a heavy-tail amplitude divisor into tick returns, places them on renewal
trade times, and ships both the closed-form/calibrated-quadrature analytics
(correlations, spectra, noise strength, delayed cross-volatility) and the
Monte Carlo estimators that cross-validate them.
"""

from .arfima import (
    ArfimaParams,
    GaussianPath,
    correlation_exact,
    correlation_powerlaw,
    ma_coefficients,
    sample_path,
)
from .backend import HAS_NUMBA, USE_NUMBA
from .bounce import (
    AmplitudeParams,
    BounceParams,
    bounce_corr,
    inverse_moment,
    sample_amplitude,
    sample_bounce,
    student_pdf,
)
from .curves import CorrelationCurve
from .errors import (
    ConfigError,
    ConvergenceError,
    DegenerateModelError,
    DomainError,
    InsufficientDataError,
    TickNoiseError,
    TruncationError,
)
from .intertrade import (
    GGD,
    Exponential,
    IntertradeDist,
    Weibull,
    laplace_image,
    normalize_scale,
    sample_durations,
    survival,
)
from .montecarlo import (
    EstimatorResult,
    EventStream,
    empirical_acf,
    empirical_epps,
    realized_volatility,
    simulate_stream,
)
from .specfun import SeriesControl, gen_hypergeometric, kummer_phi, log_gamma, upper_incomplete_gamma
from .spectral import (
    DelayKernel,
    QuadratureSpec,
    cross_volatility,
    epps_curve,
    excess_spectrum,
    excess_spectrum_zero,
    noise_strength,
    noise_strength_delta,
    triangle_spectrum,
    volatility_density,
    window_acf,
    window_acf_curve,
)
from .tick_model import (
    ModelParams,
    TickSeries,
    abs_corr_theta_profile,
    abs_moment_product,
    abs_return_corr,
    quadratic_approx,
    simulate_ticks,
    tick_correlation,
)

__version__ = "0.1.0"
