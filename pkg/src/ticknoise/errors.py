"""Exception types shared across the package."""


class TickNoiseError(Exception):
    """Base class for all package-specific errors."""


class DomainError(TickNoiseError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ConvergenceError(TickNoiseError, RuntimeError):
    """A series or quadrature failed to reach its stopping criterion."""


class TruncationError(TickNoiseError, ValueError):
    """The moving-average cutoff leaves more tail mass than the caller allows."""


class DegenerateModelError(TickNoiseError, ArithmeticError):
    """A derived quantity is degenerate (e.g. non-positive long-scale variance)."""


class InsufficientDataError(TickNoiseError, ValueError):
    """Not enough samples or windows to form the requested estimate."""


class ConfigError(TickNoiseError, ValueError):
    """Invalid configuration file or command-line parameter."""
