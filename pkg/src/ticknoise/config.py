"""Run configuration: flat key = value files plus command-line overrides.

Grammar of a config file: one `key = value` pair per line, `#` starts a
comment, blank lines ignored.  Keys match the command-line flag names with
underscores (e.g. `delta_grid = 0.1, 1, 10`).  Flags win over file values.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields, replace
from typing import Optional

from .bounce import AmplitudeParams, BounceParams
from .arfima import ArfimaParams
from .errors import ConfigError, DomainError, TickNoiseError
from .intertrade import GGD, Exponential, IntertradeDist, Weibull
from .spectral import DelayKernel, QuadratureSpec
from .tick_model import ModelParams

_DIST_NAMES = ("exponential", "weibull", "ggd")


@dataclass(frozen=True)
class RunConfig:
    alpha: Optional[float] = 0.4
    d: Optional[float] = None
    q: float = 0.1
    mu: float = 4.0
    b: float = 1.0
    dist: str = "exponential"
    vartheta: float = 0.8
    beta: float = 2.0 / 3.0
    lam: float = 1.0
    delta_grid: tuple = (0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0)
    horizon: float = 20_000.0
    seed: int = 7
    n_seeds: int = 8
    threads: int = 0
    trunc: int = 10_000
    tail_tol: Optional[float] = None
    rel_tol: float = 1e-8
    omega_max: float = 200.0
    max_lag: int = 20
    delta: float = 1.0
    tau_max: float = 5.0
    tau_points: int = 101
    omega_plot_max: float = 20.0
    omega_points: int = 201
    out: str = "-"

    def __post_init__(self):
        if (self.alpha is None) == (self.d is None):
            raise ConfigError("exactly one of alpha/d must be set")
        a = self.alpha if self.alpha is not None else 1.0 - 2.0 * self.d
        if not (0.0 <= a < 1.0):
            raise ConfigError(f"alpha = {a} outside [0, 1)")
        if not (0.0 <= self.q <= 1.0):
            raise ConfigError(f"q = {self.q} outside [0, 1]")
        if not (self.mu > 2.0):
            raise ConfigError(f"mu = {self.mu} must exceed 2")
        if not (self.b > 0):
            raise ConfigError(f"b = {self.b} must be positive")
        if self.dist not in _DIST_NAMES:
            raise ConfigError(f"dist must be one of {_DIST_NAMES}, got {self.dist!r}")
        if self.lam < 0:
            raise ConfigError("lambda must be >= 0")
        if not all(x > 0 for x in self.delta_grid):
            raise ConfigError("delta_grid entries must be positive")
        if not (self.horizon > 0):
            raise ConfigError("T must be positive")
        if self.n_seeds < 1:
            raise ConfigError("seeds must be >= 1")

    @property
    def effective_alpha(self) -> float:
        return self.alpha if self.alpha is not None else 1.0 - 2.0 * self.d

    def arfima_tail_tol(self) -> float:
        """Explicit tail_tol, or the achieved tail at this (d, trunc) plus headroom.

        The library default (1e-4) is unreachable for strong long memory at
        any feasible cutoff, so the CLI opts out by measuring the actual
        truncated tail; `simulate` reports the figure on stderr.
        """
        if self.tail_tol is not None:
            return self.tail_tol
        from .arfima import truncation_tail

        d = self.d if self.d is not None else (1.0 - self.alpha) / 2.0
        return max(1e-4, truncation_tail(d, self.trunc) * 1.0000001)

    def model_params(self) -> ModelParams:
        arf = ArfimaParams(
            d=self.d if self.d is not None else (1.0 - self.effective_alpha) / 2.0,
            trunc=self.trunc, tail_tol=self.arfima_tail_tol())
        return ModelParams(arf, BounceParams(self.q), AmplitudeParams(self.mu, self.b))

    def intertrade_dist(self) -> IntertradeDist:
        if self.dist == "exponential":
            return Exponential()
        if self.dist == "weibull":
            return Weibull(self.beta)
        return GGD(self.vartheta, self.beta)

    def qspec(self) -> QuadratureSpec:
        return QuadratureSpec(rel_tol=self.rel_tol, omega_max=self.omega_max)

    def kernel(self) -> DelayKernel:
        return DelayKernel(self.lam)

    def seeds(self) -> list[int]:
        return [self.seed + 1000 * i for i in range(self.n_seeds)]


_FLOAT_KEYS = {"alpha", "d", "q", "mu", "b", "vartheta", "beta", "lam", "horizon",
               "tail_tol", "rel_tol", "omega_max", "delta", "tau_max", "omega_plot_max"}
_INT_KEYS = {"seed", "n_seeds", "threads", "trunc", "max_lag", "tau_points", "omega_points"}
_ALIASES = {"lambda": "lam", "t": "horizon", "T": "horizon", "seeds": "n_seeds"}


def _parse_value(key: str, raw: str):
    raw = raw.strip()
    try:
        if key == "delta_grid":
            return tuple(float(v) for v in raw.replace(",", " ").split())
        if key in _FLOAT_KEYS:
            return float(raw)
        if key in _INT_KEYS:
            return int(raw)
        return raw
    except ValueError as exc:
        raise ConfigError(f"bad value for {key}: {raw!r}") from exc


def parse_config_file(path: str) -> dict:
    values: dict = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    for lineno, line in enumerate(lines, start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {body!r}")
        key, raw = body.split("=", 1)
        key = _ALIASES.get(key.strip(), key.strip())
        known = {f.name for f in fields(RunConfig)}
        if key not in known:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = _parse_value(key, raw)
    return values


def build_config(file_values: dict, overrides: dict) -> RunConfig:
    merged = dict(file_values)
    merged.update({k: v for k, v in overrides.items() if v is not None})
    if "d" in merged and merged.get("d") is not None and "alpha" not in merged:
        merged["alpha"] = None
    try:
        return RunConfig(**merged)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc
    except (DomainError, TickNoiseError) as exc:
        raise ConfigError(str(exc)) from exc
