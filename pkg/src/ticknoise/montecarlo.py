"""Event-stream simulation and the empirical estimators that cross-check the
analytic layer.

The estimators mirror their analytic targets exactly:

* `realized_volatility` sums squared window returns over the non-overlapping
  grid k*delta, k = 1..floor(T/delta), divided by T.  Its expectation is
  floor(T/delta)*delta/T times the volatility density, i.e. the finite-T
  bias is at most delta/T and vanishes when delta divides T; the estimator
  is reported exactly as defined, not bias-corrected.
* `empirical_acf` works in tick lags (products of tick returns) or on the
  window grid (products of window returns j*delta apart).
* `empirical_epps` builds the delayed twin stream by shifting every tick
  time of a realization by one Gaussian draw, and normalizes the cross
  window products by the same realization's large-window realized
  volatility, so the simulation bias of the long-memory factor cancels in
  the ratio.

Window membership is right-closed: a tick at exactly k*delta belongs to
window k.  Window sums touch only occupied windows (group reduction on the
sorted window indices), so small windows over long horizons stay cheap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import seeding
from .curves import CorrelationCurve
from .errors import DomainError, InsufficientDataError
from .intertrade import IntertradeDist, sample_durations
from .tick_model import ModelParams, simulate_ticks

_MIN_WINDOWS = 30


@dataclass(frozen=True)
class EventStream:
    """Tick times (strictly increasing, within (0, T]) and their returns."""

    times: np.ndarray
    returns: np.ndarray
    horizon: float

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        if t.size and (np.any(np.diff(t) <= 0) or t[0] <= 0 or t[-1] > self.horizon):
            raise DomainError("times must be strictly increasing within (0, horizon]")
        if t.shape != np.shape(self.returns):
            raise DomainError("times and returns must align")


@dataclass(frozen=True)
class EstimatorResult:
    value: float
    std_error: float
    n_effective: int


def simulate_stream(p: ModelParams, dist: IntertradeDist, horizon: float, seed: int) -> EventStream:
    """One realization over (0, horizon]; durations and marks independent."""
    if not (horizon > 0):
        raise DomainError("horizon must be positive")
    rng = np.random.default_rng(seeding.child_seed(seed, seeding.STREAM_DURATION))
    chunks = []
    total = 0.0
    need = int(horizon + 10.0 * math.sqrt(horizon) + 100.0)
    while total <= horizon:
        block = _draw_durations(dist, rng, need)
        chunks.append(block)
        total += float(block.sum())
        need = max(need // 4, 1000)
    times = np.cumsum(np.concatenate(chunks))
    times = times[times <= horizon]
    ticks = simulate_ticks(p, len(times), seed)
    return EventStream(times=times, returns=ticks.returns, horizon=float(horizon))


def _draw_durations(dist: IntertradeDist, rng: np.random.Generator, n: int) -> np.ndarray:
    # same transform as intertrade.sample_durations, driven by a live generator
    from .intertrade import _shapes, normalize_scale

    th, beta = _shapes(dist)
    g = rng.gamma(th / beta, 1.0, size=n)
    return g ** (1.0 / beta) / normalize_scale(dist)


def _window_count(horizon: float, delta: float) -> int:
    # relative guard keeps exact-ratio cases (1e6 / 0.01) from losing a window
    return int(math.floor(horizon / delta * (1.0 + 1e-12) + 1e-9))


def _window_sums(times: np.ndarray, values: np.ndarray, delta: float, n_windows: int):
    """(occupied window indices, their value sums); windows are (k-1)d < t <= kd."""
    idx = np.ceil(times / delta - 1e-12).astype(np.int64)
    keep = (idx >= 1) & (idx <= n_windows)
    idx, vals = idx[keep], values[keep]
    if idx.size == 0:
        return idx, vals
    starts = np.flatnonzero(np.diff(idx)) + 1
    starts = np.concatenate([[0], starts])
    return idx[starts], np.add.reduceat(vals, starts)


def realized_volatility(stream: EventStream, delta: float) -> EstimatorResult:
    """Time-averaged squared window returns over the grid k*delta."""
    if not (0 < delta <= stream.horizon):
        raise DomainError("delta must lie in (0, horizon]")
    n_win = _window_count(stream.horizon, delta)
    if n_win < _MIN_WINDOWS:
        raise InsufficientDataError(f"only {n_win} windows; need >= {_MIN_WINDOWS}")
    _, sums = _window_sums(stream.times, stream.returns, delta, n_win)
    sq = sums * sums
    total = float(sq.sum())
    value = total / stream.horizon
    mean_sq = total / n_win
    var_sq = float((sq * sq).sum()) / n_win - mean_sq * mean_sq
    std_error = math.sqrt(max(var_sq, 0.0) * n_win) / stream.horizon
    return EstimatorResult(value=value, std_error=std_error, n_effective=n_win)


def empirical_acf(data, max_lag: int, mode: str = "tick",
                  delta: float | None = None) -> CorrelationCurve:
    """Sample lagged products of tick returns or of window returns.

    Tick mode: y[m] = mean of r_k r_{k+m} (returns have zero mean by
    construction, so no centering).  Calendar mode: y[j] = mean of
    R(k delta) R((k+j) delta) over the window grid, abscissa j*delta.
    """
    if max_lag < 0:
        raise DomainError("max_lag must be >= 0")
    if mode == "tick":
        x = np.asarray(data.returns if hasattr(data, "returns") else data, dtype=float)
        if x.size - max_lag < _MIN_WINDOWS:
            raise InsufficientDataError("series too short for the requested lags")
        from . import backend

        sums = backend.lagged_products(x, max_lag)
        counts = x.size - np.arange(max_lag + 1)
        return CorrelationCurve(np.arange(max_lag + 1, dtype=float), sums / counts)
    if mode != "calendar":
        raise DomainError(f"unknown mode {mode!r}")
    if delta is None or delta <= 0:
        raise DomainError("calendar mode needs a positive delta")
    stream: EventStream = data
    n_win = _window_count(stream.horizon, delta)
    if n_win - max_lag < _MIN_WINDOWS:
        raise InsufficientDataError("not enough windows for the requested lags")
    idx, sums = _window_sums(stream.times, stream.returns, delta, n_win)
    out = np.empty(max_lag + 1)
    for j in range(max_lag + 1):
        if j == 0:
            prod = float((sums * sums).sum())
        else:
            pos = np.searchsorted(idx, idx + j)
            pos = np.minimum(pos, idx.size - 1)
            hit = idx[pos] == idx + j
            valid = hit & (idx + j <= n_win)
            prod = float((sums[valid] * sums[pos[valid]]).sum())
        out[j] = prod / (n_win - j)
    return CorrelationCurve(np.arange(max_lag + 1, dtype=float) * delta, out)


def delayed_product_integral(stream: EventStream, zeta: float, delta: float) -> float:
    """Exact integral over all t of R_w(t) * R_w^shifted(t), window length delta.

    The window return of the original stream is sum of r_j over windows
    anchored at t_j; the twin shifts every anchor by zeta.  Intended for
    small deterministic fixtures (quadratic cost in tick count): with a
    single tick the integral is r^2 * max(delta - |zeta|, 0), zero whenever
    |zeta| >= delta.
    """
    t = stream.times
    r = stream.returns
    total = 0.0
    for j in range(t.size):
        lo_j, hi_j = t[j], t[j] + delta
        for k in range(t.size):
            lo_k, hi_k = t[k] + zeta, t[k] + zeta + delta
            overlap = min(hi_j, hi_k) - max(lo_j, lo_k)
            if overlap > 0:
                total += r[j] * r[k] * overlap
    return total


def empirical_epps(p: ModelParams, dist: IntertradeDist, lam: float, delta_grid,
                   horizon: float, seeds, delta_ref: float | None = None) -> CorrelationCurve:
    """Empirical normalized cross-volatility of a stream and its delayed twin.

    One Gaussian delay draw per realization shifts all twin tick times; the
    per-seed curve is the cross window product estimator divided by the same
    seed's realized volatility at `delta_ref` (default horizon/100, capped at
    1000), and seeds are pooled into mean and standard error.
    """
    if lam < 0:
        raise DomainError("lam must be >= 0")
    delta_grid = np.asarray(delta_grid, dtype=float)
    if np.any(delta_grid <= 0):
        raise DomainError("delta grid must be positive")
    seeds = list(seeds)
    if len(seeds) < 2:
        raise InsufficientDataError("need at least two seeds to pool a standard error")
    if delta_ref is None:
        delta_ref = min(horizon / 100.0, 1000.0)
    ratios = np.empty((len(seeds), delta_grid.size))
    for i, seed in enumerate(seeds):
        stream = simulate_stream(p, dist, horizon, seed)
        zeta = 0.0
        if lam > 0:
            zeta = lam * float(np.random.default_rng(
                seeding.child_seed(seed, seeding.STREAM_DELAY)).standard_normal())
        d_ref = realized_volatility(stream, delta_ref).value
        shifted = stream.times + zeta
        for k, delta in enumerate(delta_grid):
            ratios[i, k] = _cross_product_estimate(stream, shifted, float(delta)) / d_ref
    mean = ratios.mean(axis=0)
    stderr = ratios.std(axis=0, ddof=1) / math.sqrt(len(seeds))
    return CorrelationCurve(delta_grid, mean, stderr)


def _cross_product_estimate(stream: EventStream, shifted_times: np.ndarray, delta: float) -> float:
    """(1/T) sum_k R1(k delta) R2(k delta) over the window grid."""
    n_win = _window_count(stream.horizon, delta)
    if n_win < _MIN_WINDOWS:
        raise InsufficientDataError(f"only {n_win} windows at delta = {delta}")
    idx1, sums1 = _window_sums(stream.times, stream.returns, delta, n_win)
    order = np.argsort(shifted_times, kind="stable")
    idx2, sums2 = _window_sums(shifted_times[order], stream.returns[order], delta, n_win)
    pos = np.searchsorted(idx2, idx1)
    pos = np.minimum(pos, max(idx2.size - 1, 0))
    if idx2.size == 0:
        return 0.0
    hit = idx2[pos] == idx1
    return float((sums1[hit] * sums2[pos[hit]]).sum()) / stream.horizon
