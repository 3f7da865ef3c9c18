"""EUR time traces, the long-time-average witness, the late-time rate, and scans."""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Literal, Sequence

import numpy as np

from . import kernels
from .dynamics import (
    AntiPTParams,
    GeneralNHParams,
    InitialState,
    Phase,
    System,
    hamiltonian,
    spectrum,
)
from .linalg import traceless_split
from .measure import SX, SZ, Observable, mu_bound

Observables = tuple[Observable, Observable]
DEFAULT_OBSERVABLES: Observables = (SZ, SX)

BETA_WINDOW = (50.0, 150.0)
BETA_POINTS = 10_000
WITNESS_HORIZON = 200.0
POINTS_PER_PERIOD = 20
MIN_WITNESS_POINTS = 2001


def eur_components(
    system: System,
    initial: InitialState,
    times,
    observables: Observables = DEFAULT_OBSERVABLES,
) -> tuple[np.ndarray, np.ndarray]:
    """Entropies ``(H(R), H(Q))`` along a time grid via the Born pipeline."""
    _, m, mu = traceless_split(hamiltonian(system))
    obs_r, obs_q = observables
    p_r, p_q = kernels.born_probabilities(
        m, mu, initial.amplitudes(), np.asarray(times, dtype=float), obs_r.n, obs_q.n
    )
    return kernels.binary_entropy(p_r), kernels.binary_entropy(p_q)


def eur_values(system, initial, times, observables=DEFAULT_OBSERVABLES) -> np.ndarray:
    h_r, h_q = eur_components(system, initial, times, observables)
    return h_r + h_q


@dataclass(frozen=True)
class EURTrace:
    times: np.ndarray
    values: np.ndarray
    h_r: np.ndarray
    h_q: np.ndarray
    bound: float
    params: System
    observables: Observables
    initial: InitialState


def eur_trace(
    system: System,
    initial: InitialState,
    observables: Observables = DEFAULT_OBSERVABLES,
    t_max: float = 10.0,
    n_steps: int = 1000,
) -> EURTrace:
    if t_max <= 0 or n_steps < 2:
        raise ValueError("need t_max > 0 and n_steps >= 2")
    times = np.linspace(0.0, t_max, n_steps + 1)
    h_r, h_q = eur_components(system, initial, times, observables)
    return EURTrace(times, h_r + h_q, h_r, h_q, mu_bound(*observables), system, observables, initial)


@dataclass(frozen=True)
class WitnessResult:
    w: float
    horizon: float
    n_points: int
    converged: bool
    tail_delta: float


def _trapezoid_mean(values: np.ndarray, h: float) -> float:
    span = h * (len(values) - 1)
    return float(h * (values.sum() - 0.5 * (values[0] + values[-1])) / span)


def default_witness_points(system: System, horizon: float) -> int:
    spec = spectrum(system)
    n = MIN_WITNESS_POINTS
    if spec is not None and spec.period:
        n = max(n, math.ceil(POINTS_PER_PERIOD * horizon / spec.period) + 1)
    return n + (n + 1) % 2  # odd, so the half-horizon is a grid point


def witness(
    system: System,
    initial: InitialState,
    observables: Observables = DEFAULT_OBSERVABLES,
    horizon: float = WITNESS_HORIZON,
    n_points: int | None = None,
    tol: float = 1e-3,
) -> WitnessResult:
    """Finite-horizon time average ``(1/T) int_0^T EUR(t) dt`` (composite trapezoid).

    ``converged`` compares against the average over the first half of the
    horizon; the infinite-time limit is only approximated.
    """
    if horizon <= 0:
        raise ValueError("horizon must be positive")
    if n_points is None:
        n_points = default_witness_points(system, horizon)
    if n_points < 100:
        raise ValueError("n_points must be >= 100")
    n_points += (n_points + 1) % 2
    times = np.linspace(0.0, horizon, n_points)
    vals = eur_values(system, initial, times, observables)
    h = horizon / (n_points - 1)
    w = _trapezoid_mean(vals, h)
    w_half = _trapezoid_mean(vals[: (n_points - 1) // 2 + 1], h)
    delta = abs(w - w_half)
    return WitnessResult(w, horizon, n_points, delta < tol, delta)


@dataclass(frozen=True)
class BetaResult:
    beta: float
    window_start: float
    window_end: float
    estimator: str


def beta(
    system: System,
    initial: InitialState,
    observables: Observables = DEFAULT_OBSERVABLES,
    window_start: float = BETA_WINDOW[0],
    window_end: float = BETA_WINDOW[1],
    n_points: int = BETA_POINTS,
    estimator: Literal["rms", "max"] = "rms",
) -> BetaResult:
    """Late-time magnitude of ``dEUR/dt`` over a window.

    Derivatives are central differences at every window sample (the grid is
    padded by one step on each side). ``rms`` averages the squared rate,
    ``max`` takes the largest magnitude. The window must cover at least one
    oscillation period for the estimate to be meaningful close to an
    exceptional point, where periods grow without bound.
    """
    if not 0 < window_start < window_end:
        raise ValueError("need 0 < window_start < window_end")
    if n_points < 100:
        raise ValueError("n_points must be >= 100")
    if estimator not in ("rms", "max"):
        raise ValueError(f"unknown estimator {estimator!r}")
    h = (window_end - window_start) / (n_points - 1)
    times = window_start + h * np.arange(-1, n_points + 1)
    vals = eur_values(system, initial, times, observables)
    rate = (vals[2:] - vals[:-2]) / (2.0 * h)
    if estimator == "rms":
        b = float(np.sqrt(np.mean(rate * rate)))
    else:
        b = float(np.max(np.abs(rate)))
    return BetaResult(b, window_start, window_end, estimator)


@dataclass(frozen=True)
class ScanResult:
    param: str
    grid: np.ndarray
    metric: np.ndarray
    phases: tuple[Phase | None, ...]
    critical_point: float
    critical_jump: float
    metric_kind: str

    def transition_detected(self, abs_tol: float = 1e-6, ratio: float = 5.0) -> bool:
        """True when the largest jump is both non-negligible and an outlier.

        A smooth metric has steps of similar size everywhere; a sudden change
        stands ``ratio`` times above the median step.
        """
        steps = np.abs(np.diff(self.metric))
        return bool(self.critical_jump > abs_tol and self.critical_jump > ratio * np.median(steps))


def make_grid(start: float, stop: float, step: float) -> np.ndarray:
    """Inclusive uniform grid ``start, start+step, ..., stop`` without drift."""
    if step <= 0:
        raise ValueError("step must be positive")
    n = int(math.floor((stop - start) / step + 1e-9))
    return start + step * np.arange(n + 1)


def _metric(system, metric_kind, initial, observables, options) -> float:
    if metric_kind == "beta":
        return beta(system, initial, observables, **options).beta
    if metric_kind == "witness":
        return witness(system, initial, observables, **options).w
    raise ValueError(f"unknown metric {metric_kind!r}")


def scan(
    base: GeneralNHParams | AntiPTParams,
    param: str,
    grid: Sequence[float],
    metric_kind: Literal["beta", "witness"] = "beta",
    initial: InitialState | None = None,
    observables: Observables = DEFAULT_OBSERVABLES,
    threads: int | None = None,
    **options,
) -> ScanResult:
    """Evaluate a criticality metric across one swept parameter.

    The detected critical point is the midpoint of the grid interval with
    the largest absolute metric change. Grid points are evaluated
    independently (concurrently when ``threads > 1``) and reassembled in
    grid order, so the result does not depend on the worker count.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or len(grid) < 10:
        raise ValueError("grid must be one-dimensional with at least 10 points")
    if np.any(np.diff(grid) <= 0):
        raise ValueError("grid must be strictly increasing")
    initial = initial or InitialState.plus()
    systems = [replace(base, **{param: float(x)}) for x in grid]

    def job(system):
        return _metric(system, metric_kind, initial, observables, options)

    threads = threads or os.cpu_count() or 1
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            values = list(pool.map(job, systems))
    else:
        values = [job(s) for s in systems]
    metric = np.array(values)
    jumps = np.abs(np.diff(metric))
    i = int(np.argmax(jumps))
    phases = tuple(spectrum(s).phase for s in systems)
    return ScanResult(
        param=param,
        grid=grid,
        metric=metric,
        phases=phases,
        critical_point=float(0.5 * (grid[i] + grid[i + 1])),
        critical_jump=float(jumps[i]),
        metric_kind=metric_kind,
    )
