"""Brute-force references that share no code with the closed-form propagators.

The Schroedinger equation is integrated step by step with classical RK4;
nothing here exponentiates a matrix.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels

STABILITY_LIMIT = 0.1


@dataclass(frozen=True)
class IntegratorConfig:
    dt: float = 1e-4
    t_max: float = 10.0
    method: str = "rk4"

    def __post_init__(self):
        if self.method != "rk4":
            raise ValueError("only classical RK4 is supported")
        if not (self.dt > 0 and self.dt <= self.t_max):
            raise ValueError(f"need 0 < dt <= t_max (dt={self.dt}, t_max={self.t_max})")

    @property
    def n_steps(self) -> int:
        return int(round(self.t_max / self.dt))


def integrate_schrodinger(h, psi0, cfg: IntegratorConfig, stride: int = 1):
    """Integrate ``i d psi/dt = H psi`` from ``psi0`` on ``[0, t_max]``.

    Returns ``(times, states)`` with every ``stride``-th step. States are not
    renormalized.
    """
    h = np.asarray(h, dtype=complex)
    if np.max(np.abs(h)) * cfg.dt >= STABILITY_LIMIT:
        raise ValueError(
            f"step too large: |H| dt = {np.max(np.abs(h)) * cfg.dt:.3g} >= {STABILITY_LIMIT}"
        )
    if stride < 1:
        raise ValueError("stride must be >= 1")
    n = cfg.n_steps
    states = kernels.rk4_integrate(h, np.asarray(psi0, dtype=complex), cfg.dt, n, stride)
    times = cfg.dt * stride * np.arange(len(states))
    return times, states


def reference_average(values, times) -> float:
    """Trapezoidal time average on an arbitrary (non-uniform) grid."""
    f = np.asarray(values, dtype=float)
    t = np.asarray(times, dtype=float)
    if f.shape != t.shape or len(t) < 2:
        raise ValueError("values and times must align and have length >= 2")
    total = 0.0
    for k in range(len(t) - 1):
        total += 0.5 * (f[k] + f[k + 1]) * (t[k + 1] - t[k])
    return total / (t[-1] - t[0])
