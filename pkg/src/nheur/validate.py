"""Closed-form versus brute-force validation suite behind ``nheur validate``."""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import dynamics
from .criticality import eur_values
from .dynamics import AntiPTParams, GeneralNHParams, InitialState
from .measure import (
    SX,
    SZ,
    Observable,
    antipt_closed_probabilities,
    measure,
    prob_closed_ep,
    prob_closed_general,
)
from .oracle import IntegratorConfig, integrate_schrodinger

HALF_PI = math.pi / 2

PHASE_CASES = {
    "pt-unbroken": GeneralNHParams(1.0, 2.0, 2.0, HALF_PI),
    "pt-broken": GeneralNHParams(2.0, 1.0, 1.0, HALF_PI),
    "pt-exceptional": GeneralNHParams(1.0, 1.0, 1.0, HALF_PI),
    "general-unbroken": GeneralNHParams(0.7, math.sqrt(2) / 2, math.sqrt(2), HALF_PI),
    "antipt-unbroken": AntiPTParams(1.0, 2.0, 0.0),
    "antipt-broken": AntiPTParams(1.0, 0.5, 0.0),
}


@dataclass(frozen=True)
class Check:
    name: str
    worst: float
    tol: float

    @property
    def passed(self) -> bool:
        return bool(self.worst < self.tol)


@dataclass(frozen=True)
class Level:
    dt: float
    t_max: float
    n_samples: int


LEVELS = {"quick": Level(dt=1e-3, t_max=5.0, n_samples=20), "full": Level(dt=1e-4, t_max=10.0, n_samples=100)}


def oracle_discrepancy(system, psi0, dt: float, t_max: float, n_check: int = 50) -> float:
    """Largest relative state error between the closed form and RK4 on ``[0, t_max]``."""
    cfg = IntegratorConfig(dt=dt, t_max=t_max)
    stride = max(1, cfg.n_steps // n_check)
    times, states = integrate_schrodinger(dynamics.hamiltonian(system), psi0, cfg, stride=stride)
    worst = 0.0
    for t, ref in zip(times, states):
        closed = np.asarray(dynamics.propagator(system, float(t))) @ psi0
        worst = max(worst, float(np.linalg.norm(closed - ref) / np.linalg.norm(ref)))
    return worst


def check_oracle(level: Level) -> list[Check]:
    psi0 = InitialState.plus().amplitudes()
    return [
        Check(f"propagator-oracle[{name}]", oracle_discrepancy(p, psi0, level.dt, level.t_max), 1e-6)
        for name, p in PHASE_CASES.items()
    ]


def check_eta(level: Level) -> Check:
    p = PHASE_CASES["pt-unbroken"]
    hm = dynamics.hermitian_map(p)
    inv = np.linalg.inv(hm.eta)
    worst = 0.0
    for t in np.linspace(0.0, 10.0, level.n_samples):
        u = hm.eta @ dynamics.propagator_general(p, float(t)) @ inv
        worst = max(worst, float(np.max(np.abs(u - dynamics.unitary_equivalent(p, float(t))))))
    return Check("eta-similarity", worst, 1e-9)


def _pipeline(system, state: InitialState, t: float):
    return dynamics.evolve_normalized(dynamics.propagator(system, t), state.amplitudes()).rho


def check_closed_forms(level: Level) -> list[Check]:
    times = np.linspace(0.0, level.t_max, level.n_samples)
    obs = [SX, SZ, Observable((0.0, 1.0, 0.0)), Observable((0.6, 0.0, 0.8))]
    plus = InitialState.plus()

    w13 = 0.0
    for name in ("pt-unbroken", "pt-broken", "pt-exceptional", "general-unbroken"):
        p = PHASE_CASES[name]
        for t in times:
            w13 = max(w13, float(np.max(np.abs(dynamics.rho_plus_closed(p, t) - _pipeline(p, plus, t)))))

    w11 = 0.0
    states = [InitialState.angle(a) for a in (0.0, 0.7, HALF_PI, 2.2)]
    for name in ("pt-unbroken", "pt-broken", "general-unbroken"):
        p = PHASE_CASES[name]
        for t in times:
            for st in states:
                rho = _pipeline(p, st, t)
                for o in obs:
                    w11 = max(w11, abs(prob_closed_general(p, st, o, t) - measure(rho, o).p_plus))

    w12 = 0.0
    ep = PHASE_CASES["pt-exceptional"]
    for t in times:
        for st in states:
            rho = _pipeline(ep, st, t)
            for o in obs:
                w12 = max(w12, abs(prob_closed_ep(ep, st.theta, o, t) - measure(rho, o).p_plus))

    w18 = 0.0
    zero = InitialState.zero()
    for name in ("antipt-unbroken", "antipt-broken"):
        p = PHASE_CASES[name]
        for t in times:
            rho = _pipeline(p, zero, t)
            px1, _, pz1, _ = antipt_closed_probabilities(p, t)
            w18 = max(w18, abs(px1 - measure(rho, SX).p_plus), abs(pz1 - measure(rho, SZ).p_minus))

    return [
        Check("closed-density-plus", w13, 1e-9),
        Check("closed-prob-eigenbasis", w11, 1e-9),
        Check("closed-prob-exceptional", w12, 1e-9),
        Check("closed-prob-antipt", w18, 1e-9),
    ]


def check_trajectories(level: Level) -> list[Check]:
    plus = InitialState.plus()
    times = np.linspace(0.0, 5 * level.t_max, 50 * level.n_samples)
    below = 0.0
    for p in PHASE_CASES.values():
        below = max(below, float(np.max(1.0 - eur_values(p, plus, times))))
    p = PHASE_CASES["pt-unbroken"]
    period = math.pi / math.sqrt(3.0)
    t = np.linspace(0.0, 5 * period, 10 * level.n_samples)
    drift = float(np.max(np.abs(eur_values(p, plus, t + period) - eur_values(p, plus, t))))
    det_err = 0.0
    for q in (PHASE_CASES["pt-unbroken"], PHASE_CASES["pt-broken"], PHASE_CASES["general-unbroken"]):
        spec = dynamics.spectrum(q)
        for tt in np.linspace(0.0, 3.0, level.n_samples):
            u = dynamics.propagator(q, float(tt))
            ref = np.exp(-1j * (spec.e_plus + spec.e_minus) * tt)
            det_err = max(det_err, abs(np.linalg.det(u) - ref) / max(1.0, abs(ref)))
    return [
        Check("eur-lower-bound", max(below, 0.0), 1e-9),
        Check("unbroken-periodicity", drift, 1e-9),
        Check("propagator-determinant", det_err, 1e-10),
    ]


SUITES: tuple[Callable[[Level], list[Check] | Check], ...] = (
    check_oracle,
    check_eta,
    check_closed_forms,
    check_trajectories,
)


def run(level: str = "quick") -> list[Check]:
    cfg = LEVELS[level]
    checks: list[Check] = []
    for suite in SUITES:
        out = suite(cfg)
        checks.extend(out if isinstance(out, list) else [out])
    return checks


def report(checks: list[Check], elapsed: float | None = None) -> str:
    width = max(len(c.name) for c in checks)
    lines = [f"{'check':<{width}}  {'worst':>10}  {'tol':>8}  result"]
    for c in checks:
        lines.append(f"{c.name:<{width}}  {c.worst:>10.3e}  {c.tol:>8.0e}  {'PASS' if c.passed else 'FAIL'}")
    failed = [c for c in checks if not c.passed]
    if failed:
        worst = max(failed, key=lambda c: c.worst / c.tol)
        lines.append(f"{len(failed)} check(s) failed; worst: {worst.name} discrepancy {worst.worst:.3e}")
    else:
        lines.append(f"all {len(checks)} checks passed" + (f" in {elapsed:.2f} s" if elapsed is not None else ""))
    return "\n".join(lines)


def timed_run(level: str = "quick") -> tuple[list[Check], float]:
    t0 = time.perf_counter()
    checks = run(level)
    return checks, time.perf_counter() - t0
