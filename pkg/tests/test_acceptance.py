"""Acceptance suite: one PASS/FAIL line per criterion, at the contract tolerances."""
import filecmp
import math
import os
import time

import numpy as np
import pytest

from nheur import validate
from nheur.cli import main
from nheur.criticality import eur_trace, eur_values, make_grid, scan
from nheur.dynamics import AntiPTParams, GeneralNHParams, InitialState, hermitian_map, propagator_general, unitary_equivalent
from nheur.figures import scan_figures

HALF_PI = math.pi / 2
PLUS = InitialState.plus()
PT_UNBROKEN = GeneralNHParams(1.0, 2.0, 2.0, HALF_PI)
PT_BROKEN = GeneralNHParams(2.0, 1.0, 1.0, HALF_PI)
PT_EP = GeneralNHParams(1.0, 1.0, 1.0, HALF_PI)
ALL_SYSTEMS = [
    PT_UNBROKEN, PT_BROKEN, PT_EP,
    GeneralNHParams(0.7, math.sqrt(2) / 2, math.sqrt(2), HALF_PI),
    GeneralNHParams(1.3, math.sqrt(2) / 2, math.sqrt(2), HALF_PI),
    GeneralNHParams(1.0, math.sqrt(2) / 2, math.sqrt(2), HALF_PI),
    AntiPTParams(1.0, 2.0, 0.0), AntiPTParams(1.0, 0.5, 0.0), AntiPTParams(1.0, 1.0, 0.0),
    AntiPTParams(1.0, 1.0, HALF_PI),
]


def h2(p):
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


@pytest.fixture
def report(capsys):
    def _report(n, title, ok, detail, elapsed=None, limit=None):
        in_time = limit is None or elapsed < limit
        timing = "" if elapsed is None else f" [{elapsed:.2f} s{'' if limit is None else f' / {limit:g} s'}]"
        with capsys.disabled():
            print(f"\ncriterion {n:>2} {'PASS' if ok and in_time else 'FAIL'}: {title}: {detail}{timing}")
        assert ok, detail
        assert in_time, f"runtime {elapsed:.2f} s exceeds {limit} s"
    return _report


def test_c01_initial_saturation(report):
    worst = max(abs(eur_values(p, PLUS, np.array([0.0]))[0] - 1.0) for p in ALL_SYSTEMS)
    report(1, "EUR(0) = 1 for |+>", worst < 1e-12, f"max |EUR(0) - 1| = {worst:.2e} (tol 1e-12)")


def test_c02_bound(report):
    t0 = time.perf_counter()
    lowest = min(float(eur_trace(p, PLUS, t_max=50.0, n_steps=5000).values.min()) for p in ALL_SYSTEMS)
    el = time.perf_counter() - t0
    report(2, "EUR >= 1 on every trajectory", lowest >= 1 - 1e-9, f"min EUR = {lowest:.12f}", el, 1.0)


def test_c03_periodicity(report):
    t0 = time.perf_counter()
    period = math.pi / math.sqrt(3)
    t = np.linspace(0.0, 5 * period, 2001)
    drift = float(np.max(np.abs(eur_values(PT_UNBROKEN, PLUS, t + period) - eur_values(PT_UNBROKEN, PLUS, t))))
    el = time.perf_counter() - t0
    report(3, "unbroken periodicity pi/sqrt3", drift < 1e-9, f"max drift = {drift:.2e} (tol 1e-9)", el, 1.0)


def test_c04_ep_asymptote(report):
    t0 = time.perf_counter()
    t = np.linspace(1.0, 50.0, 20001)
    v = eur_values(PT_EP, PLUS, t)
    worst_drop = float(max(0.0, -np.diff(v).min()))
    final = float(v[-1])
    el = time.perf_counter() - t0
    ok = worst_drop <= 1e-12 and final >= 2 - 1e-3
    report(4, "EP: nondecreasing for t >= 1, EUR(50) -> 2", ok,
           f"largest decrease = {worst_drop:.1e}, EUR(50) = {final:.6f}", el, 1.0)


def test_c05_broken_asymptote(report):
    t0 = time.perf_counter()
    target = 1 + h2((2 - math.sqrt(3)) / 4)
    got = float(eur_values(PT_BROKEN, PLUS, np.array([10.0]))[0])
    el = time.perf_counter() - t0
    report(5, "broken asymptote 1 + H2((2 - sqrt3)/4)", abs(got - target) < 1e-3,
           f"EUR(10) = {got:.6f}, target {target:.6f}", el, 1.0)


def test_c06_oracle_equivalence(report):
    t0 = time.perf_counter()
    psi0 = PLUS.amplitudes()
    errs = {name: validate.oracle_discrepancy(p, psi0, 1e-4, 10.0, n_check=1000)
            for name, p in validate.PHASE_CASES.items()}
    el = time.perf_counter() - t0
    worst = max(errs.values())
    report(6, "closed propagator vs RK4 (dt 1e-4, t <= 10)", worst < 1e-6,
           "relative errors " + ", ".join(f"{k} {v:.1e}" for k, v in errs.items()), el, 30.0)


def test_c07_eta_equivalence(report):
    t0 = time.perf_counter()
    hm = hermitian_map(PT_UNBROKEN)
    inv = np.linalg.inv(hm.eta)
    worst = max(
        float(np.max(np.abs(hm.eta @ propagator_general(PT_UNBROKEN, t) @ inv - unitary_equivalent(PT_UNBROKEN, t))))
        for t in np.linspace(0.0, 10.0, 100)
    )
    el = time.perf_counter() - t0
    report(7, "eta U eta^-1 equals the Hermitian propagator", worst < 1e-9, f"max error = {worst:.2e}", el, 1.0)


def test_c08_closed_forms(report):
    t0 = time.perf_counter()
    checks = validate.check_closed_forms(validate.LEVELS["full"])
    el = time.perf_counter() - t0
    ok = all(c.worst < 1e-9 for c in checks)
    report(8, "closed-form density / probabilities vs Born rule", ok,
           ", ".join(f"{c.name} {c.worst:.1e}" for c in checks), el, 5.0)


def _scan(fig_id, paper_phi=False):
    spec = scan_figures(paper_phi)[fig_id]
    return scan(spec.base, spec.param, spec.grid(), spec.metric)


def test_c09_pt_critical_point(report):
    t0 = time.perf_counter()
    res = [_scan("fig2a"), _scan("fig3a")]
    el = time.perf_counter() - t0
    ok = all(abs(r.critical_point - 2.0) <= 0.02 and r.transition_detected() for r in res)
    report(9, "PT critical point r0 = 2", ok,
           ", ".join(f"{r.metric_kind} {r.critical_point:.3f}" for r in res), el, 60.0)


def test_c10_general_critical_point(report):
    t0 = time.perf_counter()
    res = [_scan("fig2b"), _scan("fig3b")]
    el = time.perf_counter() - t0
    ok = all(abs(r.critical_point - 1.0) <= 0.02 and r.transition_detected() for r in res)
    report(10, "non-PT critical point r0 = 1", ok,
           ", ".join(f"{r.metric_kind} {r.critical_point:.3f}" for r in res), el, 40.0)


def test_c11_antipt_critical_point(report):
    t0 = time.perf_counter()
    b, w = _scan("fig4a"), _scan("fig4b")
    flat = _scan("fig4a", paper_phi=True)
    el = time.perf_counter() - t0
    g = b.grid
    above = float(b.metric[g >= 1.1 - 1e-9].max())
    below = float(b.metric[g <= 0.9 + 1e-9].min())
    ok = (
        all(abs(r.critical_point - 1.0) <= 0.02 and r.transition_detected() for r in (b, w))
        and above < 1e-4 and below > 0 and not flat.transition_detected()
    )
    report(11, "anti-PT critical point s0 = 1 (phi = 0)", ok,
           f"beta {b.critical_point:.3f}, W {w.critical_point:.3f}, max beta(s>=1.1) = {above:.1e}, "
           f"min beta(s<=0.9) = {below:.3f}, phi=pi/2 detected: {flat.transition_detected()}", el, 40.0)


def test_c12_beta_dichotomy(report):
    t0 = time.perf_counter()
    res = scan(PT_UNBROKEN, "r", make_grid(0.5, 3.5, 0.01), "beta")
    el = time.perf_counter() - t0
    g = res.grid
    low = float(res.metric[g <= 1.9 + 1e-9].min())
    high = float(res.metric[g >= 2.1 - 1e-9].max())
    report(12, "beta > 0.05 for r <= 1.9, beta < 1e-4 for r >= 2.1", low > 0.05 and high < 1e-4,
           f"min = {low:.3f}, max = {high:.1e}", el, 20.0)


def test_c13_determinism(report, tmp_path):
    runs = {"a": ["--threads", "1"], "b": ["--threads", str(max(2, os.cpu_count() or 2))], "c": []}
    for name, extra in runs.items():
        assert main(["figure", "fig2a", "--out", str(tmp_path / name), *extra]) == 0
    same = all(filecmp.cmp(tmp_path / "a" / "fig2a.csv", tmp_path / n / "fig2a.csv", shallow=False) for n in "bc")
    report(13, "fig2a CSV byte-identical across runs and thread counts", same, f"identical = {same}")
