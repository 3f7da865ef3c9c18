import math

import numpy as np
import pytest

from nheur.criticality import (
    ScanResult,
    beta,
    default_witness_points,
    eur_trace,
    make_grid,
    scan,
    witness,
)
from nheur.dynamics import AntiPTParams, GeneralNHParams, InitialState, Phase
from nheur.oracle import reference_average

from conftest import HALF_PI

PLUS = InitialState.plus()


def test_make_grid_is_inclusive_and_drift_free():
    g = make_grid(0.5, 3.5, 0.01)
    assert len(g) == 301
    assert g[0] == 0.5 and g[-1] == pytest.approx(3.5, abs=1e-12)
    assert g[150] == pytest.approx(2.0, abs=1e-12)
    with pytest.raises(ValueError):
        make_grid(0, 1, 0)


def test_trace_shape_and_bound(pt_unbroken):
    tr = eur_trace(pt_unbroken, PLUS, t_max=5.0, n_steps=500)
    assert tr.times.shape == tr.values.shape == (501,)
    assert tr.values[0] == pytest.approx(1.0, abs=1e-12)
    assert tr.bound == pytest.approx(1.0, abs=1e-12)
    assert np.allclose(tr.values, tr.h_r + tr.h_q)
    with pytest.raises(ValueError):
        eur_trace(pt_unbroken, PLUS, t_max=-1.0)


def test_witness_matches_reference_quadrature(pt_unbroken):
    w = witness(pt_unbroken, PLUS, horizon=40.0, n_points=4001)
    tr = eur_trace(pt_unbroken, PLUS, t_max=40.0, n_steps=4000)
    assert w.w == pytest.approx(reference_average(tr.values, tr.times), abs=1e-13)
    assert w.n_points == 4001


def test_witness_default_points_resolve_period(pt_unbroken, pt_broken):
    n = default_witness_points(pt_unbroken, 200.0)
    assert n % 2 == 1
    assert n >= 20 * 200.0 / (math.pi / math.sqrt(3)) + 1
    assert default_witness_points(pt_broken, 200.0) == 2001


def test_witness_converges_in_broken_phase(pt_broken):
    w = witness(pt_broken, PLUS)
    assert w.converged
    # late-time plateau value
    assert 1.3 < w.w < 1.36


def test_witness_input_checks(pt_unbroken):
    with pytest.raises(ValueError):
        witness(pt_unbroken, PLUS, horizon=0.0)
    with pytest.raises(ValueError):
        witness(pt_unbroken, PLUS, n_points=10)


def test_beta_zero_when_frozen(pt_broken, antipt_unbroken):
    assert beta(pt_broken, PLUS).beta < 1e-10
    assert beta(antipt_unbroken, PLUS).beta < 1e-10


def test_beta_positive_when_oscillating(pt_unbroken, antipt_broken):
    assert beta(pt_unbroken, PLUS).beta > 0.1
    assert beta(antipt_broken, PLUS).beta > 0.1
    b_max = beta(pt_unbroken, PLUS, estimator="max").beta
    assert b_max >= beta(pt_unbroken, PLUS).beta


def test_beta_input_checks(pt_unbroken):
    with pytest.raises(ValueError):
        beta(pt_unbroken, PLUS, window_start=10.0, window_end=5.0)
    with pytest.raises(ValueError):
        beta(pt_unbroken, PLUS, estimator="mean")


def test_scan_finds_pt_transition():
    base = GeneralNHParams(1.0, 2.0, 2.0, HALF_PI)
    res = scan(base, "r", make_grid(1.5, 2.5, 0.01), "beta", threads=2)
    assert abs(res.critical_point - 2.0) <= 0.02
    assert res.transition_detected()
    assert res.phases[0] is Phase.UNBROKEN and res.phases[-1] is Phase.BROKEN


def test_scan_order_independent_of_threads():
    base = AntiPTParams(1.0, 1.0, 0.0)
    g = make_grid(0.5, 1.5, 0.05)
    a = scan(base, "s", g, "witness", threads=1)
    b = scan(base, "s", g, "witness", threads=4)
    assert np.array_equal(a.metric, b.metric)


def test_flat_metric_reports_no_transition():
    res = ScanResult("s", np.arange(10.0), np.full(10, 1.5), (None,) * 10, 0.5, 0.0, "beta")
    assert not res.transition_detected()


def test_scan_rejects_bad_grid():
    base = GeneralNHParams(1.0, 2.0, 2.0, HALF_PI)
    with pytest.raises(ValueError):
        scan(base, "r", [1.0, 2.0], "beta")
    with pytest.raises(ValueError):
        scan(base, "r", np.linspace(2, 1, 20), "beta")
    with pytest.raises(ValueError):
        scan(base, "r", np.linspace(1, 2, 20), "entropy")
