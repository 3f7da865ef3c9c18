import math

import numpy as np
import pytest

from nheur import dynamics
from nheur.dynamics import InitialState
from nheur.oracle import IntegratorConfig, integrate_schrodinger, reference_average
from nheur.validate import oracle_discrepancy


def test_config_validation():
    with pytest.raises(ValueError):
        IntegratorConfig(dt=0.0)
    with pytest.raises(ValueError):
        IntegratorConfig(method="euler")
    assert IntegratorConfig(dt=1e-4, t_max=10.0).n_steps == 100_000


def test_rk4_rejects_unstable_step():
    with pytest.raises(ValueError):
        integrate_schrodinger(np.eye(2) * 100, [1, 0], IntegratorConfig(dt=0.01, t_max=1.0))


def test_rk4_hermitian_rotation():
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    times, states = integrate_schrodinger(sx, np.array([1, 0], dtype=complex),
                                          IntegratorConfig(dt=1e-3, t_max=2.0), stride=100)
    assert len(times) == 21 and times[-1] == pytest.approx(2.0)
    ref = np.array([math.cos(2.0), -1j * math.sin(2.0)])
    assert np.abs(states[-1] - ref).max() < 1e-12


@pytest.mark.parametrize("fixture", ["pt_unbroken", "pt_broken", "pt_ep", "general", "antipt_unbroken", "antipt_broken"])
def test_closed_propagator_agrees_with_rk4(request, fixture):
    p = request.getfixturevalue(fixture)
    assert oracle_discrepancy(p, InitialState.plus().amplitudes(), 1e-3, 5.0) < 1e-8


def test_reference_average_nonuniform():
    t = np.array([0.0, 0.1, 0.5, 2.0])
    assert reference_average(t ** 1, t) == pytest.approx(1.0, abs=1e-15)
    with pytest.raises(ValueError):
        reference_average([1.0], [0.0])


def test_mutated_propagator_is_caught(monkeypatch, pt_unbroken):
    real = dynamics.propagator_general

    def wrong(p, t):
        return real(p, 1.01 * t)

    monkeypatch.setattr(dynamics, "propagator_general", wrong)
    assert oracle_discrepancy(pt_unbroken, InitialState.plus().amplitudes(), 1e-3, 5.0) > 1e-3
