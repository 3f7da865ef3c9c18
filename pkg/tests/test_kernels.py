import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nheur import _pykernels, kernels
from nheur.dynamics import AntiPTParams, GeneralNHParams, hamiltonian
from nheur.linalg import traceless_split

try:
    from nheur import _ckernels
except ImportError:  # extension not built
    _ckernels = None

needs_ext = pytest.mark.skipif(_ckernels is None, reason="compiled extension not built")


def test_backend_name():
    assert kernels.BACKEND in ("cython", "python")


def test_pure_python_switch():
    env = dict(os.environ, NHEUR_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import nheur.kernels as k; print(k.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_binary_entropy_edges():
    for impl in (_pykernels, _ckernels) if _ckernels else (_pykernels,):
        h = impl.binary_entropy(np.array([0.0, 0.5, 1.0, 0.25]))
        assert np.allclose(h, [0.0, 1.0, 0.0, 0.8112781244591328], atol=1e-15)


positive = st.floats(0.05, 3.0)
angles = st.floats(0.0, 6.28)


@needs_ext
@given(positive, positive, positive, angles, st.booleans())
def test_born_probabilities_parity(r, s, sigma, phi, anti):
    p = AntiPTParams(r, s, phi) if anti else GeneralNHParams(r, s, sigma, phi)
    _, m, mu = traceless_split(hamiltonian(p))
    psi0 = np.array([0.6, 0.8], dtype=complex)
    times = np.linspace(0.0, 300.0, 257)
    nr, nq = (0.0, 0.0, 1.0), (1.0, 0.0, 0.0)
    a = _pykernels.born_probabilities(m, mu, psi0, times, nr, nq)
    b = _ckernels.born_probabilities(m, mu, psi0, times, nr, nq)
    for x, y in zip(a, b):
        assert np.isfinite(y).all()
        assert np.abs(np.asarray(x) - np.asarray(y)).max() < 1e-12


@needs_ext
def test_rk4_parity():
    h = np.asarray(hamiltonian(GeneralNHParams(1.0, 2.0, 2.0, 1.5707963267948966)))
    psi0 = np.array([1, 1], dtype=complex) / np.sqrt(2)
    a = _pykernels.rk4_integrate(h, psi0, 1e-3, 2000, 100)
    b = _ckernels.rk4_integrate(h, psi0, 1e-3, 2000, 100)
    assert np.asarray(a).shape == np.asarray(b).shape == (21, 2)
    assert np.abs(np.asarray(a) - np.asarray(b)).max() < 1e-13
