import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nheur.linalg import (
    IDENTITY,
    SIGMA_X,
    SIGMA_Z,
    as_c2matrix,
    c2vector,
    cos_sinc_scaled,
    mat2_eig,
    mat2_exp_times,
    sinc_c,
    traceless_split,
)

from conftest import expm_reference

finite = st.floats(-3, 3, allow_nan=False)
cplx = st.builds(complex, finite, finite)
matrices = st.builds(lambda a, b, c, d: np.array([[a, b], [c, d]]), cplx, cplx, cplx, cplx)


def test_constructors_are_read_only_and_checked():
    v = c2vector(1, 0)
    with pytest.raises(ValueError):
        v[0] = 2
    with pytest.raises(ValueError):
        as_c2matrix(np.zeros((3, 3)))
    with pytest.raises(ValueError):
        as_c2matrix([[np.nan, 0], [0, 1]])


def test_eig_of_pauli_z():
    e = mat2_eig(SIGMA_Z)
    assert sorted(x.real for x in e.eigenvalues) == [-1.0, 1.0]
    assert not e.defective


def test_eig_flags_jordan_block():
    assert mat2_eig([[0, 1], [0, 0]]).defective
    assert mat2_eig(IDENTITY).defective


@given(matrices)
def test_eig_residual(m):
    e = mat2_eig(m)
    if e.defective:
        return
    for lam, v in zip(e.eigenvalues, e.eigenvectors):
        assert np.linalg.norm(m @ v - lam * v) < 1e-9 * (1 + np.abs(m).max())


def test_sinc_series_matches_direct_near_switch():
    for z in (1e-4 * 1.0001, 1e-4 * 0.9999, 3e-5j):
        assert abs(sinc_c(z) - cmath.sin(z) / z) < 1e-15
    assert sinc_c(0) == 1.0


def test_exp_of_pauli_x_rotation():
    t = 0.37
    u = mat2_exp_times(SIGMA_X, t)
    ref = math.cos(t) * IDENTITY - 1j * math.sin(t) * SIGMA_X
    assert np.abs(u - ref).max() < 1e-15


def test_exp_of_jordan_block_is_exact():
    u = mat2_exp_times([[0, 1], [0, 0]], 2.5)
    assert np.abs(u - np.array([[1, -2.5j], [0, 1]])).max() < 1e-15


@given(matrices, st.floats(0, 2))
def test_exp_matches_taylor_reference(m, t):
    ref = expm_reference(m, t)
    assert np.abs(mat2_exp_times(m, t) - ref).max() < 1e-8 * max(1.0, np.abs(ref).max())


@given(matrices, st.floats(0, 2))
def test_exp_determinant_identity(m, t):
    u = mat2_exp_times(m, t)
    ref = cmath.exp(-1j * np.trace(m) * t)
    scale = max(1.0, abs(ref), float(np.abs(u).max()) ** 2)
    assert abs(np.linalg.det(u) - ref) < 1e-12 * scale


def test_traceless_split():
    half, m, mu = traceless_split([[3, 1], [4, 1]])
    assert half == 2
    assert abs(np.trace(m)) == 0
    assert np.abs(m @ m - mu * mu * IDENTITY).max() < 1e-14


@pytest.mark.parametrize("omega", [1.3, 2.0j, 0.5 + 0.1j, 0.0])
def test_cos_sinc_scaled_unscales(omega):
    t = np.array([0.0, 0.4, 3.0])
    c, s, a = cos_sinc_scaled(omega, t)
    for k, tt in enumerate(t):
        z = omega * tt
        assert abs(c[k] * math.exp(a[k]) - cmath.cos(z)) < 1e-12 * max(1, abs(cmath.cos(z)))
        assert abs(s[k] * math.exp(a[k]) - tt * sinc_c(z)) < 1e-12 * max(1, abs(tt * sinc_c(z)))


def test_cos_sinc_scaled_survives_huge_arguments():
    c, s, _ = cos_sinc_scaled(3j, np.array([1e4]))
    assert np.isfinite(c).all() and np.isfinite(s).all()
    assert abs(abs(c[0]) - 0.5) < 1e-12
