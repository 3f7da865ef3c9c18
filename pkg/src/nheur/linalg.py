"""Fixed-size complex linear algebra for two-level systems.

Vectors and matrices are plain read-only numpy arrays of shape ``(2,)`` and
``(2, 2)`` with dtype ``complex128``. Everything here is closed form; no
LAPACK calls are made.
"""
from __future__ import annotations

import cmath
from typing import NamedTuple

import numpy as np

C2Vector = np.ndarray
C2Matrix = np.ndarray

SINC_SWITCH = 1e-4
DEFECT_TOL = 1e-12

IDENTITY = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
for _m in (IDENTITY, SIGMA_X, SIGMA_Y, SIGMA_Z):
    _m.flags.writeable = False


def _frozen(a: np.ndarray) -> np.ndarray:
    if not np.all(np.isfinite(a)):
        raise ValueError(f"non-finite entries: {a!r}")
    a.flags.writeable = False
    return a


def c2vector(a0: complex, a1: complex) -> C2Vector:
    """Build a finite, read-only two-component amplitude vector."""
    return _frozen(np.array([a0, a1], dtype=complex))


def c2matrix(m00: complex, m01: complex, m10: complex, m11: complex) -> C2Matrix:
    """Build a finite, read-only 2x2 complex matrix."""
    return _frozen(np.array([[m00, m01], [m10, m11]], dtype=complex))


def as_c2matrix(m) -> C2Matrix:
    a = np.array(m, dtype=complex)
    if a.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {a.shape}")
    return _frozen(a)


def as_c2vector(v) -> C2Vector:
    a = np.array(v, dtype=complex)
    if a.shape != (2,):
        raise ValueError(f"expected a 2-vector, got shape {a.shape}")
    return _frozen(a)


def max_norm(m) -> float:
    """Max-entry magnitude, the only matrix norm used in this package."""
    return float(np.max(np.abs(m)))


class Eigen2(NamedTuple):
    eigenvalues: tuple[complex, complex]
    eigenvectors: tuple[C2Vector, C2Vector]
    defective: bool


def _eigvec(m: np.ndarray, lam: complex) -> np.ndarray:
    a, b = m[0]
    c, d = m[1]
    # pick the better-conditioned row of (M - lam I)
    if abs(b) + abs(lam - a) >= abs(c) + abs(lam - d):
        v = np.array([b, lam - a], dtype=complex)
    else:
        v = np.array([lam - d, c], dtype=complex)
    nv = np.linalg.norm(v)
    if nv == 0.0:
        return np.array([1.0, 0.0], dtype=complex)
    return v / nv


def mat2_eig(m) -> Eigen2:
    """Eigen-decomposition of a 2x2 matrix from its characteristic polynomial.

    ``defective`` is set when the discriminant ``((a-d)/2)^2 + bc`` is below
    ``DEFECT_TOL * (1 + |M|^2)``: the two eigenvalues (and, for a non-normal
    matrix, the eigenvectors) coalesce. Degenerate multiples of the identity
    are flagged too.
    """
    m = as_c2matrix(m)
    a, b = m[0]
    c, d = m[1]
    half_tr = 0.5 * (a + d)
    disc = (0.5 * (a - d)) ** 2 + b * c
    nrm = max_norm(m)
    defective = abs(disc) <= DEFECT_TOL * (1.0 + nrm * nrm)
    root = cmath.sqrt(disc)
    lam1, lam2 = half_tr + root, half_tr - root
    if defective and abs(b) == 0.0 and abs(c) == 0.0:
        v1 = np.array([1.0, 0.0], dtype=complex)
        v2 = np.array([0.0, 1.0], dtype=complex)
    else:
        v1 = _eigvec(m, lam1)
        v2 = _eigvec(m, lam2)
    return Eigen2((lam1, lam2), (_frozen(v1), _frozen(v2)), bool(defective))


def sinc_c(z: complex) -> complex:
    """``sin(z)/z`` for complex ``z``, switching to a Taylor series near zero."""
    z = complex(z)
    if abs(z) < SINC_SWITCH:
        z2 = z * z
        return 1.0 - z2 / 6.0 + z2 * z2 / 120.0
    return cmath.sin(z) / z


def cos_sinc_scaled(omega, t):
    """Return ``(cos(w t) e^-a, t sinc(w t) e^-a, a)`` with ``a = |Im(w t)|``.

    The shared exponential factor is what overflows first in the broken
    phase; callers that only need ratios (normalized states, probabilities)
    can drop it. Works elementwise on arrays of ``t``.
    """
    omega = complex(omega)
    t = np.asarray(t, dtype=float)
    z = omega * t
    x, y = z.real, z.imag
    a = np.abs(y)
    e = np.exp(-2.0 * a)
    ch = 0.5 * (1.0 + e)
    sh = np.sign(y) * 0.5 * (1.0 - e)
    cos_s = np.cos(x) * ch - 1j * np.sin(x) * sh
    sin_s = np.sin(x) * ch + 1j * np.cos(x) * sh
    absz = np.abs(z)
    small = absz < SINC_SWITCH
    z2 = z * z
    series = t * (1.0 - z2 / 6.0 + z2 * z2 / 120.0) * np.exp(-a)
    safe_w = omega if omega != 0 else 1.0
    tsinc = np.where(small, series, sin_s / safe_w)
    return cos_s, tsinc, a


def mat2_exp_times(a, t: float) -> C2Matrix:
    """Compute ``exp(-i A t)`` for a 2x2 matrix without diagonalizing.

    Splits ``A = (tr A / 2) I + M`` with ``M`` traceless, so ``M^2 = mu^2 I``
    and ``exp(-i M t) = cos(mu t) I - i t sinc(mu t) M``. Defective ``M``
    (``mu = 0``) needs no special case.
    """
    a = as_c2matrix(a)
    half_tr = 0.5 * (a[0, 0] + a[1, 1])
    m = a - half_tr * IDENTITY
    mu = cmath.sqrt(m[0, 0] * m[0, 0] + m[0, 1] * m[1, 0])
    z = mu * t
    u = cmath.exp(-1j * half_tr * t) * (cmath.cos(z) * IDENTITY - 1j * t * sinc_c(z) * m)
    return _frozen(u)


def traceless_split(a) -> tuple[complex, np.ndarray, complex]:
    """Return ``(tr A / 2, M, mu)`` with ``M`` traceless and ``M^2 = mu^2 I``."""
    a = np.asarray(a, dtype=complex)
    half_tr = 0.5 * (a[0, 0] + a[1, 1])
    m = a - half_tr * np.eye(2)
    mu = cmath.sqrt(m[0, 0] * m[0, 0] + m[0, 1] * m[1, 0])
    return complex(half_tr), m, mu
