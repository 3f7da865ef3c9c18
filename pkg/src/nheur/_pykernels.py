"""Pure-Python/numpy implementations of the hot loops.

These are the reference versions of the routines in ``_ckernels.pyx`` and
must return the same numbers to rounding.
"""
import numpy as np

SINC_SWITCH = 1e-4


def born_probabilities(m, mu, psi0, times, n_r, n_q):
    """Outcome-``+`` probabilities of two Bloch-vector observables along a trajectory.

    The state at time ``t`` is ``[cos(mu t) I - i t sinc(mu t) M] psi0`` up to
    a scalar factor, where ``M`` is the traceless part of the Hamiltonian and
    ``M^2 = mu^2 I``. The factor ``e^{|Im mu t|}`` is removed from both terms
    so long broken-phase runs do not overflow.
    """
    m = np.asarray(m, dtype=complex)
    psi0 = np.asarray(psi0, dtype=complex)
    t = np.asarray(times, dtype=float)
    mu = complex(mu)
    z = mu * t
    y = z.imag
    e = np.exp(-2.0 * np.abs(y))
    ch = 0.5 * (1.0 + e)
    sh = np.sign(y) * 0.5 * (1.0 - e)
    cx, sx = np.cos(z.real), np.sin(z.real)
    c = cx * ch - 1j * sx * sh
    sin_s = sx * ch + 1j * cx * sh
    z2 = z * z
    series = t * (1.0 - z2 / 6.0 + z2 * z2 / 120.0) * np.sqrt(e)
    ts = np.where(np.abs(z) < SINC_SWITCH, series, sin_s / (mu if mu != 0 else 1.0))

    mp = m @ psi0
    a = c * psi0[0] - 1j * ts * mp[0]
    b = c * psi0[1] - 1j * ts * mp[1]
    aa = a.real * a.real + a.imag * a.imag
    bb = b.real * b.real + b.imag * b.imag
    nrm = aa + bb
    ab = np.conj(a) * b
    sz = (aa - bb) / nrm
    sxv = 2.0 * ab.real / nrm
    syv = 2.0 * ab.imag / nrm

    def prob(n):
        p = 0.5 * (1.0 + n[0] * sxv + n[1] * syv + n[2] * sz)
        return np.clip(p, 0.0, 1.0)

    return prob(n_r), prob(n_q)


def rk4_integrate(h, psi0, dt, n_steps, stride=1):
    """Classical fourth-order Runge-Kutta for ``d psi/dt = -i H psi``.

    Returns every ``stride``-th state including the initial one. No
    renormalization is applied.
    """
    h = np.asarray(h, dtype=complex)
    # work on -iH directly
    g00, g01 = -1j * complex(h[0, 0]), -1j * complex(h[0, 1])
    g10, g11 = -1j * complex(h[1, 0]), -1j * complex(h[1, 1])
    a, b = complex(psi0[0]), complex(psi0[1])
    half = 0.5 * dt
    sixth = dt / 6.0
    n_out = n_steps // stride + 1
    out = np.empty((n_out, 2), dtype=complex)
    out[0] = a, b
    j = 1
    for k in range(1, n_steps + 1):
        k1a = g00 * a + g01 * b
        k1b = g10 * a + g11 * b
        ta, tb = a + half * k1a, b + half * k1b
        k2a = g00 * ta + g01 * tb
        k2b = g10 * ta + g11 * tb
        ta, tb = a + half * k2a, b + half * k2b
        k3a = g00 * ta + g01 * tb
        k3b = g10 * ta + g11 * tb
        ta, tb = a + dt * k3a, b + dt * k3b
        k4a = g00 * ta + g01 * tb
        k4b = g10 * ta + g11 * tb
        a = a + sixth * (k1a + 2.0 * k2a + 2.0 * k3a + k4a)
        b = b + sixth * (k1b + 2.0 * k2b + 2.0 * k3b + k4b)
        if k % stride == 0:
            out[j] = a, b
            j += 1
    return out


def binary_entropy(p):
    """Binary Shannon entropy in bits with ``0 log 0 = 0``."""
    p = np.asarray(p, dtype=float)
    q = 1.0 - p
    with np.errstate(divide="ignore", invalid="ignore"):
        hp = np.where(p > 0.0, -p * np.log2(np.where(p > 0.0, p, 1.0)), 0.0)
        hq = np.where(q > 0.0, -q * np.log2(np.where(q > 0.0, q, 1.0)), 0.0)
    return hp + hq


__all__ = ["born_probabilities", "rk4_integrate", "binary_entropy"]
