# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled versions of the hot loops in ``_pykernels``."""
import numpy as np

from libc.math cimport cos, sin, exp, fabs, sqrt, log2

cdef double SINC_SWITCH = 1e-4


cdef inline double _clip01(double p) noexcept nogil:
    if p < 0.0:
        return 0.0
    if p > 1.0:
        return 1.0
    return p


def born_probabilities(m, mu, psi0, times, n_r, n_q):
    cdef double complex m00 = m[0][0], m01 = m[0][1], m10 = m[1][0], m11 = m[1][1]
    cdef double complex cmu = mu
    cdef double complex p0 = psi0[0], p1 = psi0[1]
    cdef double[::1] t = np.ascontiguousarray(times, dtype=np.float64)
    cdef Py_ssize_t n = t.shape[0], i
    out_r = np.empty(n, dtype=np.float64)
    out_q = np.empty(n, dtype=np.float64)
    cdef double[::1] pr = out_r
    cdef double[::1] pq = out_q
    cdef double r1 = n_r[0], r2 = n_r[1], r3 = n_r[2]
    cdef double q1 = n_q[0], q2 = n_q[1], q3 = n_q[2]
    cdef double complex mp0 = m00 * p0 + m01 * p1
    cdef double complex mp1 = m10 * p0 + m11 * p1
    cdef double mur = cmu.real, mui = cmu.imag
    cdef bint mu_zero = (mur == 0.0 and mui == 0.0)
    cdef double x, y, e, ch, sh, cx, sx, absz, sgn, nrm, aa, bb, szv, sxv, syv
    cdef double complex c, sin_s, ts, z, z2, a, b, ab
    with nogil:
        for i in range(n):
            x = mur * t[i]
            y = mui * t[i]
            e = exp(-2.0 * fabs(y))
            ch = 0.5 * (1.0 + e)
            sgn = 1.0 if y > 0 else (-1.0 if y < 0 else 0.0)
            sh = sgn * 0.5 * (1.0 - e)
            cx = cos(x)
            sx = sin(x)
            c = cx * ch - 1j * (sx * sh)
            absz = sqrt(x * x + y * y)
            if absz < SINC_SWITCH or mu_zero:
                z = x + 1j * y
                z2 = z * z
                ts = t[i] * (1.0 - z2 / 6.0 + z2 * z2 / 120.0) * sqrt(e)
            else:
                sin_s = sx * ch + 1j * (cx * sh)
                ts = sin_s / cmu
            a = c * p0 - 1j * ts * mp0
            b = c * p1 - 1j * ts * mp1
            aa = a.real * a.real + a.imag * a.imag
            bb = b.real * b.real + b.imag * b.imag
            nrm = aa + bb
            ab = a.conjugate() * b
            szv = (aa - bb) / nrm
            sxv = 2.0 * ab.real / nrm
            syv = 2.0 * ab.imag / nrm
            pr[i] = _clip01(0.5 * (1.0 + r1 * sxv + r2 * syv + r3 * szv))
            pq[i] = _clip01(0.5 * (1.0 + q1 * sxv + q2 * syv + q3 * szv))
    return out_r, out_q


def rk4_integrate(h, psi0, double dt, Py_ssize_t n_steps, Py_ssize_t stride=1):
    cdef double complex g00 = -1j * complex(h[0][0]), g01 = -1j * complex(h[0][1])
    cdef double complex g10 = -1j * complex(h[1][0]), g11 = -1j * complex(h[1][1])
    cdef double complex a = psi0[0], b = psi0[1]
    cdef double complex k1a, k1b, k2a, k2b, k3a, k3b, k4a, k4b, ta, tb
    cdef double half = 0.5 * dt, sixth = dt / 6.0
    cdef Py_ssize_t n_out = n_steps // stride + 1, k, j = 1
    out = np.empty((n_out, 2), dtype=np.complex128)
    cdef double complex[:, ::1] o = out
    o[0, 0] = a
    o[0, 1] = b
    with nogil:
        for k in range(1, n_steps + 1):
            k1a = g00 * a + g01 * b
            k1b = g10 * a + g11 * b
            ta = a + half * k1a
            tb = b + half * k1b
            k2a = g00 * ta + g01 * tb
            k2b = g10 * ta + g11 * tb
            ta = a + half * k2a
            tb = b + half * k2b
            k3a = g00 * ta + g01 * tb
            k3b = g10 * ta + g11 * tb
            ta = a + dt * k3a
            tb = b + dt * k3b
            k4a = g00 * ta + g01 * tb
            k4b = g10 * ta + g11 * tb
            a = a + sixth * (k1a + 2.0 * k2a + 2.0 * k3a + k4a)
            b = b + sixth * (k1b + 2.0 * k2b + 2.0 * k3b + k4b)
            if k % stride == 0:
                o[j, 0] = a
                o[j, 1] = b
                j += 1
    return out


def binary_entropy(p):
    cdef double[::1] pv = np.ascontiguousarray(np.atleast_1d(p), dtype=np.float64)
    cdef Py_ssize_t n = pv.shape[0], i
    res = np.empty(n, dtype=np.float64)
    cdef double[::1] r = res
    cdef double x, q, acc
    with nogil:
        for i in range(n):
            x = pv[i]
            q = 1.0 - x
            acc = 0.0
            if x > 0.0:
                acc -= x * log2(x)
            if q > 0.0:
                acc -= q * log2(q)
            r[i] = acc
    if np.ndim(p) == 0:
        return res[0]
    return res.reshape(np.shape(p))
