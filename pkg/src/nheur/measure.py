"""Projective measurements, entropies and entropic uncertainty.

The Born rule applied to a normalized density matrix is the source of truth
for every probability. The closed-form expressions at the bottom of the
module (eigenbasis expansion, exceptional-point formula, anti-PT formula) are
independent routes to the same numbers and are used as cross-checks.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .dynamics import (
    DEFAULT_PHASE_TOL,
    AntiPTParams,
    GeneralNHParams,
    InitialState,
    Phase,
    spectrum_antipt,
    spectrum_general,
)
from .kernels import binary_entropy
from .linalg import IDENTITY, SIGMA_X, SIGMA_Y, SIGMA_Z, C2Matrix, cos_sinc_scaled, mat2_eig

CLAMP_TOL = 1e-10
DENSITY_TOL = 1e-8


@dataclass(frozen=True)
class Observable:
    """Projector pair ``P_+- = (I +- n.sigma)/2`` for a unit Bloch vector ``n``."""

    n: tuple[float, float, float]

    def __post_init__(self):
        n = tuple(float(x) for x in self.n)
        if len(n) != 3 or not all(math.isfinite(x) for x in n):
            raise ValueError(f"n must be three finite numbers, got {self.n!r}")
        if abs(math.sqrt(sum(x * x for x in n)) - 1.0) > 1e-12:
            raise ValueError(f"n must be a unit vector, got {n}")
        object.__setattr__(self, "n", n)

    @classmethod
    def axis(cls, name: str) -> "Observable":
        name = name.strip().lower()
        sign = -1.0 if name.startswith("-") else 1.0
        idx = {"x": 0, "y": 1, "z": 2}.get(name.lstrip("+-"))
        if idx is None:
            raise ValueError(f"unknown axis {name!r}")
        n = [0.0, 0.0, 0.0]
        n[idx] = sign
        return cls(tuple(n))

    @classmethod
    def parse(cls, text: str) -> "Observable":
        """Axis name (``x``, ``-z``...) or an explicit ``n1,n2,n3`` triple."""
        if "," in text:
            parts = [float(v) for v in text.split(",")]
            return cls(tuple(parts))
        return cls.axis(text)

    @property
    def label(self) -> str:
        for name, vec in (("x", (1, 0, 0)), ("y", (0, 1, 0)), ("z", (0, 0, 1))):
            if self.n == tuple(float(v) for v in vec):
                return name
            if self.n == tuple(-float(v) for v in vec):
                return "-" + name
        return ",".join(repr(v) for v in self.n)


SX = Observable((1.0, 0.0, 0.0))
SZ = Observable((0.0, 0.0, 1.0))


class ProbabilityPair(NamedTuple):
    p_plus: float
    p_minus: float


@dataclass(frozen=True)
class EURSample:
    t: float
    h_r: float
    h_q: float
    eur: float
    bound: float


def projector(obs: Observable) -> C2Matrix:
    n1, n2, n3 = obs.n
    p = 0.5 * (IDENTITY + n1 * SIGMA_X + n2 * SIGMA_Y + n3 * SIGMA_Z)
    p.flags.writeable = False
    return p


def check_density(rho) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2):
        raise ValueError(f"density matrix must be 2x2, got {rho.shape}")
    if abs(np.trace(rho) - 1.0) > DENSITY_TOL:
        raise ValueError(f"density matrix trace is {np.trace(rho)}, expected 1")
    if np.max(np.abs(rho - rho.conj().T)) > DENSITY_TOL:
        raise ValueError("density matrix is not Hermitian")
    return rho


def clamp_probability(p: float) -> float:
    if p < -CLAMP_TOL or p > 1.0 + CLAMP_TOL:
        raise ValueError(f"probability {p} outside [0, 1] beyond rounding")
    return min(max(p, 0.0), 1.0)


def measure(rho, obs: Observable) -> ProbabilityPair:
    """Born-rule outcome probabilities ``tr(P_+ rho)`` and its complement."""
    rho = check_density(rho)
    p = clamp_probability(float(np.trace(projector(obs) @ rho).real))
    return ProbabilityPair(p, 1.0 - p)


def shannon_entropy(probs) -> float:
    """Shannon entropy in bits of a two-outcome distribution (``0 log 0 = 0``)."""
    p_plus, p_minus = probs
    if abs(p_plus + p_minus - 1.0) > 1e-12:
        raise ValueError(f"probabilities sum to {p_plus + p_minus}, expected 1")
    return float(binary_entropy(clamp_probability(float(p_plus))))


def von_neumann_entropy(rho) -> float:
    rho = check_density(rho)
    lam = mat2_eig(rho).eigenvalues
    h = 0.0
    for v in lam:
        x = min(max(v.real, 0.0), 1.0)
        if x > 0.0:
            h -= x * math.log2(x)
    return h


def mu_bound(obs_r: Observable, obs_q: Observable, rho=None) -> float:
    """Maassen-Uffink bound ``-2 log2 c``, plus ``S(rho)`` when a state is given.

    ``c`` is the largest overlap between eigenvectors of the two observables.
    """
    vecs_r = mat2_eig(projector(obs_r)).eigenvectors
    vecs_q = mat2_eig(projector(obs_q)).eigenvectors
    c = max(abs(np.vdot(u, v)) for u in vecs_r for v in vecs_q)
    bound = -2.0 * math.log2(min(c, 1.0))
    if rho is not None:
        bound += von_neumann_entropy(rho)
    return bound + 0.0


def eur(rho, obs_r: Observable = SZ, obs_q: Observable = SX, t: float = 0.0) -> EURSample:
    h_r = shannon_entropy(measure(rho, obs_r))
    h_q = shannon_entropy(measure(rho, obs_q))
    return EURSample(t, h_r, h_q, h_r + h_q, mu_bound(obs_r, obs_q, rho))


def _born(a: np.ndarray, obs: Observable) -> float:
    """Probability of outcome ``+`` for an unnormalized pure state."""
    n1, n2, n3 = obs.n
    aa, bb = abs(a[0]) ** 2, abs(a[1]) ** 2
    cross = np.conj(a[0]) * a[1]
    return 0.5 * (1.0 + (n3 * (aa - bb) + 2 * n1 * cross.real + 2 * n2 * cross.imag) / (aa + bb))


def eigenbasis_amplitudes(p: GeneralNHParams, state: InitialState, t: float) -> np.ndarray:
    """State at time ``t`` assembled from the eigenbasis expansion.

    For ``s == sigma`` the computational amplitudes are
    ``alpha e^{-iE+t} - e^{-i Theta} beta e^{-iE-t}`` and
    ``e^{-i Theta} alpha e^{-iE+t} + beta e^{-iE-t}``. For ``s != sigma`` the
    same expansion is applied to the balanced matrix ``D H D^-1`` with
    ``D = diag(1, sqrt(sigma/s))`` and the result is mapped back. The
    returned vector is not normalized.
    """
    spec = spectrum_general(p)
    if p.s <= 0 or p.sigma <= 0:
        raise ValueError("eigenbasis expansion needs s > 0 and sigma > 0")
    if spec.phase is Phase.EXCEPTIONAL_POINT:
        raise ValueError("sec(Theta) diverges at the exceptional point; use prob_closed_ep")
    d = math.sqrt(p.sigma / p.s)
    half = 0.5 * state.theta
    balanced = InitialState.angle(2.0 * math.atan2(d * math.sin(half), math.cos(half)))
    big = spec.theta
    alpha, beta = balanced.eigen_coefficients(big)
    ph = np.array([-1j * spec.e_plus * t, -1j * spec.e_minus * t])
    ph -= ph.real.max()  # common factor; keeps broken-phase runs finite
    ep, em = np.exp(ph)
    eth = cmath.exp(-1j * big)
    a0 = alpha * ep - eth * beta * em
    a1 = eth * alpha * ep + beta * em
    return np.array([a0, a1 / d])


def prob_closed_general(p: GeneralNHParams, state: InitialState, obs: Observable, t: float) -> float:
    """Outcome-``+`` probability from the eigenbasis expansion of the state.

    Independent of the propagator: it goes through the eigenvalues, the
    mixing angle ``Theta`` and the expansion coefficients ``alpha``, ``beta``.
    The complex continuation of ``Theta`` covers the broken phase.
    """
    amp = eigenbasis_amplitudes(p, state, t)
    return clamp_probability(float(_born(amp, obs)))


def prob_printed_general(p: GeneralNHParams, state: InitialState, obs: Observable, t: float) -> complex:
    """Literal evaluation of the uncorrected eigenbasis probability expression.

    Kept for diagnostics only: taken literally the expression is complex-valued
    and does not agree with the Born rule (see ``tests/test_measure.py``).
    """
    spec = spectrum_general(p)
    big = spec.theta
    st, ct = cmath.sin(big), cmath.cos(big)
    alpha, beta = state.eigen_coefficients(big)
    th = math.pi - state.theta
    n1, n2, n3 = obs.n
    de = spec.delta_e
    e1, e2 = cmath.exp(1j * de * t), cmath.exp(2j * de * t)
    num = (
        2 * alpha * beta.conjugate() * (n3 * ct - 1j * (n2 - st))
        + 2 * alpha.conjugate() * beta * (n3 * ct + 1j * (n2 - st)) * e2
        + ((n2 * st - 1) / ct ** 2 - n1 * math.sin(th)) * e1
    )
    den = 4j * st * (alpha.conjugate() * beta - alpha.conjugate() * beta * e2) - 2 / ct ** 2 * e1
    return num / den


def prob_closed_ep(
    p: GeneralNHParams, theta: float, obs: Observable, t: float, tol: float = DEFAULT_PHASE_TOL
) -> float:
    """Exceptional-point probability for the state ``cos(theta/2)|0> + sin(theta/2)|1>``.

    ``1/4 [2 - 2 n2 + 2 (n2 + n3 cos theta + n1 sin theta + 2 n3 r t sin phi) / D]``
    with ``D = 1 + r^2 t^2 + r t (2 cos theta sin phi - r t cos 2 phi)``. The
    formula is written for ``s == sigma == r sin phi``; when ``sin phi < 0``
    the state and observable are reflected through ``sigma_z`` first.
    """
    if spectrum_general(p, tol).phase is not Phase.EXCEPTIONAL_POINT:
        raise ValueError("parameters are not at an exceptional point")
    if abs(p.s - p.sigma) > tol * (1.0 + p.s):
        raise ValueError("exceptional-point formula requires s == sigma")
    n1, n2, n3 = obs.n
    r, sp = p.r, math.sin(p.phi)
    if sp < 0:
        # s = -r sin(phi): conjugating by sigma_z maps this onto s = r sin(phi)
        theta, n1, n2 = -theta, -n1, -n2
    den = 1 + r * r * t * t + r * t * (2 * math.cos(theta) * sp - r * t * math.cos(2 * p.phi))
    num = n2 + n3 * math.cos(theta) + n1 * math.sin(theta) + 2 * n3 * r * t * sp
    return clamp_probability(0.25 * (2 - 2 * n2 + 2 * num / den))


def antipt_closed_probabilities(p: AntiPTParams, t: float) -> tuple[float, float, float, float]:
    """``(p_x1, p_x2, p_z1, p_z2)`` of the anti-PT closed form, initial state ``|0>``.

    With ``K = s^2 cosh(2 w t) - lam^2 cos^2 phi``::

        p_x = (1 +- s w sinh(2 w t) / K) / 2,   p_z = (1 -+ w^2 / K) / 2

    Both ratios are evaluated after dividing through by ``w^2`` (using
    ``K = w^2 + 2 s^2 sinh^2(w t)``), which is algebraically identical, stays
    finite at the exceptional point ``w = 0`` and, with the common
    exponential factor removed, for large ``t``. ``p_z1`` is the probability
    of ``|1>``, ``p_x1`` that of ``|+>``.
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    omega = spectrum_antipt(p).omega
    ch, x, a = cos_sinc_scaled(1j * omega, t)  # cosh(wt), sinh(wt)/w, both scaled by e^-a
    ch, x = complex(ch).real, complex(x).real
    e2 = math.exp(-2.0 * float(a))
    den = e2 + 2.0 * p.s * p.s * x * x
    if abs(den) < 1e-300:
        raise ValueError("closed-form denominator vanishes")
    rx = 2.0 * p.s * x * ch / den
    rz = e2 / den
    return 0.5 * (1 + rx), 0.5 * (1 - rx), 0.5 * (1 - rz), 0.5 * (1 + rz)


def eur_antipt_closed(p: AntiPTParams, t: float) -> EURSample:
    px1, _, pz1, _ = antipt_closed_probabilities(p, t)
    h_x = float(binary_entropy(clamp_probability(px1)))
    h_z = float(binary_entropy(clamp_probability(pz1)))
    return EURSample(t, h_z, h_x, h_z + h_x, 1.0)
