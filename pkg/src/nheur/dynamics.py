"""Hamiltonians, spectra and closed-form propagators for the two-level models.

Two families are supported:

* the general model ``[[r e^{i phi}, sigma], [s, r e^{-i phi}]]`` (PT-symmetric
  when ``s == sigma``), and
* the anti-PT model ``[[lam e^{i phi}, i s], [i s, -lam e^{-i phi}]]``.

All closed forms use the complex frequency ``omega`` (principal square root),
so the broken phase is the analytic continuation of the unbroken one and the
exceptional point is the ``omega -> 0`` limit handled by ``sinc_c``.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .linalg import (
    IDENTITY,
    C2Matrix,
    C2Vector,
    as_c2matrix,
    as_c2vector,
    c2matrix,
    cos_sinc_scaled,
    mat2_exp_times,
    sinc_c,
)

DEFAULT_PHASE_TOL = 1e-9
TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class GeneralNHParams:
    r: float
    s: float
    sigma: float
    phi: float

    def __post_init__(self):
        for name in ("r", "s", "sigma", "phi"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v}")
            object.__setattr__(self, name, float(v))
        if self.s < 0 or self.sigma < 0:
            raise ValueError(f"couplings must be non-negative (s={self.s}, sigma={self.sigma})")
        if not 0.0 <= self.phi < TWO_PI:
            raise ValueError(f"phi must lie in [0, 2pi), got {self.phi}")

    @classmethod
    def pt(cls, r: float, s: float, phi: float) -> "GeneralNHParams":
        """PT-symmetric member of the family (``sigma == s``)."""
        return cls(r=r, s=s, sigma=s, phi=phi)


@dataclass(frozen=True)
class AntiPTParams:
    lam: float
    s: float
    phi: float

    def __post_init__(self):
        for name in ("lam", "s", "phi"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v}")
            object.__setattr__(self, name, float(v))
        if not 0.0 <= self.phi < TWO_PI:
            raise ValueError(f"phi must lie in [0, 2pi), got {self.phi}")


# A raw 2x2 Hamiltonian is accepted wherever a parameter set is, e.g. for a
# Hermitian reference curve that is not a member of either family.
System = Union[GeneralNHParams, AntiPTParams, np.ndarray]


class Phase(enum.Enum):
    UNBROKEN = "unbroken"
    BROKEN = "broken"
    EXCEPTIONAL_POINT = "exceptional_point"


def classify_phase(discriminant: float, scale: float, tol: float = DEFAULT_PHASE_TOL) -> Phase:
    """Bucket a phase discriminant (``s sigma - r^2 sin^2 phi`` or ``s^2 - lam^2 cos^2 phi``).

    Values within ``tol * (1 + scale)`` of zero are the exceptional point, so
    scan grids that step through it are classified deterministically.
    """
    if scale < 0 or tol <= 0:
        raise ValueError("scale must be >= 0 and tol > 0")
    if abs(discriminant) <= tol * (1.0 + scale):
        return Phase.EXCEPTIONAL_POINT
    return Phase.UNBROKEN if discriminant > 0 else Phase.BROKEN


@dataclass(frozen=True)
class SpectralData:
    e_plus: complex
    e_minus: complex
    omega: complex
    theta: complex | None
    delta_e: complex
    period: float | None
    phase: Phase
    tol: float = DEFAULT_PHASE_TOL


def build_general(p: GeneralNHParams) -> C2Matrix:
    e = cmath.exp(1j * p.phi)
    return c2matrix(p.r * e, p.sigma, p.s, p.r / e)


def build_antipt(p: AntiPTParams) -> C2Matrix:
    e = cmath.exp(1j * p.phi)
    return c2matrix(p.lam * e, 1j * p.s, 1j * p.s, -p.lam / e)


def hamiltonian(system: System) -> C2Matrix:
    if isinstance(system, GeneralNHParams):
        return build_general(system)
    if isinstance(system, AntiPTParams):
        return build_antipt(system)
    return as_c2matrix(system)


def _general_discriminant(p: GeneralNHParams) -> tuple[float, float]:
    ss = p.s * p.sigma
    rs2 = (p.r * math.sin(p.phi)) ** 2
    return ss - rs2, max(abs(ss), rs2, 1.0)


def _antipt_discriminant(p: AntiPTParams) -> tuple[float, float]:
    s2 = p.s * p.s
    lc2 = (p.lam * math.cos(p.phi)) ** 2
    return s2 - lc2, max(s2, lc2, 1.0)


def spectrum_general(p: GeneralNHParams, tol: float = DEFAULT_PHASE_TOL) -> SpectralData:
    disc, scale = _general_discriminant(p)
    phase = classify_phase(disc, scale, tol)
    omega = cmath.sqrt(disc)
    shift = p.r * math.cos(p.phi)
    theta = None
    if p.s * p.sigma > 0:
        # branch fixed by cos(Theta) = omega / sqrt(s sigma), so the
        # eigenbasis formulas stay consistent with omega in the broken phase
        root = math.sqrt(p.s * p.sigma)
        theta = -1j * cmath.log(omega / root + 1j * p.r * math.sin(p.phi) / root)
        if phase is not Phase.BROKEN:
            theta = complex(theta.real, 0.0)
    period = math.pi / omega.real if phase is Phase.UNBROKEN else None
    return SpectralData(
        e_plus=shift + omega,
        e_minus=shift - omega,
        omega=omega,
        theta=theta,
        delta_e=2 * omega,
        period=period,
        phase=phase,
        tol=tol,
    )


def spectrum_antipt(p: AntiPTParams, tol: float = DEFAULT_PHASE_TOL) -> SpectralData:
    """Spectrum of the anti-PT model.

    ``omega = sqrt(s^2 - lam^2 cos^2 phi)`` is real in the unbroken phase,
    where the eigenvalues ``i lam sin phi +- i omega`` are purely imaginary
    and the dynamics does not oscillate. ``period`` is therefore populated
    in the broken phase, where ``omega`` is imaginary and the state
    oscillates with period ``pi / |omega|``.
    """
    disc, scale = _antipt_discriminant(p)
    phase = classify_phase(disc, scale, tol)
    omega = cmath.sqrt(disc)
    shift = 1j * p.lam * math.sin(p.phi)
    root = cmath.sqrt(-disc)
    period = math.pi / abs(omega) if phase is Phase.BROKEN else None
    return SpectralData(
        e_plus=shift + root,
        e_minus=shift - root,
        omega=omega,
        theta=None,
        delta_e=2 * root,
        period=period,
        phase=phase,
        tol=tol,
    )


def spectrum(system: System, tol: float = DEFAULT_PHASE_TOL) -> SpectralData | None:
    """Dispatch on the system type; raw matrices have no spectral record."""
    if isinstance(system, GeneralNHParams):
        return spectrum_general(system, tol)
    if isinstance(system, AntiPTParams):
        return spectrum_antipt(system, tol)
    return None


def propagator_general(p: GeneralNHParams, t: float) -> C2Matrix:
    """Non-unitary propagator ``exp(-i H t)`` of the general model.

    ``t * sinc(omega t)`` stands in for ``sin(omega t) / omega`` so the same
    expression holds in both phases and at the exceptional point.
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    omega = spectrum_general(p).omega
    z = omega * t
    c = cmath.cos(z)
    ts = t * sinc_c(z)
    rsin = p.r * math.sin(p.phi)
    pref = cmath.exp(-1j * t * p.r * math.cos(p.phi))
    return c2matrix(
        pref * (c + rsin * ts),
        pref * (-1j * p.sigma * ts),
        pref * (-1j * p.s * ts),
        pref * (c - rsin * ts),
    )


def propagator_ep_closed(p: GeneralNHParams, t: float, tol: float = DEFAULT_PHASE_TOL) -> C2Matrix:
    """Printed exceptional-point propagator (linear in ``t``).

    Exact at a PT-symmetric exceptional point, where ``s = sigma = r sin phi``.
    """
    if spectrum_general(p, tol).phase is not Phase.EXCEPTIONAL_POINT:
        raise ValueError("parameters are not at an exceptional point")
    a = t * p.r * math.sin(p.phi)
    pref = cmath.exp(-1j * t * p.r * math.cos(p.phi))
    return c2matrix(pref * (1 + a), pref * (-1j * a), pref * (-1j * a), pref * (1 - a))


def propagator_antipt(p: AntiPTParams, t: float) -> C2Matrix:
    if t < 0:
        raise ValueError("t must be >= 0")
    return mat2_exp_times(build_antipt(p), t)


def propagator(system: System, t: float) -> C2Matrix:
    if isinstance(system, GeneralNHParams):
        return propagator_general(system, t)
    if isinstance(system, AntiPTParams):
        return propagator_antipt(system, t)
    return mat2_exp_times(system, t)


@dataclass(frozen=True)
class HermitianEquivalent:
    eta: C2Matrix
    h: C2Matrix


def hermitian_map(p: GeneralNHParams, tol: float = DEFAULT_PHASE_TOL) -> HermitianEquivalent:
    """Similarity map onto the Hermitian ``r cos(phi) I + omega sigma_x``.

    For ``s != sigma`` a diagonal rescaling ``diag(1, sqrt(sigma/s))`` first
    balances the off-diagonal couplings to ``sqrt(s sigma)``; the angle map
    ``(cos Theta)^-1/2 [[cos Theta/2, -i sin Theta/2], [i sin Theta/2, cos Theta/2]]``
    then acts on the balanced matrix.
    """
    spec = spectrum_general(p, tol)
    if spec.phase is not Phase.UNBROKEN:
        raise ValueError(f"Hermitian map requires the unbroken phase, got {spec.phase.value}")
    theta = spec.theta.real
    half = 0.5 * theta
    k = 1.0 / math.sqrt(math.cos(theta))
    eta_theta = k * np.array(
        [[math.cos(half), -1j * math.sin(half)], [1j * math.sin(half), math.cos(half)]]
    )
    d = np.diag([1.0, math.sqrt(p.sigma / p.s)])
    eta = eta_theta @ d
    h = eta @ build_general(p) @ np.linalg.inv(eta)
    return HermitianEquivalent(eta=as_c2matrix(eta), h=as_c2matrix(h))


def unitary_equivalent(p: GeneralNHParams, t: float) -> C2Matrix:
    """The unitary ``exp(-i t r cos phi) [[cos wt, -i sin wt], [-i sin wt, cos wt]]``."""
    w = spectrum_general(p).omega.real
    pref = cmath.exp(-1j * t * p.r * math.cos(p.phi))
    c, s = math.cos(w * t), math.sin(w * t)
    return c2matrix(pref * c, pref * -1j * s, pref * -1j * s, pref * c)


class StateKind(enum.Enum):
    ZERO = "zero"
    ONE = "one"
    PLUS = "plus"
    ANGLE = "angle"


@dataclass(frozen=True)
class InitialState:
    """Real initial state ``cos(theta/2)|0> + sin(theta/2)|1>``.

    ``theta`` is the Bloch polar angle: 0 for ``|0>``, pi for ``|1>`` and
    pi/2 for ``|+>``. The named kinds are shorthands for those angles.
    """

    kind: StateKind = StateKind.PLUS
    theta: float = field(default=math.pi / 2)

    def __post_init__(self):
        fixed = {StateKind.ZERO: 0.0, StateKind.ONE: math.pi, StateKind.PLUS: math.pi / 2}
        if self.kind in fixed:
            object.__setattr__(self, "theta", fixed[self.kind])
        elif not math.isfinite(self.theta):
            raise ValueError("theta must be finite")

    @classmethod
    def zero(cls):
        return cls(StateKind.ZERO)

    @classmethod
    def one(cls):
        return cls(StateKind.ONE)

    @classmethod
    def plus(cls):
        return cls(StateKind.PLUS)

    @classmethod
    def angle(cls, theta: float):
        return cls(StateKind.ANGLE, theta)

    @classmethod
    def parse(cls, text: str) -> "InitialState":
        key = text.strip().lower()
        aliases = {"zero": cls.zero, "0": cls.zero, "one": cls.one, "1": cls.one,
                   "plus": cls.plus, "+": cls.plus}
        if key in aliases:
            return aliases[key]()
        if key.startswith("theta="):
            return cls.angle(float(key[len("theta="):]))
        raise ValueError(f"unknown initial state {text!r} (zero, one, plus or theta=<radians>)")

    @property
    def label(self) -> str:
        return self.kind.value if self.kind is not StateKind.ANGLE else f"theta={self.theta!r}"

    def amplitudes(self) -> C2Vector:
        if self.kind is StateKind.PLUS:
            a = 1.0 / math.sqrt(2.0)
            return as_c2vector([a, a])
        return as_c2vector([math.cos(0.5 * self.theta), math.sin(0.5 * self.theta)])

    def eigen_coefficients(self, big_theta: complex) -> tuple[complex, complex]:
        """``(alpha, beta)`` of the eigenbasis expansion for mixing angle ``big_theta``.

        The coefficient formulas are written for the state
        ``sin(t/2)|0> + cos(t/2)|1>``, so they are evaluated at
        ``t = pi - theta``.
        """
        t = math.pi - self.theta
        sec = 1.0 / cmath.cos(big_theta)
        e = cmath.exp(1j * big_theta)
        alpha = 0.5 * sec * (math.cos(0.5 * t) + e * math.sin(0.5 * t))
        beta = 0.5 * sec * (e * math.cos(0.5 * t) - math.sin(0.5 * t))
        return alpha, beta


@dataclass(frozen=True)
class Evolved:
    state: C2Vector
    rho: np.ndarray
    norm_growth: float


def evolve_normalized(u, psi0) -> Evolved:
    """Apply a (generally non-unitary) propagator and renormalize the result."""
    psi0 = as_c2vector(psi0)
    if abs(np.vdot(psi0, psi0).real - 1.0) > 1e-12:
        raise ValueError("initial state must be normalized")
    v = np.asarray(u) @ psi0
    nrm2 = float(np.vdot(v, v).real)
    if not math.isfinite(nrm2):
        raise ValueError("state norm overflowed; evolve a shorter time")
    if math.sqrt(nrm2) < 1e-300:
        raise ValueError("state decayed to zero norm; cannot renormalize")
    state = v / math.sqrt(nrm2)
    rho = np.outer(state, state.conj())
    rho /= np.trace(rho).real
    rho.flags.writeable = False
    return Evolved(as_c2vector(state), rho, nrm2)


def rho_plus_closed(p: GeneralNHParams, t: float) -> np.ndarray:
    """Normalized density matrix at time ``t`` for the initial state ``|+>``.

    Written with ``c = cos(omega t)`` and ``S = sin(omega t) / omega``, which
    are both real for real parameters (hyperbolic in the broken phase). A
    common exponential factor is dropped from ``c`` and ``S``; it cancels
    against the normalization.
    """
    omega = spectrum_general(p).omega
    c, s_, _ = cos_sinc_scaled(omega, t)
    c, s_ = float(np.real(c)), float(np.real(s_))
    rs = p.r * math.sin(p.phi)
    norm = c * c + 0.5 * (p.s ** 2 + p.sigma ** 2 + 2 * rs * rs) * s_ * s_
    r00 = (p.sigma ** 2 * s_ * s_ + (c + rs * s_) ** 2) / (2 * norm)
    r11 = (p.s ** 2 * s_ * s_ + (c - rs * s_) ** 2) / (2 * norm)
    r01 = (c + (1j * p.s - rs) * s_) * (c - (1j * p.sigma - rs) * s_) / (2 * norm)
    rho = np.array([[r00, r01], [np.conj(r01), r11]], dtype=complex)
    rho.flags.writeable = False
    return rho


__all__ = [
    "AntiPTParams",
    "Evolved",
    "GeneralNHParams",
    "HermitianEquivalent",
    "IDENTITY",
    "InitialState",
    "Phase",
    "SpectralData",
    "StateKind",
    "System",
    "build_antipt",
    "build_general",
    "classify_phase",
    "evolve_normalized",
    "hamiltonian",
    "hermitian_map",
    "propagator",
    "propagator_antipt",
    "propagator_ep_closed",
    "propagator_general",
    "rho_plus_closed",
    "spectrum",
    "spectrum_antipt",
    "spectrum_general",
    "unitary_equivalent",
]
