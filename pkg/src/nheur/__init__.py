"""Entropic uncertainty dynamics and exceptional-point witnesses for two-level non-Hermitian systems."""

__version__ = "0.1.0"

from .dynamics import (  # noqa: E402
    AntiPTParams,
    GeneralNHParams,
    InitialState,
    Phase,
    propagator,
    spectrum,
)
from .measure import SX, SZ, Observable, eur, measure  # noqa: E402
from .criticality import beta, eur_trace, scan, witness  # noqa: E402

__all__ = [
    "AntiPTParams",
    "GeneralNHParams",
    "InitialState",
    "Observable",
    "Phase",
    "SX",
    "SZ",
    "beta",
    "eur",
    "eur_trace",
    "measure",
    "propagator",
    "scan",
    "spectrum",
    "witness",
]
