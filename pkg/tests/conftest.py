import math

import numpy as np
import pytest
from hypothesis import settings

from nheur.dynamics import AntiPTParams, GeneralNHParams

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

HALF_PI = math.pi / 2


@pytest.fixture
def pt_unbroken():
    return GeneralNHParams(1.0, 2.0, 2.0, HALF_PI)


@pytest.fixture
def pt_broken():
    return GeneralNHParams(2.0, 1.0, 1.0, HALF_PI)


@pytest.fixture
def pt_ep():
    return GeneralNHParams(1.0, 1.0, 1.0, HALF_PI)


@pytest.fixture
def general():
    return GeneralNHParams(0.7, math.sqrt(2) / 2, math.sqrt(2), HALF_PI)


@pytest.fixture
def antipt_unbroken():
    return AntiPTParams(1.0, 2.0, 0.0)


@pytest.fixture
def antipt_broken():
    return AntiPTParams(1.0, 0.5, 0.0)


def expm_reference(h, t):
    """exp(-i h t) by scaling and squaring a Taylor series (numpy only, no eigenvectors)."""
    a = -1j * t * np.asarray(h, dtype=complex)
    nrm = np.abs(a).sum(axis=1).max()
    k = max(0, int(np.ceil(np.log2(nrm))) + 1) if nrm > 0 else 0
    a = a / 2.0 ** k
    term = np.eye(2, dtype=complex)
    out = term.copy()
    for n in range(1, 30):
        term = term @ a / n
        out = out + term
    for _ in range(k):
        out = out @ out
    return out
