import cmath
import math

import pytest

from critical_line_zeros.families import (
    Custom,
    FamilySpec,
    MeromorphicSpec,
    Sign,
    Zeta2,
    ZetaTranslate,
    build_family,
)

LOG2_HALF = math.log(2) / 2


def exp_kernel() -> MeromorphicSpec:
    """h(s) = e^{2s} on the axis 0: f⁻ = 2 sinh 2s, f⁺ = 2 cosh 2s."""
    return MeromorphicSpec(lambda s: cmath.exp(2 * s), 0.0, label="exp(2s)")


def exp_envelope(sigma: float) -> float:
    return 2 * math.exp(-4 * sigma)


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for key in ('CLZ_TOLERANCE', 'CLZ_SEED', 'CLZ_MAX_TERMS', 'CLZ_OUTPUT_DIR'):
        monkeypatch.delenv(key, raising=False)


@pytest.fixture(scope="session")
def sinh_family():
    return build_family(FamilySpec(Custom(exp_kernel(), exp_envelope), Sign.MINUS))


@pytest.fixture(scope="session")
def cosh_family():
    return build_family(FamilySpec(Custom(exp_kernel(), exp_envelope), Sign.PLUS))


@pytest.fixture(scope="session")
def zeta2_family():
    return build_family(FamilySpec(Zeta2(LOG2_HALF, 1.0)))


@pytest.fixture(scope="session")
def taylor_family():
    """ζ*(s+1) − ζ*(2−s)."""
    return build_family(FamilySpec(ZetaTranslate(1.0), Sign.MINUS))


@pytest.fixture(scope="session")
def hat_f8():
    """ζ*(s+8) + ζ*(s−8)."""
    return build_family(FamilySpec(ZetaTranslate(8.0), Sign.PLUS))
