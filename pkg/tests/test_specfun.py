import cmath
import math

import mpmath
import numpy as np
import pytest

from critical_line_zeros import specfun
from critical_line_zeros.characters import select_character
from critical_line_zeros.errors import (
    BudgetExceededError,
    InvalidParameterError,
    NonPrimitiveCharacterError,
    PoleError,
)
from critical_line_zeros.specfun import (
    EvalPrecision,
    bessel_k,
    dirichlet_l,
    log_gamma,
    xi,
    xi_chi,
    zeta,
    zeta_completed,
)

FIRST_ZERO = 14.134725141734693


def _close(value, expected, rel=1e-10):
    return abs(complex(value) - complex(expected)) <= rel * max(1.0, abs(complex(expected)))


# ---- log Γ

def test_log_gamma_classical_values():
    assert abs(log_gamma(1).value) < 1e-15
    assert abs(log_gamma(0.5).value - math.log(math.sqrt(math.pi))) < 1e-12


def test_log_gamma_recurrence():
    s = 2.5 + 3j
    shifted = cmath.exp(log_gamma(s + 1).value)
    assert abs(shifted - s * cmath.exp(log_gamma(s).value)) < 1e-12 * abs(shifted)


@pytest.mark.parametrize("s", [0, -1, -7])
def test_log_gamma_poles(s):
    with pytest.raises(PoleError):
        log_gamma(s)


# ---- ζ and its completions

def test_zeta_classical_values():
    assert abs(zeta(2).value - math.pi ** 2 / 6) < 1e-10
    assert zeta(0).value == -0.5
    assert abs(zeta(-2).value) < 1e-15


def test_zeta_pole():
    with pytest.raises(PoleError):
        zeta(1)


def test_zeta_first_line_zero():
    assert abs(zeta(complex(0.5, FIRST_ZERO)).value) < 1e-5


@pytest.mark.parametrize("s", [0.3 + 7j, 2 + 40j, 0.5 + 100j, -2.5 + 3j, -5 + 10j, -3.5 + 45j])
def test_zeta_matches_mpmath(s):
    expected = complex(mpmath.zeta(s))
    assert _close(zeta(s).value, expected, rel=1e-9)


def test_zeta_error_estimate_covers_tighter_evaluation():
    s = 0.7 + 21j
    loose = zeta(s)
    tight = zeta(s, EvalPrecision().tighter())
    assert abs(loose.value - tight.value) <= loose.est_error + tight.est_error


def test_zeta_budget():
    with pytest.raises(BudgetExceededError):
        zeta(0.5 + 5000j, EvalPrecision(max_terms=10))


@pytest.mark.parametrize("s", [0.3 + 7j, 1.7 - 3j, 0.5 + 20j])
def test_zeta_completed_matches_definition(s):
    expected = complex(mpmath.pi ** (-s / 2) * mpmath.gamma(s / 2) * mpmath.zeta(s))
    assert _close(zeta_completed(s).value, expected, rel=1e-9)


def test_zeta_completed_functional_equation():
    s = 0.3 + 7j
    assert abs(zeta_completed(s).value - zeta_completed(1 - s).value) < 1e-10


def test_zeta_completed_residue_at_one():
    eps = 1e-7
    assert abs(eps * zeta_completed(1 + eps).value - 1) < 1e-5


def test_zeta_completed_poles():
    for s in (0, 1):
        with pytest.raises(PoleError):
            zeta_completed(s)


def test_xi_values():
    assert xi(0).value == 0.5
    assert xi(1).value == 0.5
    assert abs(xi(complex(0.5, FIRST_ZERO)).value) < 1e-8


def test_conjugation_symmetry():
    for s in (0.3 + 7j, 2 + 11j, -1.5 + 4j):
        assert abs(zeta(s.conjugate()).value - zeta(s).value.conjugate()) < 1e-12 * max(1, abs(zeta(s).value))


# ---- Dirichlet L

@pytest.fixture
def chi_minus_4():
    return select_character('4.2')


def test_dirichlet_l_leibniz(chi_minus_4):
    assert abs(dirichlet_l(1, chi_minus_4).value - math.pi / 4) < 1e-10


def test_dirichlet_l_at_zero(chi_minus_4):
    assert abs(dirichlet_l(0, chi_minus_4).value - 0.5) < 1e-10


@pytest.mark.parametrize("s", [0.4 + 3j, 2 + 5j, 0.8 - 12j])
def test_dirichlet_l_matches_mpmath(chi_minus_4, s):
    expected = complex(mpmath.dirichlet(s, [0, 1, 0, -1]))
    assert _close(dirichlet_l(s, chi_minus_4).value, expected, rel=1e-9)


def test_xi_chi_functional_equation(chi_minus_4):
    s = 0.6 + 3j
    direct = xi_chi(s, chi_minus_4).value
    l_value = dirichlet_l(s, chi_minus_4).value
    expected = (4 / math.pi) ** (s / 2) * cmath.exp(log_gamma((s + 1) / 2).value) * l_value
    assert _close(direct, expected, rel=1e-10)


def test_xi_chi_needs_primitive_character():
    with pytest.raises(NonPrimitiveCharacterError):
        xi_chi(0.5 + 1j, select_character('4.1'))


# ---- Bessel K

def test_bessel_half_order_closed_form():
    assert abs(bessel_k(0.5, 1.0).value - math.sqrt(math.pi / 4) * math.exp(-2)) < 1e-10


def test_bessel_even_in_order():
    s = 0.7 + 2j
    assert abs(bessel_k(s, 1.0).value - bessel_k(-s, 1.0).value) < 1e-10


def test_bessel_recurrence():
    s, A = 0.7 + 2j, 1.0
    lhs = s * bessel_k(s, A).value
    rhs = A * (bessel_k(1 + s, A).value - bessel_k(1 - s, A).value)
    assert abs(lhs - rhs) < 1e-9


@pytest.mark.parametrize("nu, A", [(0.3 + 1j, 0.7), (2.0, 1.0), (3.0, 1.5), (1.2 + 0.5j, 4.0)])
def test_bessel_matches_mpmath(nu, A):
    expected = complex(mpmath.besselk(nu, 2 * A))
    assert _close(bessel_k(nu, A).value, expected, rel=1e-8)


def test_bessel_needs_positive_argument():
    with pytest.raises(InvalidParameterError):
        bessel_k(0.5, 0.0)


def test_precision_validation():
    with pytest.raises(InvalidParameterError):
        EvalPrecision(target_abs_tol=0)
    with pytest.raises(InvalidParameterError):
        EvalPrecision(max_terms=0)


def test_default_precision_applies_without_prec(monkeypatch):
    monkeypatch.setattr(specfun, 'DEFAULT_PRECISION', specfun.DEFAULT_PRECISION)
    specfun.set_default_precision(EvalPrecision(max_terms=10))
    with pytest.raises(BudgetExceededError):
        zeta(0.5 + 5000j)


# ---- random points

def _points(n=100):
    rng = np.random.default_rng(20240517)
    return [complex(x, y) for x, y in zip(rng.uniform(-2.0, 3.0, n), rng.uniform(1.0, 40.0, n))]


def _gamma_scale(s, shift=0.0, conductor=1.0):
    """|(N/π)^{s/2} Γ((s+κ)/2)| at s and at 1 − s."""
    with mpmath.workdps(30):
        return max(float(abs((conductor / mpmath.pi) ** (z / 2) * mpmath.gamma((z + shift) / 2)))
                   for z in (mpmath.mpc(s), 1 - mpmath.mpc(s)))


@pytest.mark.slow
def test_zeta_completed_functional_equation_at_random_points():
    for s in _points():
        with mpmath.workdps(30):
            z = mpmath.mpc(s)
            expected = complex(mpmath.pi ** (-z / 2) * mpmath.gamma(z / 2) * mpmath.zeta(z))
            size = max(1.0, float(abs(mpmath.zeta(z))), float(abs(mpmath.zeta(1 - z))))
        residual = abs(zeta_completed(s).value - expected)
        assert residual <= 1e-9 * _gamma_scale(s) * size, s


@pytest.mark.slow
def test_xi_chi_functional_equation_at_random_points(chi_minus_4):
    for s in _points():
        with mpmath.workdps(30):
            z = mpmath.mpc(s)
            l_value = mpmath.dirichlet(z, [0, 1, 0, -1])
            expected = complex((4 / mpmath.pi) ** (z / 2) * mpmath.gamma((z + 1) / 2) * l_value)
            size = max(1.0, float(abs(l_value)), float(abs(mpmath.dirichlet(1 - z, [0, 1, 0, -1]))))
        residual = abs(xi_chi(s, chi_minus_4).value - expected)
        assert residual <= 1e-9 * _gamma_scale(s, 1.0, 4.0) * size, s
        assert abs(xi_chi(1 - s, chi_minus_4).value - xi_chi(s, chi_minus_4).value) <= 1e-9 * abs(expected) + 1e-300


@pytest.mark.slow
def test_bessel_recurrence_at_random_points():
    rng = np.random.default_rng(20240517)
    for re, im, A in zip(rng.uniform(-2.0, 2.0, 100), rng.uniform(-8.0, 8.0, 100), rng.uniform(0.5, 3.0, 100)):
        nu = complex(re, im)
        up, down, mid = (bessel_k(nu + 1, A).value, bessel_k(nu - 1, A).value, bessel_k(nu, A).value)
        scale = max(abs(up), abs(down), abs(nu / A * mid))
        assert abs(up - down - nu / A * mid) <= 1e-8 * scale, (nu, A)
