import math

import pytest

from critical_line_zeros.errors import InvalidParameterError
from critical_line_zeros.families import FamilySpec, MeromorphicSpec, PerturbedPolynomial, build_family
from critical_line_zeros.polynomial import Polynomial
from critical_line_zeros.stability import (
    blaschke_check,
    check_polynomial,
    copiado_check,
    count_window,
    hb_split,
    interlacing_check,
    is_stable,
    on_line_only,
    perturbed_family_check,
    phase_limit,
    shift_ratio_check,
    stable_corpus,
    stodola_condition,
    unstable_corpus,
    xi_kernel,
)

CUBE = Polynomial.from_descending([1, 3, 3, 1])
# z³ + z² + 2z + 8: positive coefficients, roots in σ > 0
TRAP = Polynomial.from_descending([1, 1, 2, 8])


def polynomial_kernel(p: Polynomial) -> MeromorphicSpec:
    return MeromorphicSpec(lambda s: complex(p(s)), 0.0, label=str(p))


def test_even_odd_split():
    q, r = hb_split(CUBE)
    assert q.coefficients == (1.0, 3.0)
    assert r.coefficients == (3.0, 1.0)
    assert interlacing_check(q, r)


def test_interlacing_rejects_bad_orderings():
    assert not interlacing_check(Polynomial((1.0, 1.0)), Polynomial((1.0, 1.0)))
    q, r = hb_split(TRAP)
    assert not interlacing_check(q, r)
    assert not is_stable(TRAP)
    assert stodola_condition(TRAP)


def test_constant_is_rejected():
    with pytest.raises(InvalidParameterError):
        is_stable(Polynomial((2.0,)))


def test_phase_limit():
    assert phase_limit(Polynomial.from_descending([1, 2, 1])) == pytest.approx(math.pi, abs=0.01)


def test_necessary_conditions_hold_for_a_stable_cube():
    checks = check_polynomial(CUBE, with_zeros=False)
    assert checks.stable
    assert checks.on_line is None
    assert checks.necessary_conditions


def test_corpora():
    for p in stable_corpus(20):
        assert is_stable(p)
        assert check_polynomial(p, with_zeros=False).necessary_conditions
    for p in unstable_corpus(10):
        assert not is_stable(p)
        assert not check_polynomial(p, with_zeros=False).necessary_conditions


def test_corpora_are_seeded():
    assert stable_corpus(5) == stable_corpus(5)
    assert stable_corpus(5, seed=1) != stable_corpus(5)


def test_copiado_for_stable_and_unstable_kernels():
    assert copiado_check(polynomial_kernel(Polynomial.from_descending([1, 3, 2])), samples=200)
    result = copiado_check(polynomial_kernel(Polynomial((-1.0, 1.0))), samples=200)
    assert not result.passed
    assert result.worst > 1
    assert not result.certifying


def test_shift_must_cover_the_strip():
    with pytest.raises(InvalidParameterError):
        shift_ratio_check(xi_kernel(1.0), 0.1, 0.5)


def test_blaschke_removes_a_right_zero():
    fam = build_family(FamilySpec(PerturbedPolynomial(Polynomial((-1.0, 1.0)), 2.0)))
    assert blaschke_check(fam, samples=100)


def test_xi_kernel_scale():
    with pytest.raises(InvalidParameterError):
        xi_kernel(0.0)
    assert xi_kernel(2.0).a == 0.5


def test_perturbed_check_preconditions():
    with pytest.raises(InvalidParameterError):
        perturbed_family_check(Polynomial((1.0, 1.0)), 1.0, 10.0)
    with pytest.raises(InvalidParameterError):
        perturbed_family_check(TRAP, 2.0, 10.0)


@pytest.mark.slow
def test_perturbed_family_zeros_on_the_line():
    report = perturbed_family_check(Polynomial((1.0, 1.0)), 2.0, 20.0)
    assert report.all_on_line


@pytest.mark.slow
def test_stable_product_has_only_line_zeros():
    assert on_line_only(Polynomial.from_roots([-1, -2]))


@pytest.mark.slow
def test_xi_shift_ratio():
    assert shift_ratio_check(xi_kernel(1.0), 0.5, 0.5, samples=100)


def test_count_window_can_pass_half_the_degree():
    # p = z + 1, y = 2: four zeros below T = 20 with u = 1
    window = count_window(4, 20.0, 2.0, 1.0)
    assert window == pytest.approx(0.5873, abs=1e-4)
    assert 0.5 < window < 1.5


@pytest.mark.slow
def test_full_corpora():
    for p in stable_corpus(200):
        checks = check_polynomial(p)
        assert checks.on_line
        assert checks.necessary_conditions
    for p in unstable_corpus(20):
        assert not check_polynomial(p, with_zeros=False).necessary_conditions
