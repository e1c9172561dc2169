import math

import pytest
from sympy import totient

from critical_line_zeros.characters import enumerate_characters, root_number, select_character
from critical_line_zeros.errors import InvalidParameterError, ModulusOutOfRangeError, NonPrimitiveCharacterError


@pytest.mark.parametrize("modulus", range(1, 31))
def test_enumeration_is_complete(modulus):
    characters = enumerate_characters(modulus)
    assert len(characters) == int(totient(modulus))
    assert characters[0].is_principal
    assert len({chi.numerators for chi in characters}) == len(characters)


def test_minus_four():
    chi = select_character('4.2')
    assert chi.is_primitive
    assert chi.kappa == 1
    assert [chi(n) for n in range(4)] == pytest.approx([0, 1, 0, -1])
    assert abs(root_number(chi).epsilon - 1) < 1e-12


def test_modulus_one_is_trivial():
    (chi,) = enumerate_characters(1)
    assert chi(7) == 1
    assert chi.conductor == 1


@pytest.mark.parametrize("modulus", [15, 16, 21])
def test_characters_are_multiplicative(modulus):
    for chi in enumerate_characters(modulus):
        for m in range(1, modulus):
            for n in range(1, modulus):
                assert abs(chi(m * n) - chi(m) * chi(n)) < 1e-12


@pytest.mark.parametrize("modulus", [3, 4, 5, 7, 8, 11, 12, 13])
def test_root_numbers_are_unimodular(modulus):
    primitive = [chi for chi in enumerate_characters(modulus) if chi.is_primitive]
    assert primitive
    for chi in primitive:
        rn = root_number(chi)
        assert abs(abs(rn.gauss_sum) ** 2 - modulus) < 1e-9
        assert abs(abs(rn.epsilon) - 1) < 1e-12


def test_conductors_mod_12():
    conductors = sorted(chi.conductor for chi in enumerate_characters(12))
    assert conductors == [1, 3, 4, 12]


def test_parity_matches_value_at_minus_one():
    for chi in enumerate_characters(13):
        assert chi(12) == pytest.approx(1 if chi.kappa == 0 else -1)


def test_conjugate_is_an_involution():
    for chi in enumerate_characters(7):
        assert chi.conjugate().conjugate() == chi
        assert all(abs(chi.conjugate()(n) - chi(n).conjugate()) < 1e-12 for n in range(7))


def test_selector_errors():
    with pytest.raises(InvalidParameterError):
        select_character('5.0')
    with pytest.raises(InvalidParameterError):
        select_character('5.5')
    with pytest.raises(InvalidParameterError):
        select_character('five')
    with pytest.raises(ModulusOutOfRangeError):
        enumerate_characters(0)


def test_root_number_needs_primitive():
    with pytest.raises(NonPrimitiveCharacterError):
        root_number(select_character('4.1'))
    with pytest.raises(NonPrimitiveCharacterError):
        root_number(next(chi for chi in enumerate_characters(9) if chi.conductor == 3))


def test_gauss_sum_of_quadratic_character_mod_5():
    quadratic = next(chi for chi in enumerate_characters(5) if chi.order and all(
        abs(chi(n).imag) < 1e-12 for n in range(5)) and not chi.is_principal)
    assert abs(root_number(quadratic).gauss_sum - math.sqrt(5)) < 1e-12
