import numpy as np
import pytest

from critical_line_zeros.errors import InvalidParameterError, RootFindingError
from critical_line_zeros.polynomial import Polynomial, RealPolynomial, parse_polynomial


def test_construction_orders():
    p = Polynomial.from_descending([1, 3, 2])
    assert p.coefficients == (2.0, 3.0, 1.0)
    assert p.degree == 2
    assert p.is_real
    assert Polynomial.from_roots([-1, -2]) == p


def test_trailing_zeros_are_dropped():
    assert Polynomial((1.0, 2.0, 0.0, 0.0)).degree == 1
    assert Polynomial(()).is_zero


def test_roots():
    roots = np.sort_complex(Polynomial.from_descending([1, 3, 2]).roots())
    assert np.allclose(roots, [-2, -1], atol=1e-12)
    cubic = Polynomial.from_descending([1, 1, 2, 8])
    assert np.allclose(cubic(cubic.roots()), 0, atol=1e-10)


def test_root_errors():
    with pytest.raises(RootFindingError):
        Polynomial((0.0,)).roots()
    with pytest.raises(RootFindingError):
        Polynomial((1.0,) * 66).roots()
    assert Polynomial((3.0,)).roots().size == 0


def test_reflect_and_compose():
    p = Polynomial((1.0, 1.0))
    assert p.reflect(0.0) == Polynomial((1.0, -1.0))
    assert p.reflect(0.5) == Polynomial((2.0, -1.0))
    assert Polynomial((0.0, 1.0)).compose_linear(2.0, -0.5) == Polynomial((-0.5, 2.0))


def test_divide_linear():
    quotient, remainder = Polynomial.from_descending([1, 0, -1]).divide_linear(1.0)
    assert quotient == Polynomial((1.0, 1.0))
    assert abs(remainder) < 1e-15


def test_arithmetic():
    p = Polynomial((1.0, 1.0)) * Polynomial((2.0, 1.0))
    assert p == Polynomial.from_descending([1, 3, 2])
    assert (p - p).is_zero
    assert (p + 1).coefficients[0] == 3.0
    assert p.derivative() == Polynomial((3.0, 2.0))


def test_str():
    assert str(Polynomial.from_descending([2, -1])) == '2s - 1'
    assert str(Polynomial.from_descending([1, 0, -1])) == 's^2 - 1'


def test_parse_polynomial():
    assert parse_polynomial('2,-1') == Polynomial((-1.0, 2.0))
    assert parse_polynomial('1 3 2') == Polynomial((2.0, 3.0, 1.0))
    assert parse_polynomial('1,i').coefficients == (1j, 1 + 0j)
    with pytest.raises(InvalidParameterError):
        parse_polynomial('1,i', real=True)
    with pytest.raises(InvalidParameterError):
        parse_polynomial(' ')


def test_real_polynomial():
    assert isinstance(RealPolynomial.coerce(Polynomial((1 + 1e-15j, 2.0))), RealPolynomial)
    with pytest.raises(InvalidParameterError):
        RealPolynomial((1j, 1.0))
