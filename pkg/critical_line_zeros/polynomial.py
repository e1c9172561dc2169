"""Polynomials with real or complex coefficients, stored in ascending order."""
from dataclasses import dataclass
import re

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import InvalidParameterError, RootFindingError
from .literals import parse_complex

MAX_DEGREE = 64


def _as_tuple(coefficients) -> tuple:
    coeffs = np.atleast_1d(np.asarray(coefficients, dtype=complex))
    if coeffs.size == 0:
        coeffs = np.zeros(1, dtype=complex)
    nonzero = np.flatnonzero(coeffs)
    coeffs = coeffs[:nonzero[-1] + 1] if nonzero.size else coeffs[:1] * 0
    if np.all(coeffs.imag == 0):
        return tuple(float(c) for c in coeffs.real)
    return tuple(complex(c) for c in coeffs)


@dataclass(frozen=True)
class Polynomial:
    """p(s) = c₀ + c₁s + … + c_n sⁿ with c_n ≠ 0 (the zero polynomial keeps a single 0)."""

    coefficients: tuple

    def __post_init__(self):
        object.__setattr__(self, 'coefficients', _as_tuple(self.coefficients))

    # ---- construction

    @classmethod
    def from_descending(cls, coefficients) -> 'Polynomial':
        return cls(tuple(reversed(list(coefficients))))

    @classmethod
    def from_roots(cls, roots, leading=1.0) -> 'Polynomial':
        coeffs = npoly.polyfromroots(np.asarray(roots, dtype=complex)) * leading
        if np.allclose(coeffs.imag, 0, atol=1e-14 * max(1.0, float(np.max(np.abs(coeffs))))):
            coeffs = coeffs.real
        return cls(tuple(coeffs))

    # ---- basic properties

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return len(self.coefficients) == 1 and self.coefficients[0] == 0

    @property
    def is_real(self) -> bool:
        return all(isinstance(c, float) for c in self.coefficients)

    @property
    def leading(self):
        return self.coefficients[-1]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.coefficients, dtype=float if self.is_real else complex)

    def __call__(self, s):
        return npoly.polyval(s, self.as_array())

    def derivative(self) -> 'Polynomial':
        if self.degree == 0:
            return Polynomial((0.0,))
        return Polynomial(tuple(npoly.polyder(self.as_array())))

    def conjugate(self) -> 'Polynomial':
        return Polynomial(tuple(np.conj(np.asarray(self.coefficients, dtype=complex))))

    def roots(self) -> np.ndarray:
        """Roots from the companion-matrix eigenvalues, each polished by one Newton step."""
        if self.is_zero:
            raise RootFindingError("The zero polynomial has no isolated roots")
        if self.degree > MAX_DEGREE:
            raise RootFindingError(f"Degree {self.degree} exceeds the cap of {MAX_DEGREE}")
        if self.degree == 0:
            return np.zeros(0, dtype=complex)
        coeffs = np.asarray(self.coefficients, dtype=complex)
        if self.degree == 1:
            roots = np.array([-coeffs[0] / coeffs[1]])
        else:
            roots = np.linalg.eigvals(npoly.polycompanion(coeffs))
        slope = npoly.polyval(roots, npoly.polyder(coeffs))
        value = npoly.polyval(roots, coeffs)
        safe = np.abs(slope) > 0
        roots = roots.astype(complex)
        roots[safe] -= value[safe] / slope[safe]
        if not np.all(np.isfinite(roots)):
            raise RootFindingError(f"Non-finite roots for {self}")
        return roots

    def reflect(self, a: float) -> 'Polynomial':
        """The polynomial s ↦ p̄(2a − s), with conjugated coefficients."""
        result = np.zeros(1, dtype=complex)
        for c in reversed(np.conj(np.asarray(self.coefficients, dtype=complex))):
            result = npoly.polyadd(npoly.polymul(result, [2 * a, -1.0]), [c])
        return Polynomial(tuple(result))

    def compose_linear(self, scale, shift) -> 'Polynomial':
        """The polynomial s ↦ p(scale·s + shift)."""
        result = np.zeros(1, dtype=complex)
        for c in reversed(np.asarray(self.coefficients, dtype=complex)):
            result = npoly.polyadd(npoly.polymul(result, [shift, scale]), [c])
        return Polynomial(tuple(result))

    def divide_linear(self, root) -> tuple['Polynomial', complex]:
        """Quotient and remainder of p(s) / (s − root)."""
        quotient, remainder = npoly.polydiv(np.asarray(self.coefficients, dtype=complex), [-root, 1.0])
        return Polynomial(tuple(quotient)), complex(remainder[0])

    # ---- arithmetic

    def _coerce(self, other) -> np.ndarray:
        if isinstance(other, Polynomial):
            return np.asarray(other.coefficients, dtype=complex)
        return np.asarray([other], dtype=complex)

    def __add__(self, other) -> 'Polynomial':
        return Polynomial(tuple(npoly.polyadd(np.asarray(self.coefficients, dtype=complex), self._coerce(other))))

    __radd__ = __add__

    def __neg__(self) -> 'Polynomial':
        return Polynomial(tuple(-np.asarray(self.coefficients, dtype=complex)))

    def __sub__(self, other) -> 'Polynomial':
        return self + (-Polynomial(tuple(self._coerce(other))))

    def __mul__(self, other) -> 'Polynomial':
        return Polynomial(tuple(npoly.polymul(np.asarray(self.coefficients, dtype=complex), self._coerce(other))))

    __rmul__ = __mul__

    def __str__(self) -> str:
        terms = []
        for power in range(self.degree, -1, -1):
            c = self.coefficients[power]
            if c == 0 and self.degree > 0:
                continue
            text = f"{c:g}" if isinstance(c, float) else f"({c.real:g}{c.imag:+g}i)"
            if power >= 1 and text in ('1', '-1'):
                text = text[:-1]
            variable = '' if power == 0 else ('s' if power == 1 else f"s^{power}")
            terms.append(f"{text}{variable}")
        return ' + '.join(terms).replace('+ -', '- ') or '0'


class RealPolynomial(Polynomial):
    """A polynomial whose coefficients are all real."""

    def __post_init__(self):
        super().__post_init__()
        if not self.is_real:
            raise InvalidParameterError(f"Polynomial {self} has non-real coefficients")

    @classmethod
    def coerce(cls, p: Polynomial) -> 'RealPolynomial':
        coeffs = np.asarray(p.coefficients, dtype=complex)
        if np.any(np.abs(coeffs.imag) > 1e-12 * max(1.0, float(np.max(np.abs(coeffs))))):
            raise InvalidParameterError(f"Polynomial {p} has non-real coefficients")
        return cls(tuple(coeffs.real))


def parse_polynomial(text: str, real: bool = False) -> Polynomial:
    """Parse coefficients listed highest degree first: '2,-1' is 2s − 1."""
    tokens = [token for token in re.split(r'[,\s]+', text.strip()) if token]
    if not tokens:
        raise InvalidParameterError(f"Empty polynomial literal: {text!r}")
    poly = Polynomial.from_descending(parse_complex(token) for token in tokens)
    return RealPolynomial.coerce(poly) if real else poly
