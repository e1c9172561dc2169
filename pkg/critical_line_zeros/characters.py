"""Dirichlet characters mod N: enumeration, primitivity, parity and root numbers."""
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
import cmath
import math
import re

import numpy as np
from sympy import divisors, factorint, primitive_root, totient

from .errors import InvalidParameterError, ModulusOutOfRangeError, NonPrimitiveCharacterError

MAX_MODULUS = 10**6

_LABEL = re.compile(r'^\s*(\d+)\.(\d+)\s*$')


@dataclass(frozen=True)
class DirichletCharacter:
    """A character stored as exact angle numerators: χ(n) = exp(2πi·t(n)/order), t = −1 off the units."""

    modulus: int
    index: int
    order: int
    numerators: tuple[int, ...]
    conductor: int

    def __call__(self, n: int) -> complex:
        t = self.numerators[n % self.modulus]
        if t < 0:
            return 0j
        if t == 0:
            return 1 + 0j
        return cmath.exp(2j * math.pi * t / self.order)

    @property
    def values(self) -> tuple[complex, ...]:
        return tuple(self(n) for n in range(self.modulus))

    @property
    def label(self) -> str:
        return f"{self.modulus}.{self.index}"

    @property
    def is_principal(self) -> bool:
        return all(t <= 0 for t in self.numerators)

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    @property
    def kappa(self) -> int:
        """0 for even characters, 1 for odd ones."""
        return 0 if self.numerators[(self.modulus - 1) % self.modulus] == 0 else 1

    def conjugate(self) -> 'DirichletCharacter':
        target = tuple(t if t <= 0 else self.order - t for t in self.numerators)
        for chi in enumerate_characters(self.modulus):
            if chi.numerators == target:
                return chi
        raise InvalidParameterError(f"No conjugate found for {self.label}")


@dataclass(frozen=True)
class RootNumber:
    gauss_sum: complex
    epsilon: complex


# ---- unit group structure

def _generators(modulus: int) -> list[tuple[int, int, dict[int, int]]]:
    """Cyclic factors of (ℤ/Nℤ)^× as (prime-power modulus, order, discrete-log table)."""
    factors = []
    for p, e in sorted(factorint(modulus).items()):
        m = p**e
        if p == 2:
            if e == 1:
                continue
            if e == 2:
                factors.append((m, 2, {1: 0, 3: 1}))
                continue
            sign_table = {n: (0 if n % 4 == 1 else 1) for n in range(1, m, 2)}
            factors.append((m, 2, sign_table))
            five = {}
            value = 1
            for k in range(m // 4):
                five[value] = k
                five[m - value] = k
                value = value * 5 % m
            factors.append((m, m // 4, five))
            continue
        g = int(primitive_root(p))
        if e > 1 and pow(g, p - 1, p * p) == 1:
            g += p
        order = m - m // p
        table = {}
        value = 1
        for k in range(order):
            table[value] = k
            value = value * g % m
        factors.append((m, order, table))
    return factors


def _check_modulus(modulus: int) -> None:
    if not 1 <= modulus <= MAX_MODULUS:
        raise ModulusOutOfRangeError(f"Modulus must satisfy 1 ≤ N ≤ {MAX_MODULUS}, got {modulus}")


def _conductor(modulus: int, numerators: tuple[int, ...]) -> int:
    for d in divisors(modulus):
        if all(numerators[n] == 0 for n in range(1, modulus, d) if numerators[n] >= 0):
            return int(d)
    return modulus


@lru_cache(maxsize=64)
def enumerate_characters(modulus: int) -> tuple[DirichletCharacter, ...]:
    """All φ(N) characters mod N, ordered lexicographically by their angle tables (N.1 is principal)."""
    _check_modulus(modulus)
    factors = _generators(modulus)
    orders = [order for _, order, _ in factors]
    exponent = math.lcm(*orders) if orders else 1

    units = [n for n in range(modulus) if math.gcd(n, modulus) == 1]
    logs = {n: [table[n % m] for m, _, table in factors] for n in units}

    tables = []
    for ks in product(*(range(order) for order in orders)):
        numerators = [-1] * modulus
        for n in units:
            numerators[n] = sum(k * log * (exponent // order) for k, log, order in zip(ks, logs[n], orders)) % exponent
        tables.append(tuple(numerators))
    tables.sort()

    characters = tuple(
        DirichletCharacter(modulus, j, exponent, table, _conductor(modulus, table))
        for j, table in enumerate(tables, start=1)
    )
    if len(characters) != int(totient(modulus)):
        raise InvalidParameterError(f"Character enumeration mod {modulus} is incomplete")
    return characters


def select_character(label: str) -> DirichletCharacter:
    """Resolve a selector 'N.j' (1-based j) to a character."""
    match = _LABEL.match(label)
    if not match:
        raise InvalidParameterError(f"Character selector must look like 'N.j', got {label!r}")
    modulus, index = int(match.group(1)), int(match.group(2))
    characters = enumerate_characters(modulus)
    if not 1 <= index <= len(characters):
        raise InvalidParameterError(f"There are {len(characters)} characters mod {modulus}, got index {index}")
    return characters[index - 1]


def root_number(chi: DirichletCharacter) -> RootNumber:
    """Gauss sum τ(χ) and ε(χ) = i^{−κ} τ(χ)/√N for a primitive χ with N > 1."""
    if chi.modulus == 1 or not chi.is_primitive:
        raise NonPrimitiveCharacterError(f"Root number needs a primitive character of conductor > 1, got {chi.label}")
    n = np.arange(chi.modulus)
    gauss = complex(np.sum(np.asarray(chi.values) * np.exp(2j * np.pi * n / chi.modulus)))
    epsilon = (-1j) ** chi.kappa * gauss / math.sqrt(chi.modulus)
    return RootNumber(gauss, epsilon)
