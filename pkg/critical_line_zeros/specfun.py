"""Complex special-function kernel: log Γ, ζ, ζ*, ξ, Dirichlet L and Bessel K."""
from dataclasses import dataclass
import cmath
import math

import numpy as np
from scipy import special

from .characters import root_number
from .errors import BudgetExceededError, InvalidParameterError, NonPrimitiveCharacterError, PoleError

EPS = float(np.finfo(float).eps)

# Euler–Maclaurin correction order m: terms up to B_{2m}, remainder in B_{2m+2}
_EM_ORDER = 4
_BERNOULLI = special.bernoulli(2 * _EM_ORDER + 2)
_LOG_PI = math.log(math.pi)


@dataclass(frozen=True)
class EvalPrecision:
    """Absolute tolerance and term budget shared by the series and quadratures."""

    target_abs_tol: float = 1e-13
    max_terms: int = 400_000

    def __post_init__(self):
        if not self.target_abs_tol > 0:
            raise InvalidParameterError(f"target_abs_tol must be positive, got {self.target_abs_tol}")
        if self.max_terms < 1:
            raise InvalidParameterError(f"max_terms must be at least 1, got {self.max_terms}")

    def tighter(self, factor: float = 10.0) -> 'EvalPrecision':
        return EvalPrecision(self.target_abs_tol / factor, self.max_terms)


DEFAULT_PRECISION = EvalPrecision()


def set_default_precision(prec: EvalPrecision) -> None:
    """Precision used when a kernel is called without ``prec`` (the CLI sets it from CLZ_MAX_TERMS)."""
    global DEFAULT_PRECISION
    DEFAULT_PRECISION = prec


@dataclass(frozen=True)
class SpecialValue:
    """A function value with an upper bound on its absolute error."""

    value: complex
    est_error: float

    def __complex__(self) -> complex:
        return complex(self.value)


def _is_nonpositive_integer(s: complex) -> bool:
    return s.imag == 0 and s.real <= 0 and s.real == math.floor(s.real)


# ---- log Γ

def log_gamma(s: complex) -> SpecialValue:
    """Principal branch of log Γ(s), analytic off the negative real axis."""
    s = complex(s)
    if _is_nonpositive_integer(s):
        raise PoleError(f"log Γ has a pole at s = {s.real:g}")
    # scipy's loggamma shifts by recurrence, reflects for ℜs < ½ and applies Stirling
    value = complex(special.loggamma(s))
    return SpecialValue(value, 4 * EPS * (1 + abs(value)))


def _lgamma(s: complex) -> complex:
    return log_gamma(s).value


def _log_sin(z: complex) -> complex:
    """log sin z that stays finite when |ℑz| is large."""
    if abs(z.imag) < 20:
        return cmath.log(cmath.sin(z))
    if z.imag > 0:
        return -1j * z + cmath.log(0.5j) + complex(np.log1p(-cmath.exp(2j * z)))
    return 1j * z + cmath.log(-0.5j) + complex(np.log1p(-cmath.exp(-2j * z)))


# ---- Euler–Maclaurin sums

def _hurwitz_parts(s: complex, q: float, prec: EvalPrecision) -> tuple[complex, float, float]:
    """Split Σ_{k≥0} (k+q)^{−s} into a regular part and the pole term x^{1−s}/(s−1).

    Returns (regular, x, error bound) with x = n + q the Euler–Maclaurin cut point.
    """
    sigma = s.real
    decay = sigma + 2 * _EM_ORDER + 1
    if decay <= 0.5:
        raise InvalidParameterError(f"Euler–Maclaurin summation needs ℜs > {0.5 - 2 * _EM_ORDER - 1}, got {s}")

    rising = 1.0
    for k in range(2 * _EM_ORDER + 2):
        rising *= abs(s + k)
    coeff = rising * abs(_BERNOULLI[2 * _EM_ORDER + 2]) / (math.factorial(2 * _EM_ORDER + 2) * decay)
    x_needed = (coeff / prec.target_abs_tol) ** (1.0 / decay)
    n = max(8, int(math.ceil(x_needed - q)), int(abs(s.imag) / (2 * math.pi)) + 1)
    if n > prec.max_terms:
        raise BudgetExceededError(f"Euler–Maclaurin needs {n} terms at s = {s} (budget {prec.max_terms})")

    logs = np.log(np.arange(n, dtype=float) + q)
    terms = np.exp(-s * logs)
    partial = complex(np.sum(terms))
    rounding = 2 * EPS * float(np.sum(np.exp(-sigma * logs))) * math.sqrt(n)

    x = n + q
    log_x = math.log(x)
    x_pow = cmath.exp(-s * log_x)
    tail = 0.5 * x_pow
    rising_c = s
    power = x_pow / x
    for j in range(1, _EM_ORDER + 1):
        tail += _BERNOULLI[2 * j] / math.factorial(2 * j) * rising_c * power
        rising_c *= (s + 2 * j - 1) * (s + 2 * j)
        power /= x * x
    bound = coeff * x ** (-decay)
    return partial + tail, x, bound + rounding


def _zeta_direct(s: complex, prec: EvalPrecision) -> SpecialValue:
    regular, x, err = _hurwitz_parts(s, 1.0, prec)
    pole = cmath.exp((1 - s) * math.log(x)) / (s - 1)
    return SpecialValue(regular + pole, err + EPS * abs(pole))


def zeta(s: complex, prec: EvalPrecision | None = None) -> SpecialValue:
    """Riemann ζ(s) by Euler–Maclaurin for ℜs > 0, the functional equation further left."""
    prec = prec or DEFAULT_PRECISION
    s = complex(s)
    if s == 1:
        raise PoleError("ζ has a pole at s = 1")
    if s == 0:
        return SpecialValue(-0.5, EPS)
    if s.real > 0 or abs(s) < 0.5:
        return _zeta_direct(s, prec)
    if _is_nonpositive_integer(s) and int(s.real) % 2 == 0:
        return SpecialValue(0j, EPS)

    # ζ(s) = 2^s π^{s−1} sin(πs/2) Γ(1−s) ζ(1−s)
    mirror = _zeta_direct(1 - s, prec)
    if abs(s.imag) < 30:
        factor = (2 ** s) * (math.pi ** (s - 1)) * cmath.sin(math.pi * s / 2) * cmath.exp(_lgamma(1 - s))
        value = factor * mirror.value
    else:
        log_factor = s * math.log(2) + (s - 1) * _LOG_PI + _log_sin(math.pi * s / 2) + _lgamma(1 - s)
        factor = cmath.exp(log_factor)
        value = cmath.exp(log_factor + cmath.log(mirror.value))
    rel = mirror.est_error / max(abs(mirror.value), EPS) + 16 * EPS * (1 + abs(s))
    return SpecialValue(value, abs(factor) * mirror.est_error + abs(value) * rel)


def zeta_completed(s: complex, prec: EvalPrecision | None = None) -> SpecialValue:
    """ζ*(s) = π^{−s/2} Γ(s/2) ζ(s), evaluated on the half-plane ℜs ≥ ½ and reflected."""
    prec = prec or DEFAULT_PRECISION
    s = complex(s)
    if s == 0 or s == 1:
        raise PoleError(f"ζ* has a pole at s = {s.real:g}")
    if s.real < 0.5:
        return zeta_completed(1 - s, prec)
    z = zeta(s, prec)
    prefactor = cmath.exp(-0.5 * s * _LOG_PI + _lgamma(s / 2))
    value = prefactor * z.value
    return SpecialValue(value, abs(prefactor) * z.est_error + abs(value) * 8 * EPS * (1 + abs(s)))


def xi(s: complex, prec: EvalPrecision | None = None) -> SpecialValue:
    """Riemann ξ(s) = ½ s(s−1) ζ*(s), entire with ξ(0) = ξ(1) = ½."""
    prec = prec or DEFAULT_PRECISION
    s = complex(s)
    if s == 0 or s == 1:
        return SpecialValue(0.5 + 0j, EPS)
    z = zeta_completed(s, prec)
    factor = 0.5 * s * (s - 1)
    return SpecialValue(factor * z.value, abs(factor) * z.est_error)


# ---- Dirichlet L

def dirichlet_l(s: complex, chi, prec: EvalPrecision | None = None) -> SpecialValue:
    """L(s, χ) as N^{−s} Σ_a χ(a) ζ(s, a/N), with the functional equation for ℜs < ½."""
    prec = prec or DEFAULT_PRECISION
    s = complex(s)
    modulus = chi.modulus
    if modulus == 1:
        return zeta(s, prec)
    if chi.is_principal and s == 1:
        raise PoleError(f"L(s, {chi.label}) has a pole at s = 1")

    if chi.is_primitive and s.real < 0.5:
        kappa = chi.kappa
        try:
            log_ratio = _lgamma((1 - s + kappa) / 2) - _lgamma((s + kappa) / 2)
        except PoleError:
            # Γ((s+κ)/2) has a pole: trivial zero of L
            return SpecialValue(0j, EPS)
        epsilon = root_number(chi).epsilon
        mirror = dirichlet_l(1 - s, chi.conjugate(), prec)
        factor = epsilon * cmath.exp((0.5 - s) * math.log(modulus / math.pi) + log_ratio)
        value = factor * mirror.value
        return SpecialValue(value, abs(factor) * mirror.est_error + abs(value) * 16 * EPS * (1 + abs(s)))

    regular = 0j
    pole = 0j
    err = 0.0
    for a in range(1, modulus + 1):
        c = chi(a)
        if c == 0:
            continue
        part, x, bound = _hurwitz_parts(s, a / modulus, prec)
        regular += c * part
        err += bound
        if chi.is_principal:
            pole += cmath.exp((1 - s) * math.log(x))
        elif s == 1:
            pole -= c * math.log(x)
        else:
            # Σ χ(a) = 0 lets the pole term be written with expm1
            pole += c * complex(np.expm1((1 - s) * math.log(x))) / (s - 1)
    if chi.is_principal:
        pole /= (s - 1)
    scale = cmath.exp(-s * math.log(modulus))
    value = scale * (regular + pole)
    return SpecialValue(value, abs(scale) * (err + EPS * abs(pole)))


def xi_chi(s: complex, chi, prec: EvalPrecision | None = None) -> SpecialValue:
    """ξ(s, χ) = (N/π)^{s/2} Γ((s+κ)/2) L(s, χ) for primitive χ of conductor N > 1."""
    prec = prec or DEFAULT_PRECISION
    if chi.modulus == 1 or not chi.is_primitive:
        raise NonPrimitiveCharacterError(f"ξ(s, χ) needs a primitive character of conductor > 1, got {chi.label}")
    s = complex(s)
    if s.real < 0.5:
        mirror = xi_chi(1 - s, chi.conjugate(), prec)
        epsilon = root_number(chi).epsilon
        return SpecialValue(epsilon * mirror.value, mirror.est_error)
    lval = dirichlet_l(s, chi, prec)
    prefactor = cmath.exp(0.5 * s * math.log(chi.modulus / math.pi) + _lgamma((s + chi.kappa) / 2))
    value = prefactor * lval.value
    return SpecialValue(value, abs(prefactor) * lval.est_error + abs(value) * 8 * EPS * (1 + abs(s)))


# ---- Bessel K

def _bessel_series(nu: complex, A: float) -> SpecialValue:
    """K_ν(2A) = ½[Γ(ν)A^{−ν} Σ A^{2n}/(n!(1−ν)_n) + Γ(−ν)A^{ν} Σ A^{2n}/(n!(1+ν)_n)]."""
    a2 = A * A
    sums = []
    for shift in (-nu, nu):
        term = 1 + 0j
        total = 1 + 0j
        n = 0
        while True:
            n += 1
            term *= a2 / (n * (1 + shift + n - 1))
            total += term
            if abs(term) < EPS * abs(total) and n > 2:
                break
            if n > 500:
                raise BudgetExceededError(f"Bessel series did not converge for ν = {nu}, A = {A}")
        sums.append(total)
    first = cmath.exp(_lgamma(nu) - nu * math.log(A)) * sums[0]
    second = cmath.exp(_lgamma(-nu) + nu * math.log(A)) * sums[1]
    value = 0.5 * (first + second)
    return SpecialValue(value, 64 * EPS * (abs(first) + abs(second)))


def _bessel_quadrature(nu: complex, A: float, prec: EvalPrecision) -> SpecialValue:
    """Trapezoidal rule for ½∫ exp(−2A cosh z + νz) dz along the shifted line z = t + iθ."""
    x = 2 * A
    tau = nu.imag
    delta = min(max(8.0 / abs(tau), 0.05), math.pi / 2) if tau != 0 else math.pi / 2
    theta = math.copysign(math.pi / 2 - delta, tau) if tau != 0 else 0.0
    decay = x * math.cos(theta)
    growth = abs(nu.real)

    # |integrand| = exp(−decay·cosh t + σt − τθ); cut 40 e-folds below its peak
    t_peak = math.asinh(growth / decay) if growth > 0 else 0.0
    floor = decay * math.cosh(t_peak) - growth * t_peak
    t_cut = t_peak + 0.25
    while decay * math.cosh(t_cut) - growth * t_cut - floor < 40 + abs(tau) * 1e-3:
        t_cut += 0.25

    def integrand(t: np.ndarray) -> np.ndarray:
        z = t + 1j * theta
        return np.exp(-x * np.cosh(z) + nu * z)

    step = min(0.25, math.pi / (4 * (abs(tau) + x * abs(math.sin(theta)) * math.cosh(t_cut) + 1)))
    previous = None
    while True:
        points = int(math.ceil(2 * t_cut / step)) + 1
        if points > prec.max_terms:
            raise BudgetExceededError(f"Bessel quadrature needs {points} nodes for ν = {nu}, A = {A}")
        t = np.linspace(-t_cut, t_cut, points)
        values = integrand(t)
        h = t[1] - t[0]
        current = 0.5 * h * complex(np.sum(values) - 0.5 * (values[0] + values[-1]))
        rounding = 8 * EPS * 0.5 * h * float(np.sum(np.abs(values)))
        if previous is not None:
            diff = abs(current - previous)
            if diff <= prec.target_abs_tol * abs(current) + rounding:
                return SpecialValue(current, diff + rounding)
        previous = current
        step /= 2


def bessel_k(nu: complex, A: float, prec: EvalPrecision | None = None) -> SpecialValue:
    """K_ν(2A), normalized so that 2K_ν(2A) = ∫ exp(−2A cosh t + νt) dt."""
    prec = prec or DEFAULT_PRECISION
    if not A > 0:
        raise InvalidParameterError(f"bessel_k needs A > 0, got {A}")
    nu = complex(nu)
    if nu.real < 0:
        nu = -nu
    near_integer = abs(nu - round(nu.real)) <= 0.05
    if A <= 2 and not near_integer:
        return _bessel_series(nu, A)
    return _bessel_quadrature(nu, A, prec)
