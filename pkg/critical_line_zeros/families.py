"""Catalog and builder for the symmetrized families f(s) = h(s) ± h(2a−s)."""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Union
import cmath
import math

import numpy as np
from scipy import special

from . import specfun
from .characters import DirichletCharacter, root_number
from .contour import circle_winding
from .errors import (
    BoundaryTooCloseError,
    EnvelopeUnavailableError,
    InconsistentInventoryError,
    InvalidParameterError,
    NearZeroDenominatorError,
    PoleError,
    UnsupportedVariantError,
)
from .polynomial import Polynomial

LINE_TOL = 1e-9
REMOVABLE_HIT = 1e-7
REMOVABLE_RADIUS = 1e-3
SIGMA0_STEP = 0.25
SIGMA0_CAP = 40.0
INVENTORY_RADIUS = 1e-2
ENVELOPE_TAUS = np.linspace(0.0, 200.0, 81)


class Sign(Enum):
    PLUS = "plus"
    MINUS = "minus"

    @property
    def factor(self) -> int:
        return 1 if self is Sign.PLUS else -1

    def flipped(self) -> 'Sign':
        return Sign.MINUS if self is Sign.PLUS else Sign.PLUS


class LinePolicy(Enum):
    NONE = "none"
    FINITE = "finite"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class LinePoint:
    """A zero (order > 0) or pole (order < 0) of h at a + iτ; τ > 0 stands for the pair a ± iτ."""

    tau: float
    order: int


@dataclass(frozen=True, eq=False)
class MeromorphicSpec:
    """An evaluatable h(s) with its axis, symmetry flag and declared zero/pole inventory."""

    evaluate: Callable[[complex], complex]
    a: float
    real_on_real: bool = True
    declared_zeros_right: tuple[tuple[complex, int], ...] = ()
    declared_poles: tuple[tuple[complex, int], ...] = ()
    line_zero_policy: LinePolicy = LinePolicy.NONE
    line_points: tuple[LinePoint, ...] = ()
    zeros_right_known: bool = True
    label: str = "h"

    def __call__(self, s) -> complex:
        return complex(self.evaluate(complex(s)))

    @property
    def zeros_right(self) -> int | None:
        if not self.zeros_right_known:
            return None
        return sum(m for z, m in self.declared_zeros_right if z.real > self.a + LINE_TOL)

    @property
    def poles_right(self) -> int:
        return sum(m for p, m in self.declared_poles if p.real > self.a + LINE_TOL)


@dataclass(frozen=True)
class QuadraticForm:
    a: float
    b: float
    c: float

    def __post_init__(self):
        if not self.a > 0:
            raise InvalidParameterError(f"Quadratic form needs a > 0, got {self.a}")
        if not self.discriminant > 0:
            raise InvalidParameterError(f"Quadratic form needs Δ = 4ac − b² > 0, got {self.discriminant}")

    @property
    def discriminant(self) -> float:
        return 4 * self.a * self.c - self.b * self.b


# ---- variants

@dataclass(frozen=True)
class Zeta2:
    alpha: float
    beta: float = 1.0


@dataclass(frozen=True)
class ZetaTranslate:
    alpha: float
    completed: bool = True


@dataclass(frozen=True)
class EisensteinA0:
    y: float


@dataclass(frozen=True)
class HPoly:
    y: float
    p: Polynomial


@dataclass(frozen=True)
class WengTruncated:
    T: float = 1.0


@dataclass(frozen=True)
class EpsteinPartial:
    form: QuadraticForm
    n: int


@dataclass(frozen=True)
class GClass:
    lam: float
    entries: tuple[tuple[float, float, float], ...]


@dataclass(frozen=True)
class LTranslate:
    alpha: float
    chi: DirichletCharacter
    p: Polynomial = Polynomial((1.0,))


@dataclass(frozen=True)
class PerturbedPolynomial:
    p: Polynomial
    y: float


@dataclass(frozen=True, eq=False)
class Custom:
    h: MeromorphicSpec
    envelope: Callable[[float], float] | None = None
    sigma0: float | None = None
    strip: bool = False


Variant = Union[Zeta2, ZetaTranslate, EisensteinA0, HPoly, WengTruncated, EpsteinPartial, GClass,
                LTranslate, PerturbedPolynomial, Custom]

_DEFAULT_SIGN = {
    Zeta2: Sign.MINUS,
    ZetaTranslate: Sign.MINUS,
    EisensteinA0: Sign.PLUS,
    HPoly: Sign.PLUS,
    WengTruncated: Sign.MINUS,
    EpsteinPartial: Sign.PLUS,
    GClass: Sign.PLUS,
    LTranslate: Sign.PLUS,
    PerturbedPolynomial: Sign.MINUS,
    Custom: Sign.MINUS,
}


@dataclass(frozen=True, eq=False)
class FamilySpec:
    variant: Variant
    sign: Sign | None = None
    conjugated: bool | None = None

    @property
    def user_sign(self) -> Sign:
        return self.sign or _DEFAULT_SIGN[type(self.variant)]

    @property
    def is_conjugated(self) -> bool:
        if self.conjugated is not None:
            return self.conjugated
        return isinstance(self.variant, LTranslate)


@dataclass(frozen=True)
class Inventory:
    """Zero/pole bookkeeping of h and of f over the half-plane right of the axis."""

    a: float
    h_zeros_right: int | None
    h_poles_right: int
    f_poles: tuple[tuple[complex, int], ...]

    @property
    def f_poles_right(self) -> int:
        return sum(m for p, m in self.f_poles if p.real > self.a + LINE_TOL)


@dataclass(frozen=True, eq=False)
class SymmetricFamily:
    """A built family: working h, working sign and the factor turning the core into the displayed f."""

    spec: FamilySpec
    h: MeromorphicSpec
    sign: Sign
    conjugated: bool
    display: Callable[[complex], complex]
    envelope: Callable[[float], float] | None
    inventory: Inventory
    label: str
    strip: bool = False
    default_sigma0: float | None = None
    line_points: tuple[LinePoint, ...] = ()

    @property
    def a(self) -> float:
        return self.h.a

    @property
    def u_pm(self) -> Fraction:
        return Fraction(1, 2) if self.sign is Sign.PLUS else Fraction(1)

    @property
    def line_offset(self) -> Fraction:
        """φ/π is congruent to this offset mod 1 exactly at line zeros."""
        return Fraction(1, 2) if self.sign is Sign.PLUS else Fraction(0)

    def reflected(self, s: complex) -> complex:
        w = 2 * self.a - complex(s)
        if self.conjugated:
            return self.h(w.conjugate()).conjugate()
        return self.h(w)

    def core(self, s: complex) -> complex:
        """h(s) ± h(2a−s), or h(s) ± h̄(2a−s) in conjugate mode."""
        s = complex(s)
        return self.h(s) + self.sign.factor * self.reflected(s)

    def value(self, s: complex) -> complex:
        """The family as defined by its closed form (core times the display factor)."""
        s = complex(s)
        try:
            return complex(self.display(s)) * self.core(s)
        except (ZeroDivisionError, PoleError):
            ring = s + REMOVABLE_RADIUS * np.exp(2j * np.pi * np.arange(8) / 8)
            return complex(np.mean([complex(self.display(z)) * self.core(z) for z in ring]))

    f_evaluate = value


def _one(s: complex) -> complex:
    return 1.0


# ---- helpers

def _merge_roots(roots, tol: float = 1e-6) -> list[tuple[complex, int]]:
    merged: list[list] = []
    for r in sorted(np.asarray(roots, dtype=complex), key=lambda z: (z.real, z.imag)):
        for item in merged:
            if abs(item[0] - r) < tol:
                item[1] += 1
                break
        else:
            merged.append([complex(r), 1])
    return [(z, m) for z, m in merged]


def _polynomial_factor(roots, sigma: float, weight: Callable[[complex], float]) -> float:
    """Π (1 + weight(r)/(σ − ℜr)), infinite when σ does not clear every root."""
    total = 1.0
    for r in roots:
        if sigma <= r.real:
            return math.inf
        total *= 1 + weight(r) / (sigma - r.real)
    return total


def _zeta_real(x: float) -> float:
    return specfun.zeta(complex(x)).value.real


def _translate_bound(sigma: float, alpha: float, shift: float = 0.0) -> float:
    """Γ((σ−α+κ)/2)/Γ((σ+α+κ)/2) · ζ(σ−α)ζ(σ+α)/ζ(2σ+2α), infinite for σ ≤ 1+α."""
    if sigma <= 1 + alpha:
        return math.inf
    gamma_ratio = math.exp(special.gammaln((sigma - alpha + shift) / 2) - special.gammaln((sigma + alpha + shift) / 2))
    return gamma_ratio * _zeta_real(sigma - alpha) * _zeta_real(sigma + alpha) / _zeta_real(2 * sigma + 2 * alpha)


def _log_bessel_gamma_bound(sigma: float, A: float) -> float:
    """log of a bound for |2K_{s−½}(2A)/Γ(s)| on ℜs = σ > ½, uniform in ℑs.

    Rotating the integral for K by π/2 − arctan(σ/|τ|) cancels the e^{−|τ| arg s} decay of Γ(s),
    which Stirling's formula with |μ(s)| ≤ 1/(12σ) bounds from below.
    """
    nu = sigma - 0.5
    return (special.gammaln(nu) - nu * math.log(A * sigma) + sigma + 1 / (12 * sigma)
            - 0.5 * math.log(2 * math.pi))


def _check_line_roots(roots, a: float, what: str) -> None:
    for r in roots:
        if abs(r.real - a) < LINE_TOL:
            raise InvalidParameterError(f"{what} has a root {r:.6g} on the line ℜs = {a:g}")


def factor_out_line_points(h: MeromorphicSpec, points=None):
    """Remove finitely many zeros/poles of h on ℜs = a.

    Returns (h₁, D, flipped) with h = D·h₁; the family h ± h(2a−s) equals D·(h₁ ∓ h₁(2a−s))
    when the order at τ = 0 is odd, and D·(h₁ ± h₁(2a−s)) otherwise.
    """
    points = tuple(points if points is not None else h.line_points)
    a = h.a

    def divisor(s: complex) -> complex:
        d = 1.0 + 0j
        for point in points:
            if point.tau == 0:
                d *= (s - a) ** point.order
            else:
                d *= ((s - a) ** 2 + point.tau ** 2) ** point.order
        return d

    centers = [complex(a, p.tau) for p in points] + [complex(a, -p.tau) for p in points if p.tau != 0]

    def reduced(s: complex) -> complex:
        if any(abs(s - c) < REMOVABLE_HIT for c in centers):
            ring = s + REMOVABLE_RADIUS * np.exp(2j * np.pi * np.arange(8) / 8)
            return complex(np.mean([h(z) / divisor(z) for z in ring]))
        return h(s) / divisor(s)

    remaining = tuple(
        (p, m) for p, m in h.declared_poles
        if not any(abs(p - c) < REMOVABLE_HIT for c in centers)
    )
    flipped = sum(p.order for p in points if p.tau == 0) % 2 == 1
    reduced_spec = MeromorphicSpec(
        reduced, a, h.real_on_real, h.declared_zeros_right, remaining,
        LinePolicy.NONE, (), h.zeros_right_known, label=f"{h.label} (line points removed)",
    )
    return reduced_spec, divisor, flipped


def _winding_radius(center: complex, others) -> float:
    gaps = [abs(center - z) for z in others if abs(center - z) > 0]
    return min([INVENTORY_RADIUS] + [0.4 * g for g in gaps])


def verify_inventory(h: MeromorphicSpec, verbose=False, console=None) -> None:
    """Small-circle winding check of every declared zero (+m) and pole (−m) of h."""
    declared = [(z, m) for z, m in h.declared_zeros_right] + [(p, -m) for p, m in h.declared_poles]
    points = [z for z, _ in declared]
    for z, expected in declared:
        radius = _winding_radius(z, points)
        try:
            winding = circle_winding(h, z, radius)
        except BoundaryTooCloseError as e:
            raise InconsistentInventoryError(f"Cannot verify {h.label} at {z:.6g}: {e}")
        if verbose and console:
            console.print(f"[dim]  • {h.label} at {z:.6g}: winding {winding} (declared {expected})[/]")
        if winding != expected:
            raise InconsistentInventoryError(
                f"{h.label} at {z:.6g}: small-circle winding {winding}, declared {expected}"
            )


def _f_poles(h: MeromorphicSpec, core: Callable[[complex], complex], conjugated: bool) -> tuple:
    a = h.a
    candidates = []
    for p, _ in h.declared_poles:
        mirror = 2 * a - (p.conjugate() if conjugated else p)
        for c in (p, mirror):
            if not any(abs(c - q) < 1e-9 for q in candidates):
                candidates.append(c)
    others = candidates + [z for z, _ in h.declared_zeros_right]
    poles = []
    for c in candidates:
        winding = circle_winding(core, c, _winding_radius(c, others))
        if winding < 0:
            poles.append((c, -winding))
    return tuple(poles)


# ---- catalog builders; each returns (h, working sign, display, envelope, strip, default σ₀)

def _zeta2(v: Zeta2, sign: Sign):
    if not v.alpha > 0:
        raise InvalidParameterError(f"zeta2 needs alpha > 0, got {v.alpha}")
    if v.beta == 0:
        raise InvalidParameterError("zeta2 needs beta ≠ 0 so that h(0) ≠ 0")
    alpha, beta = v.alpha, v.beta
    h = MeromorphicSpec(
        lambda s: cmath.exp(alpha * s) * (s - beta), 0.0,
        declared_zeros_right=((complex(beta), 1),) if beta > 0 else (),
        label=f"exp({alpha:g}s)(s − {beta:g})",
    )

    def envelope(sigma: float) -> float:
        if sigma <= abs(beta):
            return math.inf
        return 2 * math.exp(-2 * alpha * sigma) * (sigma + abs(beta)) / (sigma - abs(beta))

    return h, sign, _one, envelope, False, None


def _zeta_translate(v: ZetaTranslate, sign: Sign):
    alpha = v.alpha
    if not alpha > 0:
        raise InvalidParameterError(f"zeta_translate needs alpha > 0, got {alpha}")
    known = alpha >= 0.5

    def envelope(sigma: float) -> float:
        return 2 * math.pi ** alpha * _translate_bound(sigma, alpha)

    if not v.completed:
        h = MeromorphicSpec(
            lambda s: specfun.xi(s + alpha).value, 0.5,
            zeros_right_known=known, label=f"ξ(s + {alpha:g})",
        )
        return h, sign, _one, envelope, False, None

    raw = MeromorphicSpec(
        lambda s: specfun.zeta_completed(s + alpha).value, 0.5,
        declared_poles=((complex(-alpha), 1), (complex(1 - alpha), 1)),
        zeros_right_known=known, label=f"ζ*(s + {alpha:g})",
    )
    if alpha == 0.5:
        h, divisor, flipped = factor_out_line_points(raw, (LinePoint(0.0, -1),))
        return h, sign.flipped() if flipped else sign, divisor, envelope, False, None
    return raw, sign, _one, envelope, False, None


def _hpoly(v: HPoly, sign: Sign):
    y, p = v.y, v.p
    if not y > 0:
        raise InvalidParameterError(f"h_poly needs y > 0, got {y}")
    if p.is_zero:
        raise InvalidParameterError("h_poly needs a nonzero polynomial")
    half_line = Polynomial((-0.5, 1.0))
    line_pole = abs(p(0.5)) > 1e-12 * max(1.0, max(abs(c) for c in p.coefficients))
    reduced_p = p * half_line if line_pole else p
    q_half, _ = reduced_p.divide_linear(0.5)
    q = q_half * 0.5
    q_roots = q.roots() if q.degree > 0 else np.zeros(0, dtype=complex)
    _check_line_roots(q_roots, 0.5, "q(s) = p̃(s)/(2s − 1)")

    pole_at_zero = abs(q(0.0)) > 1e-14
    r = q if pole_at_zero else q.divide_linear(0.0)[0]
    log_y = math.log(y)

    def evaluate(s: complex) -> complex:
        value = complex(r(s)) * specfun.xi(2 * s).value * cmath.exp(s * log_y)
        return value / s if pole_at_zero else value

    right_roots = [z for z in q_roots if z.real > 0.5 and not (not pole_at_zero and abs(z) < 1e-12)]
    h = MeromorphicSpec(
        evaluate, 0.5,
        declared_zeros_right=tuple(_merge_roots(right_roots)),
        declared_poles=((0j, 1),) if pole_at_zero else (),
        label=f"q(s)ξ(2s){y:g}^s/s" if pole_at_zero else f"r(s)ξ(2s){y:g}^s",
    )
    envelope_roots = list(reduced_p.roots())

    def envelope(sigma: float) -> float:
        if sigma <= 1:
            return math.inf
        poly = _polynomial_factor(envelope_roots, sigma, lambda z: abs(1 - 2 * z))
        if math.isinf(poly):
            return math.inf
        gamma_ratio = math.exp(special.gammaln(sigma - 0.5) - special.gammaln(sigma))
        zetas = _zeta_real(2 * sigma - 1) * _zeta_real(2 * sigma) / _zeta_real(4 * sigma)
        return 2 * y ** (1 - 2 * sigma) * math.sqrt(math.pi) * gamma_ratio * zetas * poly

    working = sign.flipped() if line_pole else sign
    display = (lambda s: 1.0 / (s - 0.5)) if line_pole else _one
    strip = y < 1
    return h, working, display, (None if strip else envelope), strip, (2.5 if strip else None)


def _weng(v: WengTruncated, sign: Sign):
    if not v.T >= 1:
        raise InvalidParameterError(f"weng_truncated needs T ≥ 1, got {v.T}")
    T = v.T
    h, working, _, envelope, strip, sigma0 = _hpoly(HPoly(T, Polynomial((0.0, -1.0, 2.0))), sign)

    def display(s: complex) -> complex:
        return 1.0 / (T * (2 * s - 1) * s * (s - 1))

    return h, working, display, envelope, strip, sigma0


def _g_class(lam: float, entries, sign: Sign, display_extra: Callable[[complex], complex] = _one):
    if not lam > 0:
        raise InvalidParameterError(f"g_class needs lambda > 0, got {lam}")
    for b, lam_k, A in entries:
        if not (lam_k > 0 and A > 0):
            raise InvalidParameterError(f"g_class entries need λ_k > 0 and A_k > 0, got {(b, lam_k, A)}")
    log_lam = math.log(lam)
    terms = [(b, math.log(lam_k), A) for b, lam_k, A in entries if b != 0]

    def evaluate(s: complex) -> complex:
        value = cmath.exp(s * log_lam) * specfun.xi(2 * s).value / (2 * s)
        nu = s - 0.5
        bessel = 0j
        for b, log_k, A in terms:
            bessel += b * cmath.exp(nu * log_k) * 2 * specfun.bessel_k(nu, A).value
        return value + nu * bessel

    h = MeromorphicSpec(
        evaluate, 0.5, declared_poles=((0j, 1),), zeros_right_known=False,
        label=f"(s − ½)w(s), λ = {lam:g}, {len(terms)} Bessel terms",
    )

    # each term below is non-increasing in σ only when these hold
    monotone = lam >= 1 and all(
        math.pi / (lam * math.exp(log_k) * A) <= 1 and math.pi * math.exp(log_k) / (lam * A) <= 1
        for _, log_k, A in terms
    )

    def envelope(sigma: float) -> float:
        # divide by λ^sΛ(2s), with |ζ(2s)| ≥ ζ(4σ)/ζ(2σ)
        if not monotone or sigma <= 1:
            return math.inf
        log_zeta_ratio = math.log(_zeta_real(2 * sigma) / _zeta_real(4 * sigma))
        log_scale = sigma * (math.log(math.pi) - log_lam) + log_zeta_ratio
        grow = shrink = 0.0
        for b, log_k, A in terms:
            base = math.log(abs(b)) + log_scale + _log_bessel_gamma_bound(sigma, A)
            grow += math.exp(base + (sigma - 0.5) * log_k)
            shrink += math.exp(base - (sigma - 0.5) * log_k)
        if grow >= 1:
            return math.inf
        main = math.exp((1 - 2 * sigma) * log_lam + 0.5 * math.log(math.pi) + special.gammaln(sigma - 0.5)
                        - special.gammaln(sigma) + log_zeta_ratio) * _zeta_real(2 * sigma - 1)
        return 2 * (main + shrink) / (1 - grow)

    def display(s: complex) -> complex:
        return complex(display_extra(s)) / (s - 0.5)

    strip = lam < 1
    return h, sign.flipped(), display, (None if strip else envelope), strip, (2.5 if strip else None)


def epstein_entries(form: QuadraticForm, n: int) -> tuple[float, tuple[tuple[float, float, float], ...]]:
    """λ and the Bessel entries (b, λ_k, A_k) of the truncated Epstein zeta Z_{Q,n} in G-class form."""
    if n < 0:
        raise InvalidParameterError(f"epstein_partial needs n ≥ 0, got {n}")
    lam = math.sqrt(form.discriminant) / (2 * form.a)
    entries = []
    for k in range(1, n + 1):
        coefficient = math.sqrt(lam) * math.cos(math.pi * k * form.b / form.a)
        for d in range(1, k + 1):
            if k % d:
                continue
            ratio = k / (d * d)
            entries.append((coefficient, min(ratio, 1 / ratio), math.pi * k * lam))
    return lam, tuple(entries)


def _epstein(v: EpsteinPartial, sign: Sign):
    lam, entries = epstein_entries(v.form, v.n)
    log_scale = math.log(v.form.a * lam)

    def prefactor(s: complex) -> complex:
        # Z_{Q,n}(s) = 2(aλ)^{−s} π^s / Γ(s) · (w(s) + w(1−s))
        try:
            return 2 * cmath.exp(-s * log_scale + s * math.log(math.pi) - specfun.log_gamma(s).value)
        except PoleError:
            return 0j

    return _g_class(lam, entries, sign, prefactor)


def _l_translate(v: LTranslate):
    alpha, chi, p = v.alpha, v.chi, v.p
    if not alpha > 0:
        raise InvalidParameterError(f"l_translate needs alpha > 0, got {alpha}")
    if p.is_zero:
        raise InvalidParameterError("l_translate needs a nonzero polynomial")
    epsilon = root_number(chi).epsilon
    theta = 0.5 * cmath.phase(epsilon)
    rotation = cmath.exp(-1j * theta)
    p_roots = p.roots() if p.degree > 0 else np.zeros(0, dtype=complex)
    _check_line_roots(p_roots, 0.5, "p(s)")

    h = MeromorphicSpec(
        lambda s: rotation * complex(p(s)) * specfun.xi_chi(s + alpha, chi).value, 0.5,
        real_on_real=False,
        declared_zeros_right=tuple(_merge_roots([z for z in p_roots if z.real > 0.5])),
        zeros_right_known=alpha >= 0.5,
        label=f"e^(−iθ)p(s)ξ(s + {alpha:g}, χ_{chi.label})",
    )

    def envelope(sigma: float) -> float:
        poly = _polynomial_factor(p_roots, sigma, lambda z: abs(1 - 2 * z.real))
        if math.isinf(poly):
            return math.inf
        return 2 * (math.pi / chi.modulus) ** alpha * _translate_bound(sigma, alpha, chi.kappa) * poly

    return h, (lambda s: 1.0 / rotation), envelope


def _perturbed_polynomial(v: PerturbedPolynomial, sign: Sign):
    p, y = v.p, v.y
    if not y > 0:
        raise InvalidParameterError(f"perturbed_polynomial needs y > 0, got {y}")
    if not p.is_real:
        raise InvalidParameterError("perturbed_polynomial needs a real polynomial")
    roots = p.roots() if p.degree > 0 else np.zeros(0, dtype=complex)
    _check_line_roots(roots, 0.0, "p(s)")
    log_y = math.log(y)
    h = MeromorphicSpec(
        lambda s: cmath.exp(s * log_y) * complex(p(s)), 0.0,
        declared_zeros_right=tuple(_merge_roots([z for z in roots if z.real > 0])),
        label=f"{y:g}^s·({p})",
    )

    def envelope(sigma: float) -> float:
        poly = _polynomial_factor(roots, sigma, lambda z: 2 * abs(z.real))
        return 2 * math.exp(-2 * sigma * log_y) * poly

    strip = y <= 1
    return h, sign, _one, (None if strip else envelope), strip, (2.0 if strip else None)


def _describe(variant: Variant) -> str:
    match variant:
        case Zeta2(alpha, beta):
            return f"zeta2(alpha={alpha:g}, beta={beta:g})"
        case ZetaTranslate(alpha, completed):
            return f"zeta_translate(alpha={alpha:g}, {'completed' if completed else 'xi'})"
        case EisensteinA0(y):
            return f"eisenstein_a0(y={y:g})"
        case HPoly(y, p):
            return f"h_poly(y={y:g}, p={p})"
        case WengTruncated(T):
            return f"weng_truncated(T={T:g})"
        case EpsteinPartial(form, n):
            return f"epstein_partial(Q=({form.a:g},{form.b:g},{form.c:g}), n={n})"
        case GClass(lam, entries):
            return f"g_class(lambda={lam:g}, {len(entries)} entries)"
        case LTranslate(alpha, chi, p):
            return f"l_translate(alpha={alpha:g}, chi={chi.label}, p={p})"
        case PerturbedPolynomial(p, y):
            return f"perturbed_polynomial(p={p}, y={y:g})"
        case Custom(h):
            return f"custom({h.label})"
    return type(variant).__name__


def build_family(spec: FamilySpec, verbose=False, console=None) -> SymmetricFamily:
    """Build the family described by ``spec`` and verify its zero/pole inventory."""
    sign = spec.user_sign
    conjugated = spec.is_conjugated
    variant = spec.variant
    if verbose and console:
        console.print(f"[dim]→ Building {_describe(variant)} with sign {sign.value}[/]")

    strip = False
    default_sigma0 = None
    line_points = ()
    match variant:
        case Zeta2():
            h, working, display, envelope, strip, default_sigma0 = _zeta2(variant, sign)
        case ZetaTranslate():
            h, working, display, envelope, strip, default_sigma0 = _zeta_translate(variant, sign)
        case EisensteinA0(y):
            h, working, display, envelope, strip, default_sigma0 = _hpoly(HPoly(y, Polynomial((1.0,))), sign)
        case HPoly():
            h, working, display, envelope, strip, default_sigma0 = _hpoly(variant, sign)
        case WengTruncated():
            h, working, display, envelope, strip, default_sigma0 = _weng(variant, sign)
        case EpsteinPartial():
            h, working, display, envelope, strip, default_sigma0 = _epstein(variant, sign)
        case GClass(lam, entries):
            h, working, display, envelope, strip, default_sigma0 = _g_class(lam, entries, sign)
        case LTranslate():
            if spec.conjugated is False:
                raise InvalidParameterError("l_translate families are always built in conjugate mode")
            h, display, envelope = _l_translate(variant)
            working = sign
            conjugated = True
        case PerturbedPolynomial():
            h, working, display, envelope, strip, default_sigma0 = _perturbed_polynomial(variant, sign)
        case Custom(h_custom, envelope, sigma0, strip):
            h, working, display = h_custom, sign, _one
            default_sigma0 = sigma0
            if h.line_zero_policy is LinePolicy.FINITE and h.line_points:
                line_points = h.line_points
                h, display, flipped = factor_out_line_points(h)
                working = sign.flipped() if flipped else sign
        case _:
            raise InvalidParameterError(f"Unknown family variant {variant!r}")

    if not conjugated and not h.real_on_real:
        raise InvalidParameterError(f"{h.label} is not real on the real axis; build it in conjugate mode")

    verify_inventory(h, verbose=verbose, console=console)

    def core(s: complex) -> complex:
        reflected = h(2 * h.a - s) if not conjugated else h((2 * h.a - s).conjugate()).conjugate()
        return h(s) + working.factor * reflected

    inventory = Inventory(h.a, h.zeros_right, h.poles_right, _f_poles(h, core, conjugated))
    label = f"{_describe(variant)} {sign.value}" + (" (conjugate)" if conjugated else "")
    if verbose and console:
        console.print(f"[dim]  • axis a: {h.a:g}[/]")
        console.print(f"[dim]  • working h: {h.label}, working sign {working.value}[/]")
        console.print(f"[dim]  • P_f right: {inventory.f_poles_right}, P_h right: {inventory.h_poles_right}, "
                      f"N_h right: {inventory.h_zeros_right if inventory.h_zeros_right is not None else 'counted'}[/]")
        if strip:
            console.print("[yellow]→ Warning: no envelope below ½ exists; counts use a strip[/]")
    return SymmetricFamily(spec, h, working, conjugated, display, envelope, inventory, label, strip, default_sigma0,
                          line_points)


# ---- ratio and envelope

def ratio_F(fam: SymmetricFamily, s: complex) -> complex:
    """F(s) = h(2a−s)/h(s), or h̄(2a−s)/h(s) in conjugate mode."""
    s = complex(s)
    hv = fam.h(s)
    reflected = fam.reflected(s)
    if hv == 0 or not cmath.isfinite(hv) or abs(hv) <= 1e-14 * abs(reflected):
        raise NearZeroDenominatorError(f"|h(s)| is at the noise floor at s = {s:.10g}", point=s)
    return reflected / hv


def stirling_envelope(fam: SymmetricFamily, sigma: float) -> float:
    """Upper bound for |F| on ℜs ≥ σ (safety factor 2 included)."""
    if fam.envelope is None:
        raise UnsupportedVariantError(f"{fam.label} has no asymptotic envelope")
    return fam.envelope(sigma)


def sampled_ratio_sup(fam: SymmetricFamily, sigma: float, taus=ENVELOPE_TAUS) -> float:
    """max |F(σ+iτ)| over the sampled τ; a cross-check for envelopes, never a bound."""
    worst = 0.0
    for tau in taus:
        try:
            worst = max(worst, abs(ratio_F(fam, complex(sigma, tau))))
        except NearZeroDenominatorError:
            return math.inf
    return worst


def select_sigma0(fam: SymmetricFamily) -> tuple[float, float]:
    """Smallest σ₀ on a 0.25-grid with envelope < ½, capped at 40.

    At the cap an envelope below 2 (|F| < 1) is still accepted.
    """
    if fam.envelope is None:
        raise EnvelopeUnavailableError(f"{fam.label} has no envelope; pass a strip σ₀")
    grid = np.arange(fam.a + SIGMA0_STEP, SIGMA0_CAP + 1e-9, SIGMA0_STEP)
    at_cap = fam.envelope(SIGMA0_CAP)
    if not at_cap < 0.5:
        if at_cap / 2 < 1:
            return SIGMA0_CAP, at_cap
        raise EnvelopeUnavailableError(f"Envelope of {fam.label} is {at_cap:.3g} at σ = {SIGMA0_CAP:g}")
    if fam.envelope(float(grid[0])) < 0.5:
        return float(grid[0]), fam.envelope(float(grid[0]))
    lo, hi = 0, len(grid) - 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if fam.envelope(float(grid[mid])) < 0.5:
            hi = mid
        else:
            lo = mid
    return float(grid[hi]), fam.envelope(float(grid[hi]))
