"""Argument-principle counts N(T), N₀(T), N₀′(T) and the explicit bound on N − N₀′."""
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable
import cmath
import math
import warnings

import numpy as np
from scipy import integrate

from . import specfun
from .contour import MIN_STEP, rectangle_winding
from .errors import (
    BoundaryTooCloseError,
    BudgetExceededError,
    CriticalLineError,
    EnvelopeUnavailableError,
    IncompleteInventoryError,
    InvalidParameterError,
    LineZeroEncounteredError,
    NearZeroDenominatorError,
    PerturbationFailedError,
    PoleError,
)
from .families import Custom, LTranslate, SymmetricFamily, ZetaTranslate, ratio_F, select_sigma0
from .phase import count_line_zeros, integer_point_report, trace_family
from .zerofind import ZeroRecord, line_zeros, multiplicity, real_zeros, split_at_poles

HEIGHT_OFFSETS = (0.0, 1e-3, -1e-3, 2e-3, -2e-3)
BOTTOM_OFFSET = 1e-6
N_H_BOTTOM = 1e-3
SAFE_CANDIDATES = 16
SAFE_SIGMAS = np.linspace(-1.0, 2.0, 64)
TOP_SIGMAS = 32
STRIP_HALF_WIDTH = 2.0
DENSITY_SLACK = 4
QUAD_LIMIT = 200


class CountMode(Enum):
    REAL_ONESIDED = "real_onesided"
    CONJUGATE_TWOSIDED = "conjugate_twosided"


@dataclass(frozen=True)
class SafeHeight:
    """An ordinate T in (n, n+1) where the sampled |g(σ+iT)| exceeds T^{−A}; g is ζ on −1 ≤ σ ≤ 2 by default."""

    T: float
    A: float
    min_abs: float


@dataclass(frozen=True)
class BoundTerms:
    """The inventory entering B_a, kept apart so reports can show every term."""

    u_pm: Fraction
    n_f_right: int
    n_f_a: int
    P_f_right: int
    N_h_right: int
    P_h_right: int
    conjugated: bool = False
    real_zeros: tuple[ZeroRecord, ...] = ()

    @property
    def value(self) -> Fraction:
        if self.conjugated:
            return Fraction(1 + 2 * self.P_f_right + 2 * self.N_h_right - 2 * self.P_h_right)
        return (self.u_pm - self.n_f_right - Fraction(self.n_f_a, 2)
                + self.P_f_right + self.N_h_right - self.P_h_right)


@dataclass(frozen=True)
class CountReport:
    """Counts of one family up to height T with the contour metadata that produced them."""

    family: str
    T: float
    N: int
    N0: int
    N0_prime: int
    B_a: Fraction | None
    parity_ok: bool
    d_estimate: int
    mode: CountMode
    strip_sigma0: float | None = None
    k: int = 0
    d_lower: int = 0
    d_stable: bool = True
    sigma0: float = math.nan
    envelope: float | None = None
    height: float = math.nan
    bottom_offset: float = BOTTOM_OFFSET
    perturbations: int = 0
    terms: BoundTerms | None = None
    line_zeros: tuple[ZeroRecord, ...] = field(default=(), repr=False)

    @property
    def L(self) -> Fraction:
        return Fraction(self.N - self.N0, 2)

    @property
    def real_zeros(self) -> tuple[ZeroRecord, ...]:
        return self.terms.real_zeros if self.terms else ()

    @property
    def bound_ok(self) -> bool | None:
        if self.B_a is None:
            return None
        return self.N - self.N0_prime <= self.B_a

    @property
    def reduced_bound(self) -> Fraction | None:
        if self.B_a is None:
            return None
        return self.B_a - self.d_lower

    @property
    def all_on_line(self) -> bool:
        return self.N == self.N0 == self.N0_prime

    @property
    def violations(self) -> list[str]:
        problems = []
        if not 0 <= self.N0_prime <= self.N0 <= self.N:
            problems.append(f"0 ≤ N₀′ ≤ N₀ ≤ N fails: N₀′ = {self.N0_prime}, N₀ = {self.N0}, N = {self.N}")
        if not self.parity_ok:
            problems.append(f"N − N₀ = {self.N - self.N0} is odd")
        if self.bound_ok is False:
            problems.append(f"N − N₀′ = {self.N - self.N0_prime} exceeds B_a = {self.B_a}")
        return problems


@dataclass(frozen=True)
class DensityReport:
    count_gap: int
    budget: int
    slack: int
    N: int
    N0_prime: int

    @property
    def within_budget(self) -> bool:
        return self.count_gap <= self.budget + self.slack


# ---- rectangles

def rectangle_count(g: Callable[[complex], complex], rect: tuple[float, float, float, float],
                    tol: float = 1e-12) -> int:
    """Zeros minus poles of g inside rect; raises BoundaryTooCloseError when the edge is too close."""
    return rectangle_winding(g, rect, min_step=max(MIN_STEP, 10 * tol))


def _poles_inside(poles, box) -> int:
    s_lo, s_hi, t_lo, t_hi = box
    return sum(m for p, m in poles if s_lo < p.real < s_hi and t_lo < p.imag < t_hi)


def _line_points_below(fam: SymmetricFamily, height: float) -> list:
    return [p for p in fam.line_points if p.order > 0 and 0 < p.tau < height]


# ---- bound terms

def _real_zero_inventory(fam: SymmetricFamily, sigma0: float) -> tuple[ZeroRecord, ...]:
    records: list[ZeroRecord] = []
    for lo, hi in split_at_poles(fam, fam.a, sigma0):
        records += real_zeros(fam, lo, hi, partners=False)
    return tuple(records)


def _order_at_center(fam: SymmetricFamily) -> int:
    center = complex(fam.a)
    try:
        value = fam.core(center)
        scale = abs(fam.h(center))
    except (PoleError, ZeroDivisionError):
        return 0
    if abs(value) > 1e-12 * (scale + 1e-300):
        return 0
    return multiplicity(fam, center, of=fam.core)


def _real_sign_changes(h, lo: float, hi: float) -> int:
    cuts = sorted(p.real for p, _ in h.declared_poles if abs(p.imag) < 1e-12 and lo < p.real < hi)
    edges = [lo] + cuts + [hi]
    changes = 0
    for left, right in zip(edges[:-1], edges[1:]):
        grid = np.arange(left + 1e-6, right - 1e-6, 0.01)
        if grid.size < 2:
            continue
        signs = np.sign([h(complex(x)).real for x in grid])
        changes += int(np.count_nonzero(signs[1:] * signs[:-1] < 0))
    return changes


def count_h_zeros_right(fam: SymmetricFamily, sigma0: float, height: float, tol: float = 1e-12,
                        upper_only: bool = False) -> int:
    """Zeros of h with a < σ < σ₀ and |τ| < height, by rectangle counting.

    In the real mode the upper box is doubled and the real zeros are added from a sign scan;
    ``upper_only`` keeps just 0 < τ < height.
    """
    h = fam.h
    left = fam.a + BOTTOM_OFFSET
    if fam.conjugated:
        box = (left, sigma0, -height, height)
        return rectangle_count(h, box, tol) + _poles_inside(h.declared_poles, box)
    box = (left, sigma0, N_H_BOTTOM, height)
    upper = rectangle_count(h, box, tol) + _poles_inside(h.declared_poles, box)
    if upper_only:
        return upper
    return 2 * upper + _real_sign_changes(h, left, sigma0)


def bound_terms(fam: SymmetricFamily, sigma0: float | None = None, height: float = 50.0,
                tol: float = 1e-12) -> BoundTerms:
    """Collect n_{f,σ>a}, n_{f,a}, P_{f,σ>a}, N_{h,σ>a} and P_{h,σ>a} for the working family."""
    if fam.strip:
        raise IncompleteInventoryError(f"{fam.label} is counted in a strip; B_a needs zeros of h right of σ₀")
    if sigma0 is None:
        sigma0, _, strip = _choose_sigma0(fam, None, None)
        if strip:
            raise IncompleteInventoryError(f"{fam.label} has no envelope below 2; B_a needs a right-side σ₀")
    N_h = fam.inventory.h_zeros_right
    if N_h is None:
        try:
            N_h = count_h_zeros_right(fam, sigma0, height, tol)
        except BoundaryTooCloseError as e:
            raise IncompleteInventoryError(f"Could not count the zeros of h right of the line: {e}")
    if fam.conjugated:
        return BoundTerms(fam.u_pm, 0, 0, fam.inventory.f_poles_right, N_h, fam.inventory.h_poles_right,
                          conjugated=True)
    zeros = _real_zero_inventory(fam, sigma0)
    n_f_right = 0
    for record in zeros:
        others = [r.location for r in zeros if r is not record]
        try:
            n_f_right += multiplicity(fam, record.location, others, of=fam.core)
        except CriticalLineError:
            n_f_right += record.multiplicity
    return BoundTerms(fam.u_pm, n_f_right, _order_at_center(fam), fam.inventory.f_poles_right, N_h,
                      fam.inventory.h_poles_right, real_zeros=zeros)


def bound_Ba(fam: SymmetricFamily, sigma0: float | None = None, height: float = 50.0) -> Fraction:
    """B_a = u_± − n_{f,σ>a} − n_{f,a}/2 + P_{f,σ>a} + N_{h,σ>a} − P_{h,σ>a}.

    In conjugate mode the two-sided form 1 + 2P_{f,σ>a} + 2N_{h,σ>a} − 2P_{h,σ>a} is returned.

    Args:
        fam: Built family (working h and working sign).
        sigma0: Right edge of the real-axis scan; chosen from the envelope when omitted.
        height: Box height used when the zeros of h right of the line must be counted.

    Returns:
        Fraction: The bound on N(T) − N₀′(T).
    """
    return bound_terms(fam, sigma0, height).value


# ---- N(T)

def _strip_sigma0(fam: SymmetricFamily) -> float:
    return fam.default_sigma0 if fam.default_sigma0 is not None else fam.a + STRIP_HALF_WIDTH


def _choose_sigma0(fam: SymmetricFamily, sigma0: float | None, strip_sigma0: float | None,
                   verbose=False, console=None):
    """(σ₀, envelope value, strip flag); the strip is used when no envelope drops below 2."""
    if strip_sigma0 is not None:
        if not strip_sigma0 > fam.a:
            raise InvalidParameterError(f"Strip σ₀ must exceed a = {fam.a:g}, got {strip_sigma0}")
        return strip_sigma0, None, True
    if fam.strip:
        return fam.default_sigma0, None, True
    if sigma0 is not None:
        return sigma0, (fam.envelope(sigma0) if fam.envelope else None), False
    variant = fam.spec.variant
    if isinstance(variant, Custom) and variant.sigma0 is not None:
        return variant.sigma0, None, False
    try:
        chosen, envelope = select_sigma0(fam)
    except EnvelopeUnavailableError as e:
        if verbose and console:
            console.print(f"[yellow]→ Warning: {e}; counting in the strip σ₀ = {_strip_sigma0(fam):g}[/]")
        return _strip_sigma0(fam), None, True
    return chosen, envelope, False


def _safe_top(fam: SymmetricFamily, T: float, sigma0: float) -> float:
    if T < 1:
        return T
    sigmas = np.linspace(2 * fam.a - sigma0, sigma0, TOP_SIGMAS)
    return safe_height(math.ceil(T), fam.core, sigmas).T


def _contour(fam: SymmetricFamily, T: float, sigma0: float, strip: bool, tol: float, verbose, console):
    a = fam.a
    top = _safe_top(fam, T, sigma0)
    for attempt, offset in enumerate(HEIGHT_OFFSETS):
        height = top + offset
        bottom = BOTTOM_OFFSET * 10 ** attempt
        right = sigma0 + (offset if strip else 0.0)
        box = (2 * a - right, right, -height, height) if fam.conjugated else (2 * a - right, right, bottom, height)
        try:
            winding = rectangle_count(fam.core, box, tol)
            trace = trace_family(fam, height)
        except (BoundaryTooCloseError, LineZeroEncounteredError) as e:
            if verbose and console:
                console.print(f"[yellow]→ Warning: contour at height {height:g} rejected: {e}[/]")
            continue
        return winding, trace, box, height, attempt
    raise PerturbationFailedError(f"No usable contour for {fam.label} near T = {T:g} after "
                                  f"{len(HEIGHT_OFFSETS)} attempts")


def count_N(fam: SymmetricFamily, T: float, sigma0: float | None = None, strip_sigma0: float | None = None,
            tol: float = 1e-12, with_bound: bool = True, verbose=False, console=None) -> CountReport:
    """Count zeros of f up to a safe height above T and check them against the phase counts.

    N comes from the winding of the core around |σ − a| < σ₀ − a, δ < τ < T' (|τ| < T' in
    conjugate mode) plus the poles of the core inside; N₀′ from the phase crossings of h
    on the line; N₀ adds the multiplicities of the located line zeros when N₀′ < N.

    For T ≥ 1 the top T' is the ordinate in (⌈T⌉, ⌈T⌉ + 1) where the sampled min |f| across the
    contour is largest; it is perturbed by up to 2e−3 only if that contour is still rejected.
    Without an explicit σ₀, families whose envelope never drops below 2 and right-side contours
    that exceed the evaluation budget are counted in a strip instead: the family default σ₀, else
    |σ − a| < 2.

    Args:
        fam: Built family.
        T: Requested height; the height actually used is ``CountReport.height``.
        sigma0: Explicit right edge; defaults to the envelope choice.
        strip_sigma0: Count only in the strip 2a − σ₀ < σ < σ₀ instead.
        tol: Boundary tolerance for the winding counts.
        with_bound: Also compute B_a (skipped in strip mode).

    Returns:
        CountReport: Counts, the bound and the contour metadata.
    """
    if not T > 0:
        raise InvalidParameterError(f"Height must be positive, got {T}")
    automatic = sigma0 is None and strip_sigma0 is None
    sigma0, envelope, strip = _choose_sigma0(fam, sigma0, strip_sigma0, verbose, console)
    mode = CountMode.CONJUGATE_TWOSIDED if fam.conjugated else CountMode.REAL_ONESIDED
    if verbose and console:
        console.print(f"[dim]→ Counting {fam.label} up to T = {T:g} ({mode.value})[/]")
        detail = "strip" if strip else (f"envelope {envelope:.3g}" if envelope is not None else "given")
        console.print(f"[dim]  • σ₀: {sigma0:g} ({detail})[/]")

    try:
        winding, trace, box, height, attempt = _contour(fam, T, sigma0, strip, tol, verbose, console)
    except BudgetExceededError as e:
        if strip or not automatic:
            raise
        sigma0, envelope, strip = _strip_sigma0(fam), None, True
        if verbose and console:
            console.print(f"[yellow]→ Warning: {e}; counting in the strip σ₀ = {sigma0:g}[/]")
        winding, trace, box, height, attempt = _contour(fam, T, sigma0, strip, tol, verbose, console)
    sigma0 = box[1]

    points = _line_points_below(fam, height)
    N = winding + _poles_inside(fam.inventory.f_poles, box) + sum(p.order for p in points)
    N0_prime = count_line_zeros(fam, trace) + len(points)
    located = line_zeros(fam, height, trace=trace, with_multiplicity=N != N0_prime)
    if N == N0_prime:
        N0 = N0_prime
    else:
        N0 = sum(r.multiplicity for r in located) + sum(p.order for p in points)
    report = integer_point_report(trace, fam.line_offset)

    terms = None
    B_a = None
    if with_bound and not strip:
        terms = bound_terms(fam, sigma0, height, tol)
        B_a = terms.value

    result = CountReport(
        family=fam.label, T=T, N=N, N0=N0, N0_prime=N0_prime, B_a=B_a, parity_ok=(N - N0) % 2 == 0,
        d_estimate=report.d, mode=mode, strip_sigma0=sigma0 if strip else None, k=report.k,
        d_lower=report.d_lower, d_stable=report.d_stable, sigma0=sigma0, envelope=envelope, height=height,
        bottom_offset=box[2] if not fam.conjugated else 0.0, perturbations=attempt, terms=terms,
        line_zeros=tuple(located),
    )
    if verbose and console:
        console.print(f"[dim]  • height used: {height:g} after {attempt} perturbation(s)[/]")
        console.print(f"[dim]  • N: {N}, N₀: {N0}, N₀′: {N0_prime}, k: {report.k}, d: {report.d}[/]")
        if B_a is not None:
            console.print(f"[dim]  • B_a: {B_a} (reduced {result.reduced_bound})[/]")
        for problem in result.violations:
            console.print(f"[yellow]→ Warning: {problem}[/]")
    return result


# ---- average of S(T)

def _quad(func: Callable[[float], float], lo: float, hi: float, points=()) -> float:
    inner = sorted(p for p in set(points) if lo < p < hi)
    with warnings.catch_warnings():
        warnings.simplefilter('error', integrate.IntegrationWarning)
        try:
            value, _ = integrate.quad(func, lo, hi, points=inner or None, limit=QUAD_LIMIT,
                                      epsabs=1e-7, epsrel=1e-7)
        except integrate.IntegrationWarning as e:
            raise BudgetExceededError(f"Quadrature on [{lo:g}, {hi:g}] did not converge: {e}")
    return value


def littlewood_S_mean(fam: SymmetricFamily, T: float, sigma0: float) -> float:
    """(1/T)∫₀^T S(τ)dτ from the contour identity for g = 1 ± F.

    π∫₀^T S = ∫_a^{σ₀} log|g(σ+iT)|dσ + ∫₀^T arg g(σ₀+iτ)dτ − ∫_a^{σ₀} log|g(σ)|dσ, with arg g
    taken on the principal branch on ℜs = σ₀, where |F| < 1.
    """
    if not sigma0 > fam.a:
        raise InvalidParameterError(f"σ₀ must exceed a = {fam.a:g}, got {sigma0}")
    if fam.envelope is not None and not fam.envelope(sigma0) < 2:
        raise InvalidParameterError(f"|F| is not below 1 on σ = {sigma0:g}; take a larger σ₀")
    sign = fam.sign.factor
    a = fam.a

    def g(s: complex) -> complex:
        return 1 + sign * ratio_F(fam, s)

    def log_abs(s: complex) -> float:
        try:
            value = abs(g(s))
        except NearZeroDenominatorError:
            return 0.0
        return math.log(value) if value > 0 else -745.0

    breaks = [p.real for p in _known_real_points(fam) if a < p.real < sigma0]
    if not fam.conjugated:
        breaks += [r.location.real for r in _real_zero_inventory(fam, sigma0)]

    top = _quad(lambda x: log_abs(complex(x, T)), a, sigma0)
    side = _quad(lambda t: cmath.phase(g(complex(sigma0, t))), 0.0, T)
    axis = _quad(lambda x: log_abs(complex(x)), a, sigma0, breaks)
    return (top + side - axis) / (math.pi * T)


def _known_real_points(fam: SymmetricFamily) -> list[complex]:
    points = [p for p, _ in fam.inventory.f_poles]
    points += [p for p, _ in fam.h.declared_poles] + [z for z, _ in fam.h.declared_zeros_right]
    return [p for p in points if abs(p.imag) < 1e-12]


# ---- heights

def _zeta(s: complex) -> complex:
    return specfun.zeta(s).value


def safe_height(n: int, g: Callable[[complex], complex] | None = None, sigmas=SAFE_SIGMAS) -> SafeHeight:
    """The candidate n + (j + ½)/16 with the largest sampled min |g(σ+iT)| over ``sigmas``.

    Without ``g`` this is ζ on −1 ≤ σ ≤ 2; count_N passes the family core and its contour width.
    """
    if n < 1:
        raise InvalidParameterError(f"safe_height needs n ≥ 1, got {n}")
    g = g or _zeta
    best_T, best_min = None, -1.0
    for j in range(SAFE_CANDIDATES):
        T = n + (j + 0.5) / SAFE_CANDIDATES
        smallest = min(abs(g(complex(sigma, T))) for sigma in sigmas)
        if smallest > best_min:
            best_T, best_min = T, smallest
    if best_min > 0:
        A = max(0.0, -math.log(best_min) / math.log(best_T)) + 1e-6
    else:
        A = math.inf
    return SafeHeight(best_T, A, best_min)


# ---- density

def density_report(fam: SymmetricFamily, T: float, verbose=False, console=None) -> DensityReport:
    """N(T) − N₀′(T) against the budget 4·N_h(a, 2T+4) plus a fixed slack of 4."""
    variant = fam.spec.variant
    eligible = isinstance(variant, Custom) or (
        isinstance(variant, (ZetaTranslate, LTranslate)) and 0 < variant.alpha < 0.5
    )
    if not eligible:
        raise InvalidParameterError(f"Density counts need a translate with 0 < α < ½ or a custom h, got {fam.label}")
    report = count_N(fam, T, with_bound=False, verbose=verbose, console=console)
    N_h = count_h_zeros_right(fam, report.sigma0, 2 * T + 4, upper_only=True)
    result = DensityReport(report.N - report.N0_prime, 4 * N_h, DENSITY_SLACK, report.N, report.N0_prime)
    if verbose and console:
        console.print(f"[dim]  • N_h(a, {2 * T + 4:g}): {N_h}[/]")
        console.print(f"[dim]  • gap {result.count_gap}, budget {result.budget} + slack {result.slack}[/]")
    return result
