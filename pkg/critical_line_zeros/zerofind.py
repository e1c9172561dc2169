"""Localization of individual zeros and the special parameter solves."""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable
import math

import numpy as np
from scipy import optimize

from . import specfun
from .contour import MIN_STEP, circle_winding, rectangle_winding
from .errors import (
    BoundaryTooCloseError,
    BracketInvalidError,
    InvalidParameterError,
    MaxDepthExceededError,
    PoleInIntervalError,
    RadiusSelectionError,
)
from .families import FamilySpec, HPoly, MeromorphicSpec, SymmetricFamily, build_family
from .phase import crossings, phase_derivative, trace_family, trace_phase
from .polynomial import Polynomial, RealPolynomial

LINE_TOL = 1e-9
DEDUP_RADIUS = 1e-8
MAX_DEPTH = 40
MIN_BOX_SIDE = 1e-7
SPLIT_FRACTIONS = (0.5, 0.47, 0.53)
SCAN_STEP = 0.01
MULTIPLICITY_RADIUS = 1e-2


class ZeroMethod(Enum):
    LINE_BISECTION = "line_bisection"
    REAL_SCAN = "real_scan"
    BOX_NEWTON = "box_newton"


@dataclass(frozen=True)
class ZeroRecord:
    """A located zero of f; ``residual`` is |core(z)| / (|h(z)| + |h(2a−z)|)."""

    location: complex
    multiplicity: int
    on_line: bool
    method: ZeroMethod
    residual: float


@dataclass(frozen=True)
class SolveResult:
    parameter: float
    certificate: float
    tau: float | None = None


def residual(fam: SymmetricFamily, z: complex) -> float:
    scale = abs(fam.h(z)) + abs(fam.reflected(z))
    return abs(fam.core(z)) / scale if scale > 0 else math.inf


def _record(fam: SymmetricFamily, z: complex, multiplicity: int, method: ZeroMethod) -> ZeroRecord:
    return ZeroRecord(complex(z), multiplicity, abs(z.real - fam.a) < LINE_TOL, method, residual(fam, z))


def _known_poles(fam: SymmetricFamily) -> list[complex]:
    poles = [p for p, _ in fam.inventory.f_poles]
    for p, _ in fam.h.declared_poles:
        poles += [p, 2 * fam.a - (p.conjugate() if fam.conjugated else p)]
    return poles


# ---- multiplicity

def multiplicity(fam: SymmetricFamily, z: complex, neighbours=(), of: Callable[[complex], complex] | None = None) -> int:
    """Zero order of f (or of ``of``) at z from small-circle windings at two radii that must agree."""
    z = complex(z)
    g = of or fam.value
    others = [w for w in list(neighbours) + _known_poles(fam) if abs(w - z) > DEDUP_RADIUS]
    radius = min([MULTIPLICITY_RADIUS] + [0.25 * abs(w - z) for w in others])
    for _ in range(6):
        try:
            outer = circle_winding(g, z, radius)
            inner = circle_winding(g, z, radius / 2)
        except BoundaryTooCloseError:
            radius /= 2
            continue
        if outer == inner:
            return outer
        radius /= 2
    raise RadiusSelectionError(f"No stable multiplicity circle around {z:.10g}")


# ---- line zeros

def line_zeros(fam: SymmetricFamily, T: float, include_center: bool = False,
               with_multiplicity: bool = False, trace=None) -> list[ZeroRecord]:
    """Zeros a+iτ with 0 < τ < T (|τ| < T in conjugate mode), bisected on the phase crossings."""
    trace = trace or trace_family(fam, T)
    points = [tau for tau, _ in crossings(trace, fam.line_offset)]
    if fam.conjugated:
        points = [tau for tau in points if abs(tau) < T]
    else:
        points = [tau for tau in points if 0 < tau < T]
        if include_center and abs(fam.core(complex(fam.a))) <= 1e-12 * (abs(fam.h(complex(fam.a))) + 1e-300):
            points = [0.0] + points
    locations = [complex(fam.a, tau) for tau in points]
    records = []
    for z in locations:
        order = multiplicity(fam, z, locations) if with_multiplicity else 1
        records.append(_record(fam, z, order, ZeroMethod.LINE_BISECTION))
    return records


def line_zero_alternation(h: MeromorphicSpec, T: float, tau_min: float = 0.0, skip: int = 0) -> tuple[bool, list]:
    """Merge the line zeros of h − h(2a−s) and h + h(2a−s) on (tau_min, T) and test strict alternation.

    Returns (alternating, merged) with merged a sorted list of (τ, 'minus' | 'plus'); the first
    ``skip`` entries are left out of the test.
    """
    trace = trace_phase(h, tau_min, T)
    merged = [(tau, 'minus') for tau, _ in crossings(trace, Fraction(0)) if tau > tau_min]
    merged += [(tau, 'plus') for tau, _ in crossings(trace, Fraction(1, 2)) if tau > tau_min]
    merged.sort()
    labels = [label for _, label in merged[skip:]]
    alternating = all(x != y for x, y in zip(labels, labels[1:]))
    return alternating, merged


# ---- real axis

def split_at_poles(fam: SymmetricFamily, lo: float, hi: float) -> list[tuple[float, float]]:
    """Cut (lo, hi) at the real poles of f and h lying strictly inside it."""
    cuts = sorted({p.real for p in _known_poles(fam) if abs(p.imag) < LINE_TOL and lo < p.real < hi})
    edges = [lo] + cuts + [hi]
    return list(zip(edges[:-1], edges[1:]))


def real_zeros(fam: SymmetricFamily, lo: float, hi: float, partners: bool = True) -> list[ZeroRecord]:
    """Real zeros in (lo, hi) from a 0.01-step sign scan refined by brentq.

    Odd-order zeros only; the mirror 2a − ρ of every zero is reported as well.
    """
    if fam.conjugated:
        raise InvalidParameterError("Real-axis scans need a family that is real on the real axis")
    inside = [p.real for p in _known_poles(fam) if abs(p.imag) < LINE_TOL and lo < p.real < hi]
    if inside:
        raise PoleInIntervalError(f"Pole at {inside[0]:.10g} inside ({lo:g}, {hi:g}); split with split_at_poles")

    def g(x: float) -> float:
        return fam.core(complex(x)).real

    start, stop = lo + 1e-6, hi - 1e-6
    n = max(2, int(math.ceil((stop - start) / SCAN_STEP)) + 1)
    grid = np.linspace(start, stop, n)
    values = np.array([g(x) for x in grid])
    roots = []
    for x0, x1, v0, v1 in zip(grid[:-1], grid[1:], values[:-1], values[1:]):
        if v0 == 0:
            roots.append(float(x0))
        elif v0 * v1 < 0:
            root = optimize.brentq(g, x0, x1, xtol=1e-14, rtol=4 * np.finfo(float).eps)
            if residual(fam, complex(root)) < 1e-6:
                roots.append(root)
    if values[-1] == 0:
        roots.append(float(grid[-1]))

    records = [_record(fam, complex(x), 1, ZeroMethod.REAL_SCAN) for x in roots]
    if partners:
        for x in roots:
            mirror = 2 * fam.a - x
            if abs(mirror - x) > DEDUP_RADIUS and not lo < mirror < hi:
                records.append(_record(fam, complex(mirror), 1, ZeroMethod.REAL_SCAN))
    return records


# ---- off-line zeros

def _box_count(fam: SymmetricFamily, box) -> int:
    s_lo, s_hi, t_lo, t_hi = box
    poles = sum(m for p, m in fam.inventory.f_poles if s_lo < p.real < s_hi and t_lo < p.imag < t_hi)
    return rectangle_winding(fam.core, box, min_step=MIN_STEP) + poles


def _split(box, fraction: float):
    s_lo, s_hi, t_lo, t_hi = box
    s_mid = s_lo + fraction * (s_hi - s_lo)
    t_mid = t_lo + fraction * (t_hi - t_lo)
    return [(s_lo, s_mid, t_lo, t_mid), (s_mid, s_hi, t_lo, t_mid),
            (s_lo, s_mid, t_mid, t_hi), (s_mid, s_hi, t_mid, t_hi)]


def _children(fam: SymmetricFamily, box):
    for fraction in SPLIT_FRACTIONS:
        try:
            return [(child, _box_count(fam, child)) for child in _split(box, fraction)]
        except BoundaryTooCloseError:
            continue
    raise MaxDepthExceededError(f"Every split of {box} passes too close to a zero", box)


def _newton(fam: SymmetricFamily, z0: complex) -> complex | None:
    def fprime(z):
        step = 1e-6 * (1 + abs(z))
        return (fam.core(z + step) - fam.core(z - step)) / (2 * step)

    try:
        root = optimize.newton(fam.core, complex(z0), fprime=fprime, tol=1e-14, maxiter=60)
    except (RuntimeError, ZeroDivisionError, OverflowError):
        return None
    root = complex(root)
    return root if np.isfinite(root) else None


def _inside(z: complex, box, margin: float = 0.0) -> bool:
    s_lo, s_hi, t_lo, t_hi = box
    return s_lo - margin <= z.real <= s_hi + margin and t_lo - margin <= z.imag <= t_hi + margin


def offline_zeros(fam: SymmetricFamily, box, verbose=False, console=None) -> list[ZeroRecord]:
    """Zeros of f in box = (σ_lo, σ_hi, τ_lo, τ_hi) by quadrisection and Newton refinement.

    The mirror 2a − z̄ of every zero off the line is added when it is not in the list yet.
    """
    total = _box_count(fam, box)
    if verbose and console:
        console.print(f"[dim]→ Box {box}: winding count {total}[/]")
    found: list[tuple[complex, int]] = []
    stack = [(tuple(box), total, 0)]
    while stack:
        current, count, depth = stack.pop()
        if count <= 0:
            continue
        s_lo, s_hi, t_lo, t_hi = current
        side = max(s_hi - s_lo, t_hi - t_lo)
        if count == 1 or side < MIN_BOX_SIDE:
            center = complex((s_lo + s_hi) / 2, (t_lo + t_hi) / 2)
            root = _newton(fam, center)
            if root is not None and _inside(root, current, margin=1e-9) and residual(fam, root) < 1e-10:
                found.append((root, count))
                continue
            if side < MIN_BOX_SIDE:
                found.append((center, count))
                continue
        if depth >= MAX_DEPTH:
            raise MaxDepthExceededError(f"Could not isolate the zeros in {current}", current)
        for child, child_count in _children(fam, current):
            if child_count > 0:
                stack.append((child, child_count, depth + 1))

    records: list[ZeroRecord] = []
    for z, order in sorted(found, key=lambda item: (item[0].imag, item[0].real)):
        if any(abs(r.location - z) < DEDUP_RADIUS for r in records):
            continue
        records.append(_record(fam, z, order, ZeroMethod.BOX_NEWTON))
    for record in list(records):
        if record.on_line:
            continue
        mirror = complex(2 * fam.a - record.location.real, record.location.imag)
        if not any(abs(r.location - mirror) < DEDUP_RADIUS for r in records):
            records.append(_record(fam, mirror, record.multiplicity, ZeroMethod.BOX_NEWTON))
    if verbose and console:
        for record in records:
            console.print(f"[dim]  • {record.location:.10g} (multiplicity {record.multiplicity}, "
                          f"residual {record.residual:.2e})[/]")
    return records


# ---- parameter solves

def translate_kernel(alpha: float) -> MeromorphicSpec:
    """h_α(s) = ζ*(s+α) on the axis ½, without inventory checks."""
    return MeromorphicSpec(lambda s: specfun.zeta_completed(s + alpha).value, 0.5,
                           declared_poles=((complex(-alpha), 1), (complex(1 - alpha), 1)),
                           label=f"ζ*(s + {alpha:g})")


def r_of_alpha(alpha: float) -> float:
    """(ζ*)′(½+α)/ζ*(½+α), the slope of arg h_α at τ = 0."""
    return phase_derivative(translate_kernel(alpha), 0.0)


def solve_alpha_star(bracket: tuple[float, float] = (0.55, 20.0)) -> SolveResult:
    """The α > ½ where (ζ*)′(½+α) = 0."""
    lo, hi = bracket
    if not r_of_alpha(lo) < 0 < r_of_alpha(hi):
        raise BracketInvalidError(f"r(α) does not change sign on {bracket}")
    alpha = optimize.brentq(r_of_alpha, lo, hi, xtol=1e-12)
    return SolveResult(alpha, abs(r_of_alpha(alpha)))


def solve_y_star(q: Polynomial) -> SolveResult:
    """y* = 4π exp(−γ − q′(½)/q(½)), certified by the vanishing slope of arg h at s = ½."""
    q = RealPolynomial.coerce(q)
    q_half = float(q(0.5))
    if q_half == 0:
        raise InvalidParameterError("q(½) = 0: y* is undefined")
    log_y = math.log(4 * math.pi) - float(np.euler_gamma) - float(q.derivative()(0.5)) / q_half
    y_star = math.exp(log_y)
    fam = build_family(FamilySpec(HPoly(y_star, q * Polynomial((-1.0, 2.0)))))
    return SolveResult(y_star, abs(phase_derivative(fam.h, 0.0)))


def _critical_tau(h: MeromorphicSpec, window: tuple[float, float]) -> float | None:
    grid = np.arange(window[0], window[1] + 1e-12, 0.05)
    slopes = np.array([phase_derivative(h, t) for t in grid])
    changes = np.flatnonzero(np.sign(slopes[1:]) * np.sign(slopes[:-1]) < 0)
    if changes.size == 0:
        return None
    i = int(changes[0])
    return optimize.brentq(lambda t: phase_derivative(h, t), grid[i], grid[i + 1], xtol=1e-12)


def solve_double_zero(parameterization: Callable[[float], MeromorphicSpec] = translate_kernel,
                      bracket: tuple[float, float] = (2.5, 2.7), tau_window: tuple[float, float] = (3.0, 8.0),
                      offset: Fraction = Fraction(1, 2), level: int | None = None) -> SolveResult:
    """Parameter where a turning point of u(τ) = φ(τ)/π − offset touches an integer level.

    Nested solve: the inner brentq finds u′(τ) = 0 in ``tau_window``; the outer one moves the
    parameter until u at that point equals ``level`` (the integer between the bracket values
    when not given). The touching point is a double zero of the family on the line.
    """
    def turning(param: float) -> tuple[float, float]:
        h = parameterization(param)
        tau = _critical_tau(h, tau_window)
        if tau is None:
            raise BracketInvalidError(f"u has no turning point in {tau_window} at parameter {param:g}")
        return tau, trace_phase(h, 0.0, tau).phi_end / math.pi - float(offset)

    _, u_lo = turning(bracket[0])
    _, u_hi = turning(bracket[1])
    if level is None:
        level = round((u_lo + u_hi) / 2)
    if (u_lo - level) * (u_hi - level) > 0:
        raise BracketInvalidError(f"u at the turning point stays on one side of {level} over {bracket}")

    param = optimize.brentq(lambda p: turning(p)[1] - level, bracket[0], bracket[1], xtol=1e-10)
    tau, u = turning(param)
    return SolveResult(param, abs(u - level), tau)
