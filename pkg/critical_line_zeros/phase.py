"""Continuous argument of h along the critical line and the line-zero counts built on it."""
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable
import cmath
import math

import numpy as np

from .contour import INITIAL_STEP, MIN_STEP, rectangle_winding, segment_argument, track_argument
from .errors import BoundaryTooCloseError, LineZeroEncounteredError, NearZeroDenominatorError
from .families import Custom, MeromorphicSpec, SymmetricFamily

NOISE_FLOOR = 1e-300
CROSSING_TOL = 1e-10
LINE_ZERO_WINDOW = 1e-6


@dataclass(frozen=True, eq=False)
class PhaseTrace:
    """Samples (τ, φ) of a continuous arg h(a+iτ); φ(0) = arg h(a), taken as 0 when h(a) is real."""

    a: float
    taus: np.ndarray
    phis: np.ndarray
    max_jump: float
    evaluate: Callable[[complex], complex]
    flipped: bool = False

    @property
    def samples(self) -> list[tuple[float, float]]:
        return list(zip(self.taus.tolist(), self.phis.tolist()))

    @property
    def tau_min(self) -> float:
        return float(self.taus[0])

    @property
    def tau_max(self) -> float:
        return float(self.taus[-1])

    @property
    def phi_end(self) -> float:
        return float(self.phis[-1])

    def phi_near(self, index: int, tau: float) -> float:
        """φ at τ, continued from sample ``index`` (τ must lie within that sample's step)."""
        base = self.evaluate(complex(self.a, self.taus[index]))
        value = self.evaluate(complex(self.a, tau))
        return float(self.phis[index] + cmath.phase(value / base))

    def cells(self, offset: Fraction) -> np.ndarray:
        return np.floor(self.phis / math.pi - float(offset)).astype(int)


@dataclass(frozen=True)
class IntegerPointReport:
    """Crossings of φ/π − offset through integers, with the decreasing-point corrections."""

    points: tuple[tuple[float, int], ...]
    k: int
    d: int
    d_lower: int
    d_stable: bool
    offset: Fraction

    @property
    def values(self) -> list[int]:
        return [v for _, v in self.points]


# ---- tracing

def _raise_line_zero(point: complex) -> None:
    raise LineZeroEncounteredError(f"h vanishes on the line near τ = {point.imag:.10g}", point.imag)


def _anchor(h: MeromorphicSpec, tau: float) -> tuple[float, bool]:
    value = h(complex(h.a, tau))
    if not abs(value) > NOISE_FLOOR or not cmath.isfinite(value):
        _raise_line_zero(complex(h.a, tau))
    if tau == 0 and abs(value.imag) <= 1e-14 * abs(value):
        return 0.0, value.real < 0
    return cmath.phase(value), False


def _track(h: MeromorphicSpec, t0: float, t1: float, initial_step: float, min_step: float):
    a = h.a
    return track_argument(h, lambda t: complex(a, t), t0, t1, initial_step=initial_step,
                          min_step=min_step, on_floor=_raise_line_zero)


def trace_phase(h: MeromorphicSpec, tau_min: float, tau_max: float, tol: float = 1e-12,
                initial_step: float = INITIAL_STEP, min_step: float = MIN_STEP) -> PhaseTrace:
    """Trace φ(τ) = arg h(a+iτ) on [tau_min, tau_max] with every step below π/2.

    A range containing 0 is traced outward from τ = 0 in both directions.
    """
    if tau_max < tau_min:
        raise ValueError(f"Empty trace range [{tau_min}, {tau_max}]")
    min_step = max(min_step, tol)
    start = 0.0 if tau_min <= 0 <= tau_max else tau_min
    phi0, flipped = _anchor(h, start)

    upper = _track(h, start, tau_max, initial_step, min_step)
    taus, phis = upper.params, phi0 + upper.increments
    max_jump = upper.max_jump
    if tau_min < start:
        lower = _track(h, start, tau_min, initial_step, min_step)
        taus = np.concatenate([lower.params[:0:-1], taus])
        phis = np.concatenate([(phi0 + lower.increments)[:0:-1], phis])
        max_jump = max(max_jump, lower.max_jump)

    return PhaseTrace(h.a, np.asarray(taus, dtype=float), np.asarray(phis, dtype=float), max_jump, h, flipped)


def trace_family(fam: SymmetricFamily, T: float, **kwargs) -> PhaseTrace:
    """The trace a family's line counts need: (0, T), or (−T, T) in conjugate mode."""
    return trace_phase(fam.h, -T if fam.conjugated else 0.0, T, **kwargs)


# ---- crossings

def _refine(trace: PhaseTrace, index: int, target: float) -> float:
    """Bisect for φ(τ)/π = target between samples index and index + 1."""
    lo, hi = float(trace.taus[index]), float(trace.taus[index + 1])
    rising = trace.phis[index + 1] > trace.phis[index]
    while hi - lo > CROSSING_TOL:
        mid = 0.5 * (lo + hi)
        above = trace.phi_near(index, mid) / math.pi >= target
        if above == rising:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def crossings(trace: PhaseTrace, offset: Fraction) -> list[tuple[float, int]]:
    """Points where φ/π − offset passes through an integer, in increasing τ.

    A sample exactly on an integer counts once, as the end of the step reaching it.
    """
    values = trace.phis / math.pi - float(offset)
    points = []
    for i in range(len(values) - 1):
        v0, v1 = values[i], values[i + 1]
        if v1 > v0:
            hits = range(math.floor(v0) + 1, math.floor(v1) + 1)
        elif v1 < v0:
            hits = range(math.ceil(v0) - 1, math.ceil(v1) - 1, -1)
        else:
            continue
        for n in hits:
            points.append((_refine(trace, i, n + float(offset)), int(n)))
    return points


def _start_point(trace: PhaseTrace, offset: Fraction) -> list[tuple[float, int]]:
    if trace.tau_min != 0:
        return []
    v0 = trace.phis[0] / math.pi - float(offset)
    if abs(v0 - round(v0)) < 1e-12:
        return [(0.0, int(round(v0)))]
    return []


def count_line_zeros(fam: SymmetricFamily, trace: PhaseTrace) -> int:
    """Distinct zeros of f on the line: 0 < τ < T, or |τ| < T in conjugate mode."""
    points = crossings(trace, fam.line_offset)
    if fam.conjugated:
        return sum(1 for tau, _ in points if abs(tau) < trace.tau_max)
    return sum(1 for tau, _ in points if 0 < tau < trace.tau_max)


def integer_point_report(trace: PhaseTrace, offset: Fraction) -> IntegerPointReport:
    """Integer points x₁ < x₂ < … of φ/π − offset on τ ≥ 0 with k and the d estimate.

    k = c + e counts the steps x_{j−1} → x_j whose value does not increase, c of them equal and
    e strictly decreasing. k is not the lower bound on the excess zeros; that is
    ``d_lower`` = c + 2e − g(x₁), which credits each strict decrease twice and the start value.
    Values −1, −1, 0 give k = 1 and d_lower = 2.
    ``d`` is N₀′(τ) − ⌈φ(τ)/π − u⌉ at the end of the trace (u = 1 − offset).
    """
    offset = Fraction(offset)
    points = _start_point(trace, offset) + [p for p in crossings(trace, offset) if p[0] > 0]
    values = [v for _, v in points]
    equal = sum(1 for prev, cur in zip(values, values[1:]) if cur == prev)
    decreasing = sum(1 for prev, cur in zip(values, values[1:]) if cur < prev)
    k = equal + decreasing
    d_lower = max(0, equal + 2 * decreasing - values[0]) if values else 0

    u = 1 - float(offset)
    positive = np.array([tau for tau, _ in points if tau > 0])
    tail = trace.taus >= max(0.0, trace.tau_max) * 0.75
    gaps = []
    for tau, phi in zip(trace.taus[tail], trace.phis[tail]):
        if tau <= 0:
            continue
        n0_prime = int(np.count_nonzero(positive < tau))
        gaps.append(n0_prime - math.ceil(phi / math.pi - u - 1e-12))
    d = max(0, gaps[-1]) if gaps else 0
    stable = len(set(gaps)) <= 1
    return IntegerPointReport(tuple(points), k, d, d_lower, stable, offset)


# ---- derivative

def phase_derivative(h: MeromorphicSpec, tau: float) -> float:
    """θ′(τ) = ℜ h′/h at a+iτ, with h′ from a Richardson-extrapolated central difference."""
    s = complex(h.a, tau)
    value = h(s)
    if not abs(value) > NOISE_FLOOR:
        raise NearZeroDenominatorError(f"h vanishes at {s:.10g}", point=s)
    step = 1e-3 * min(1 + abs(s), 10.0)

    def central(delta: float) -> complex:
        return (h(s + delta) - h(s - delta)) / (2 * delta)

    derivative = (4 * central(step / 2) - central(step)) / 3
    return float((derivative / value).real)


# ---- lower bound with line zeros of h

def _original_h(fam: SymmetricFamily) -> MeromorphicSpec:
    variant = fam.spec.variant
    return variant.h if isinstance(variant, Custom) else fam.h


def _segments(h: MeromorphicSpec, T: float) -> tuple[list[float], list[float]]:
    """Phase increments H_j between the line zeros of h on (0, T), and those zeros."""
    zeros: list[float] = []
    increments: list[float] = []
    start = 0.0
    _anchor(h, start)
    while start < T:
        try:
            track = _track(h, start, T, INITIAL_STEP, MIN_STEP)
        except LineZeroEncounteredError as e:
            zeros.append(e.tau)
            stop = e.tau - LINE_ZERO_WINDOW
            increments.append(segment_argument(h, complex(h.a, start), complex(h.a, stop)) if stop > start else 0.0)
            start = e.tau + LINE_ZERO_WINDOW
            continue
        increments.append(track.total)
        break
    return increments, zeros


def _real_sign_changes(h: MeromorphicSpec, lo: float, hi: float) -> int:
    grid = np.arange(lo + 1e-6, hi, 0.01)
    if grid.size < 2:
        return 0
    values = np.array([h(complex(x)).real for x in grid])
    signs = np.sign(values)
    return int(np.count_nonzero(signs[1:] * signs[:-1] < 0))


def count_with_line_zeros(fam: SymmetricFamily, sigma0: float, T: float, verbose=False, console=None) -> int:
    """Certified lower bound for N₀′(T) when h itself may vanish on the line.

    Each open stretch between consecutive line zeros of h with phase increment H_j carries at
    least H_j/π − 2 zeros of f; the M line zeros of h are zeros of f too. The contour form
    R(σ₀,T) − n_h + P_h − 2N_h(a,σ₀,T) − 2 is also evaluated and the larger bound returned.
    """
    h = _original_h(fam)
    a = h.a
    increments, zeros = _segments(h, T)
    segment_bound = len(zeros) + sum(max(0, math.ceil(H / math.pi - 2 - 1e-9)) for H in increments)

    try:
        R = (segment_argument(h, complex(sigma0, 0), complex(sigma0, T))
             + segment_argument(h, complex(sigma0, T), complex(a, T))) / math.pi
        n_h = _real_sign_changes(h, a, sigma0)
        P_h = sum(m for p, m in h.declared_poles if a < p.real < sigma0)
        box = (a + LINE_ZERO_WINDOW, sigma0, 1e-3, T)
        poles_in_box = sum(m for p, m in h.declared_poles if a < p.real < sigma0 and 1e-3 < p.imag < T)
        N_h = rectangle_winding(h, box) + poles_in_box + len(zeros)
        formula_bound = math.ceil(R - n_h + P_h - 2 * N_h - 2 - 1e-9)
    except BoundaryTooCloseError:
        formula_bound = None

    if verbose and console:
        console.print(f"[dim]→ Line zeros of h on (0, {T:g}): {len(zeros)}[/]")
        console.print(f"[dim]  • segment increments / π: {', '.join(f'{H / math.pi:.3f}' for H in increments)}[/]")
        console.print(f"[dim]  • segment bound: {segment_bound}, contour bound: {formula_bound}[/]")
    if formula_bound is None:
        return segment_bound
    return max(segment_bound, formula_bound)
