"""Stable polynomials, the Hermite–Biehler split and sampled |F| < 1 checks."""
from dataclasses import dataclass
import math

import numpy as np
from scipy.stats import qmc

from . import specfun
from .errors import (
    BoundCheckFailed,
    FunctionalEquationViolatedError,
    IncompleteInventoryError,
    InvalidParameterError,
    NearZeroDenominatorError,
    RootFindingError,
)
from .families import FamilySpec, MeromorphicSpec, PerturbedPolynomial, Sign, SymmetricFamily, build_family
from .phase import trace_phase
from .polynomial import Polynomial, RealPolynomial
from .winding import CountReport, count_N
from .zerofind import offline_zeros

ROOT_TOL = 1e-10
SAMPLE_SIGMA = (0.01, 30.0)
SAMPLE_TAU = 100.0
MONOTONE_TAU = 50.0
PHASE_LIMIT_TAU = 1e3


@dataclass(frozen=True)
class SampledCheck:
    """Outcome of a sampled inequality check. Sampling never certifies the inequality."""

    passed: bool
    samples: int
    worst: float
    worst_point: complex | None
    monotone: bool | None = None
    certifying: bool = False

    def __bool__(self) -> bool:
        return self.passed


@dataclass(frozen=True)
class PolynomialChecks:
    stable: bool
    stodola: bool
    interlacing: bool
    phase_limit_ok: bool
    on_line: bool | None

    @property
    def necessary_conditions(self) -> bool:
        return self.stodola and self.interlacing and self.phase_limit_ok and self.on_line is not False


# ---- stability and the even/odd split

def _real(p) -> RealPolynomial:
    return p if isinstance(p, RealPolynomial) else RealPolynomial.coerce(p)


def is_stable(p: Polynomial) -> bool:
    """True iff every root of p lies in σ < 0."""
    p = _real(p)
    if p.degree < 1:
        raise InvalidParameterError(f"Stability needs a nonconstant polynomial, got {p}")
    roots = p.roots()
    return bool(np.all(roots.real < -ROOT_TOL * np.maximum(1.0, np.abs(roots))))


def stodola_condition(p: Polynomial) -> bool:
    """All coefficients share the sign of the leading one (necessary for stability)."""
    coeffs = np.asarray(_real(p).coefficients) * np.sign(_real(p).leading)
    return bool(np.all(coeffs > 0))


def hb_split(p: Polynomial) -> tuple[RealPolynomial, RealPolynomial]:
    """(q, r) with p(z) = q(z²) + z·r(z²)."""
    p = _real(p)
    coeffs = list(p.coefficients)
    q = RealPolynomial(tuple(coeffs[0::2]) or (0.0,))
    r = RealPolynomial(tuple(coeffs[1::2]) or (0.0,))
    z = 0.3 * np.exp(1j * np.arange(1, 11))
    if not np.allclose(p(z), q(z * z) + z * r(z * z), rtol=1e-12, atol=1e-12):
        raise InvalidParameterError(f"Even/odd split of {p} does not reproduce it")
    return q, r


def _negative_simple_roots(p: RealPolynomial) -> np.ndarray | None:
    if p.is_zero:
        return None
    roots = p.roots()
    scale = np.maximum(1.0, np.abs(roots))
    if np.any(np.abs(roots.imag) > 1e-8 * scale) or np.any(roots.real >= 0):
        return None
    values = np.sort(roots.real)
    if np.any(np.diff(values) <= 1e-9 * np.maximum(1.0, np.abs(values[1:]))):
        return None
    return values


def interlacing_check(q: Polynomial, r: Polynomial) -> bool:
    """Roots of q and r are real, negative, simple and strictly alternate, starting with q next to 0."""
    try:
        q_roots = _negative_simple_roots(_real(q))
        r_roots = _negative_simple_roots(_real(r))
    except RootFindingError:
        return False
    if q_roots is None or r_roots is None:
        return False
    merged = sorted([(x, 'q') for x in q_roots] + [(x, 'r') for x in r_roots], reverse=True)
    if any(abs(x - y) <= 1e-9 * max(1.0, abs(x)) for (x, _), (y, _) in zip(merged, merged[1:])):
        return False
    labels = [label for _, label in merged]
    if labels and labels[0] != 'q':
        return False
    return all(u != v for u, v in zip(labels, labels[1:]))


def phase_limit(p: Polynomial, tau: float = PHASE_LIMIT_TAU) -> float:
    """Continuous arg p(iτ) − arg p(0) at τ, unwrapped on a dense grid."""
    p = _real(p)
    grid = np.concatenate([np.linspace(0.0, 10.0, 4001), np.geomspace(10.0, tau, 2001)[1:]])
    values = p(1j * grid)
    phases = np.unwrap(np.angle(values))
    return float(phases[-1] - phases[0])


def on_line_only(p: Polynomial, box=(0.1, 5.0, 0.0, 20.0)) -> bool:
    """No zeros of p(s) ± p(−s) in ``box`` off the line σ = 0."""
    for sign in Sign:
        fam = build_family(FamilySpec(PerturbedPolynomial(_real(p), 1.0), sign))
        if offline_zeros(fam, box):
            return False
    return True


def check_polynomial(p: Polynomial, with_zeros: bool = True) -> PolynomialChecks:
    """Every necessary condition of stability evaluated on one polynomial."""
    p = _real(p)
    q, r = hb_split(p)
    limit_ok = abs(phase_limit(p) - p.degree * math.pi / 2) < 0.05
    return PolynomialChecks(
        stable=is_stable(p), stodola=stodola_condition(p), interlacing=interlacing_check(q, r),
        phase_limit_ok=limit_ok, on_line=on_line_only(p) if with_zeros else None,
    )


# ---- corpora

def _factor(rng: np.random.Generator, left: bool, room: int) -> Polynomial:
    direction = 1.0 if left else -1.0
    if room >= 2 and rng.random() < 0.5:
        b = rng.uniform(0.2, 4.0)
        c = rng.uniform(0.1, 9.0)
        return Polynomial((c, direction * b, 1.0))
    return Polynomial((direction * rng.uniform(0.1, 3.0), 1.0))


def _random_polynomial(rng: np.random.Generator, degree: int, unstable: bool) -> RealPolynomial:
    target = int(rng.integers(1, degree + 1))
    p = Polynomial((float(rng.uniform(0.5, 2.0)),))
    first = True
    while p.degree < target:
        p = p * _factor(rng, left=not (unstable and first), room=target - p.degree)
        first = False
    return RealPolynomial.coerce(p)


def stable_corpus(n: int, degree: int = 8, seed: int = 20240517) -> list[RealPolynomial]:
    """n polynomials of degree ≤ ``degree`` built from left half-plane factors."""
    rng = np.random.default_rng(seed)
    return [_random_polynomial(rng, degree, unstable=False) for _ in range(n)]


def unstable_corpus(n: int, degree: int = 8, seed: int = 20240517) -> list[RealPolynomial]:
    """n polynomials with at least one right half-plane factor."""
    rng = np.random.default_rng(seed + 1)
    return [_random_polynomial(rng, degree, unstable=True) for _ in range(n)]


# ---- the P(y; s) family

def count_window(N: int, height: float, y: float, u: float) -> float:
    """N − (T/π) log y + u at the contour top T.

    Writing N = φ(T)/π − u + θ with 0 ≤ θ < 1 and φ(T) = T log y + arg p(iT) leaves θ + arg p(iT)/π, so
    the window is [0, n/2 + 1) for a stable p of degree n; n/2 alone is exceeded for p = z + 1, y = 2.
    """
    return N - height * math.log(y) / math.pi + u


def perturbed_family_check(p: Polynomial, y: float, T: float, sign: Sign = Sign.MINUS,
                           verbose=False, console=None) -> CountReport:
    """Count y^s p(s) ± y^{−s} p(−s) and assert its zeros sit on σ = 0 inside the count window.

    The window 0 ≤ N(T) − (T/π) log y + u_± < n/2 + 1 is taken at the height count_N used.
    """
    p = _real(p)
    if not is_stable(p):
        raise InvalidParameterError(f"{p} is not stable")
    if not y > 1:
        raise InvalidParameterError(f"perturbed_family_check needs y > 1, got {y}")
    fam = build_family(FamilySpec(PerturbedPolynomial(p, y), sign), verbose=verbose, console=console)
    report = count_N(fam, T, verbose=verbose, console=console)
    if not report.all_on_line:
        raise BoundCheckFailed(f"{fam.label}: N = {report.N}, N₀ = {report.N0}, N₀′ = {report.N0_prime} up to {T:g}")
    window = count_window(report.N, report.height, y, float(fam.u_pm))
    if verbose and console:
        console.print(f"[dim]  • N − (T/π)log y + u: {window:.6f} (window [0, {p.degree / 2 + 1:g}))[/]")
    if not 0 <= window < p.degree / 2 + 1:
        raise BoundCheckFailed(f"{fam.label}: N − (T/π)log y + u = {window:.6f} outside [0, {p.degree / 2 + 1:g})")
    return report


# ---- sampled |F| < 1 checks

def _sample_points(a: float, samples: int, seed: int) -> np.ndarray:
    u = qmc.Halton(d=2, scramble=True, seed=seed).random(samples)
    sigma = a + SAMPLE_SIGMA[0] + (SAMPLE_SIGMA[1] - SAMPLE_SIGMA[0]) * u[:, 0]
    tau = SAMPLE_TAU * (2 * u[:, 1] - 1)
    return sigma + 1j * tau


def _reflect(h: MeromorphicSpec, s: complex) -> complex:
    """h̄(2a − s)."""
    return h((2 * h.a - s).conjugate()).conjugate()


def _sampled(ratio, points) -> SampledCheck:
    worst, worst_point = 0.0, None
    for s in points:
        try:
            value = abs(ratio(complex(s)))
        except NearZeroDenominatorError:
            continue
        if value > worst:
            worst, worst_point = value, complex(s)
    return SampledCheck(worst < 1, len(points), worst, worst_point)


def _monotone(h: MeromorphicSpec) -> bool:
    trace = trace_phase(h, 0.0, MONOTONE_TAU)
    return bool(np.all(np.diff(trace.phis) > 0))


def copiado_check(h: MeromorphicSpec, samples: int = 500, seed: int = 20240517) -> SampledCheck:
    """Sample |F(s)| = |h(2a−s)/h(s)| on σ > a and test that arg h(a+iτ) increases on [0, 50]."""
    def ratio(s: complex) -> complex:
        value = h(s)
        if value == 0:
            raise NearZeroDenominatorError(f"h vanishes at {s:.6g}", point=s)
        return _reflect(h, s) / value

    result = _sampled(ratio, _sample_points(h.a, samples, seed))
    monotone = _monotone(h)
    return SampledCheck(result.passed and monotone, result.samples, result.worst, result.worst_point, monotone)


def _rotation(h: MeromorphicSpec) -> complex:
    """e^{iθ} in h̄(2a−s) = e^{iθ}h(s), checked at ten sample points."""
    points = [complex(h.a + 0.37 * m, 1.9 * m - 9.0) for m in range(1, 11)]
    ratios = []
    for s in points:
        value = h(s)
        if value != 0:
            ratios.append(_reflect(h, s) / value)
    if not ratios:
        raise FunctionalEquationViolatedError(f"{h.label} vanishes at every sample point")
    rotation = ratios[0]
    if abs(abs(rotation) - 1) > 1e-6 or any(abs(r - rotation) > 1e-6 for r in ratios):
        raise FunctionalEquationViolatedError(f"{h.label} has no functional equation about a = {h.a:g}")
    return rotation


def shift_ratio_check(h: MeromorphicSpec, alpha: float, b: float, samples: int = 500,
                      seed: int = 20240517) -> SampledCheck:
    """Sample |h(s−α)/h(s+α)| < 1 on σ > a for h with zeros in |σ − a| < b and α ≥ b."""
    if not alpha >= b:
        raise InvalidParameterError(f"Shift α = {alpha:g} must be at least the strip half-width b = {b:g}")
    _rotation(h)

    def ratio(s: complex) -> complex:
        value = h(s + alpha)
        if value == 0:
            raise NearZeroDenominatorError(f"h vanishes at {s + alpha:.6g}", point=s + alpha)
        return h(s - alpha) / value

    return _sampled(ratio, _sample_points(h.a, samples, seed))


def blaschke_check(fam: SymmetricFamily, samples: int = 200, seed: int = 20240517) -> SampledCheck:
    """F₁ = R·F with R the Blaschke product over the zeros of h right of the axis and the
    reflected poles of h left of it: |F₁| = 1 on the line and |F₁| < 1 to its right (sampled).
    """
    h = fam.h
    a = h.a
    if not h.zeros_right_known:
        raise IncompleteInventoryError(f"{h.label}: zeros right of the axis are not known")
    centers = [z for z, m in h.declared_zeros_right if z.real > a for _ in range(m)]
    centers += [2 * a - p.conjugate() for p, m in h.declared_poles if p.real < a for _ in range(m)]

    def blaschke(s: complex) -> complex:
        value = 1.0 + 0j
        for w in centers:
            value *= (s - w) / (s - (2 * a - w.conjugate()))
        return value

    def ratio(s: complex) -> complex:
        value = h(s)
        if value == 0:
            raise NearZeroDenominatorError(f"h vanishes at {s:.6g}", point=s)
        return blaschke(s) * fam.reflected(s) / value

    inside = _sampled(ratio, _sample_points(a, samples, seed))
    taus = qmc.Halton(d=1, scramble=True, seed=seed + 3).random(32)[:, 0] * SAMPLE_TAU
    on_line = []
    for tau in taus:
        try:
            on_line.append(abs(ratio(complex(a, tau))))
        except NearZeroDenominatorError:
            continue
    unimodular = all(math.isclose(x, 1.0, rel_tol=1e-6) for x in on_line)
    return SampledCheck(inside.passed and unimodular, inside.samples, inside.worst, inside.worst_point)


def xi_kernel(scale: float = 1.0) -> MeromorphicSpec:
    """h(s) = ξ(k·s − (k−1)/2) on the axis ½; its zeros lie in |σ − ½| < 1/(2k)."""
    if not scale > 0:
        raise InvalidParameterError(f"Scale must be positive, got {scale}")
    shift = (scale - 1) / 2
    return MeromorphicSpec(lambda s: specfun.xi(scale * s - shift).value, 0.5, label=f"ξ({scale:g}s − {shift:g})")
