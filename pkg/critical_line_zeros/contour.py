"""Continuous argument tracking of analytic functions along parametrized paths."""
from dataclasses import dataclass
from typing import Callable
import cmath
import math

import numpy as np

from .errors import BoundaryTooCloseError

UNWRAP_LIMIT = math.pi / 2
REGROW_BELOW = math.pi / 8
INITIAL_STEP = 0.05
MIN_STEP = 1e-9


@dataclass(frozen=True, eq=False)
class ArgumentTrack:
    """Accepted parameter samples with the argument change accumulated since the first one."""

    params: np.ndarray
    increments: np.ndarray
    values: np.ndarray
    max_jump: float

    @property
    def total(self) -> float:
        return float(self.increments[-1])


def _usable(value: complex) -> bool:
    return value != 0 and cmath.isfinite(value)


def _default_floor(point: complex) -> None:
    raise BoundaryTooCloseError(f"Argument tracking stalled near {point:.10g}", point)


def track_argument(g: Callable[[complex], complex], path: Callable[[float], complex], t0: float, t1: float,
                   initial_step: float = INITIAL_STEP, min_step: float = MIN_STEP,
                   on_floor: Callable[[complex], None] | None = None) -> ArgumentTrack:
    """Follow arg g(path(t)) from t0 to t1, halving the step whenever it jumps by π/2 or more.

    ``on_floor`` is called with the offending point when the step drops below ``min_step``;
    it is expected to raise.
    """
    on_floor = on_floor or _default_floor
    direction = 1.0 if t1 >= t0 else -1.0
    t = t0
    value = complex(g(path(t)))
    if not _usable(value):
        on_floor(path(t))
        raise BoundaryTooCloseError(f"Unusable value at {path(t):.10g}", path(t))

    params, increments, values = [t], [0.0], [value]
    step = initial_step
    max_jump = 0.0
    while direction * (t1 - t) > 0:
        h = min(step, abs(t1 - t))
        t_next = t + direction * h
        if abs(t1 - t_next) < 1e-14 * max(1.0, abs(t1)):
            t_next = t1
        value_next = complex(g(path(t_next)))
        jump = cmath.phase(value_next / value) if _usable(value_next) else math.inf
        if abs(jump) >= UNWRAP_LIMIT:
            step = h / 2
            if step < min_step:
                on_floor(path(t_next))
                raise BoundaryTooCloseError(f"Argument tracking stalled near {path(t_next):.10g}", path(t_next))
            continue
        t, value = t_next, value_next
        params.append(t)
        increments.append(increments[-1] + jump)
        values.append(value)
        max_jump = max(max_jump, abs(jump))
        if abs(jump) < REGROW_BELOW:
            step = min(2 * h, initial_step)
    return ArgumentTrack(np.asarray(params), np.asarray(increments), np.asarray(values), max_jump)


# ---- closed contours

def segment_argument(g: Callable[[complex], complex], z0: complex, z1: complex, **kwargs) -> float:
    """Total change of arg g along the straight segment z0 → z1."""
    length = abs(z1 - z0)
    if length == 0:
        return 0.0
    unit = (z1 - z0) / length
    return track_argument(g, lambda t: z0 + t * unit, 0.0, length, **kwargs).total


def _winding(total: float, where: complex) -> int:
    turns = total / (2 * math.pi)
    winding = round(turns)
    if abs(turns - winding) > 0.05:
        raise BoundaryTooCloseError(f"Non-integer winding {turns:.4f} around {where:.6g}", where)
    return int(winding)


def rectangle_winding(g: Callable[[complex], complex], rect: tuple[float, float, float, float], **kwargs) -> int:
    """Zeros minus poles of g inside (σ_lo, σ_hi, τ_lo, τ_hi), traversed counterclockwise."""
    s_lo, s_hi, t_lo, t_hi = rect
    corners = [complex(s_lo, t_lo), complex(s_hi, t_lo), complex(s_hi, t_hi), complex(s_lo, t_hi)]
    total = 0.0
    for z0, z1 in zip(corners, corners[1:] + corners[:1]):
        total += segment_argument(g, z0, z1, **kwargs)
    return _winding(total, complex((s_lo + s_hi) / 2, (t_lo + t_hi) / 2))


def circle_winding(g: Callable[[complex], complex], center: complex, radius: float, **kwargs) -> int:
    """Zeros minus poles of g inside the circle |s − center| = radius."""
    kwargs.setdefault('min_step', 1e-7)
    track = track_argument(g, lambda t: center + radius * cmath.exp(1j * t), 0.0, 2 * math.pi, **kwargs)
    return _winding(track.total, center)
