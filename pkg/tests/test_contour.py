import math

import pytest

from critical_line_zeros.contour import circle_winding, rectangle_winding, segment_argument, track_argument
from critical_line_zeros.errors import BoundaryTooCloseError


def test_rectangle_counts_zeros_minus_poles():
    box = (-1.0, 1.0, -1.0, 1.0)
    assert rectangle_winding(lambda s: s, box) == 1
    assert rectangle_winding(lambda s: (s - 0.5) * (s + 0.5j), box) == 2
    assert rectangle_winding(lambda s: 1 / s, box) == -1
    assert rectangle_winding(lambda s: s, (5.0, 6.0, 1.0, 2.0)) == 0


def test_circle_counts_multiplicity():
    assert circle_winding(lambda s: (s - 1) ** 3, 1.0, 0.1) == 3
    assert circle_winding(lambda s: (s - 1) ** 3, 3.0, 0.1) == 0


def test_zero_on_edge_is_rejected():
    with pytest.raises(BoundaryTooCloseError):
        rectangle_winding(lambda s: s, (0.0, 1.0, -1.0, 1.0))


def test_segment_argument():
    assert segment_argument(lambda s: s, 1.0, 1j) == pytest.approx(math.pi / 2, abs=1e-12)
    assert segment_argument(lambda s: s, 1.0, 1.0) == 0.0


def test_track_keeps_steps_below_quarter_turn():
    track = track_argument(lambda s: s ** 8, lambda t: complex(math.cos(t), math.sin(t)), 0.0, math.pi)
    assert track.max_jump < math.pi / 2
    assert track.total == pytest.approx(8 * math.pi, abs=1e-9)


def test_custom_floor_handler():
    seen = []

    def on_floor(point):
        seen.append(point)
        raise RuntimeError("stalled")

    with pytest.raises(RuntimeError):
        track_argument(lambda s: s, lambda t: complex(0.0, 1.0 - t), 0.0, 2.0, on_floor=on_floor)
    assert abs(seen[0]) < 1e-6
