import math
from fractions import Fraction

import pytest

from critical_line_zeros.errors import LineZeroEncounteredError
from critical_line_zeros.families import (
    Custom,
    FamilySpec,
    LinePoint,
    LinePolicy,
    MeromorphicSpec,
    Sign,
    ZetaTranslate,
    build_family,
)
from critical_line_zeros.phase import (
    count_line_zeros,
    count_with_line_zeros,
    crossings,
    integer_point_report,
    phase_derivative,
    trace_family,
    trace_phase,
)

from conftest import LOG2_HALF, exp_kernel


def test_trace_of_the_exponential_is_linear():
    trace = trace_phase(exp_kernel(), 0.0, 10.0)
    assert trace.phis[0] == 0.0
    assert trace.phi_end == pytest.approx(20.0, abs=1e-9)
    assert trace.max_jump < math.pi / 2


def test_two_sided_trace_is_sorted():
    trace = trace_phase(exp_kernel(), -3.0, 3.0)
    assert trace.tau_min == -3.0
    assert trace.tau_max == 3.0
    assert all(b > a for a, b in zip(trace.taus, trace.taus[1:]))
    assert trace.phis[0] == pytest.approx(-6.0, abs=1e-9)


def test_crossings_of_the_exponential():
    trace = trace_phase(exp_kernel(), 0.0, 10.0)
    points = crossings(trace, Fraction(0))
    assert [n for _, n in points] == [1, 2, 3, 4, 5, 6]
    for tau, n in points:
        assert tau == pytest.approx(n * math.pi / 2, abs=1e-8)


def test_line_counts_for_sinh_and_cosh(sinh_family, cosh_family):
    assert count_line_zeros(sinh_family, trace_family(sinh_family, 10.0)) == 6
    assert count_line_zeros(cosh_family, trace_family(cosh_family, 10.0)) == 6


def test_integer_points_increase_for_the_exponential():
    report = integer_point_report(trace_phase(exp_kernel(), 0.0, 10.0), Fraction(0))
    assert report.values == [0, 1, 2, 3, 4, 5, 6]
    assert report.k == 0
    assert report.d_lower == 0


def test_phase_derivative():
    assert phase_derivative(MeromorphicSpec(lambda s: s + 1, 0.0), 0.0) == pytest.approx(1.0, abs=1e-8)
    assert phase_derivative(exp_kernel(), 4.0) == pytest.approx(2.0, abs=1e-8)


def test_zeta2_slope_at_the_center(zeta2_family):
    # h = e^{αs}(s − β): h′/h(0) = α − 1/β
    assert phase_derivative(zeta2_family.h, 0.0) == pytest.approx(LOG2_HALF - 1.0, abs=1e-8)


def test_line_zero_of_h_stops_the_trace():
    with pytest.raises(LineZeroEncounteredError) as info:
        trace_phase(MeromorphicSpec(lambda s: s - 2j, 0.0), 0.0, 5.0)
    assert info.value.tau == pytest.approx(2.0, abs=1e-6)


def test_lower_bound_with_a_line_zero_of_h():
    h = MeromorphicSpec(lambda s: (s * s + 25) * (s + 2), 0.0, line_zero_policy=LinePolicy.FINITE,
                        line_points=(LinePoint(5.0, 1),))
    fam = build_family(FamilySpec(Custom(h), Sign.MINUS))
    assert count_with_line_zeros(fam, 3.0, 10.0) == 1


@pytest.mark.slow
def test_integer_points_of_the_three_fifths_translate():
    fam = build_family(FamilySpec(ZetaTranslate(0.6), Sign.PLUS))
    report = integer_point_report(trace_family(fam, 21.0), fam.line_offset)
    assert report.values == [-1, -1, 0]
    expected = (0.337, 13.86, 20.71)
    for (tau, _), target in zip(report.points, expected):
        assert tau == pytest.approx(target, abs=0.01)
    assert report.k == 1
    assert report.d_lower == 2


def test_halving_the_initial_step_keeps_the_phase(taylor_family):
    coarse = trace_phase(taylor_family.h, 0.0, 30.0, initial_step=0.05)
    fine = trace_phase(taylor_family.h, 0.0, 30.0, initial_step=0.025)
    assert abs(coarse.phi_end - fine.phi_end) < 1e-8
    assert max(coarse.max_jump, fine.max_jump) < math.pi / 2
