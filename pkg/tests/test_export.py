import json
from fractions import Fraction

import pytest

from critical_line_zeros.export import (
    TRACE_HEADER,
    ZEROS_HEADER,
    figure_r_of_alpha,
    figure_rows,
    figure_u_of_tau,
    fmt,
    report_dict,
    schema,
    to_csv,
    to_json,
    trace_rows,
    write_output,
    zero_rows,
)
from critical_line_zeros.families import Sign
from critical_line_zeros.phase import trace_phase
from critical_line_zeros.winding import CountMode, CountReport
from critical_line_zeros.zerofind import ZeroMethod, ZeroRecord

from conftest import exp_kernel


def test_schema_names():
    assert schema('trace') == 'clz.trace/1'
    assert schema('report') == 'clz.report/1'
    with pytest.raises(ValueError):
        schema('pictures')


@pytest.mark.parametrize("value, text", [
    (1 / 3, '0.333333333333'),
    (2.0, '2'),
    (True, 'true'),
    (None, ''),
    (Fraction(3, 2), '3/2'),
    (Sign.PLUS, 'plus'),
    (7, '7'),
])
def test_cell_format(value, text):
    assert fmt(value) == text


def test_csv_starts_with_the_schema_line():
    text = to_csv('zeros', ZEROS_HEADER, [[0.5, 14.134725141734, 1, True, 1e-13, ZeroMethod.LINE_BISECTION]])
    lines = text.splitlines()
    assert lines[0] == '# schema: clz.zeros/1'
    assert lines[1] == 're,im,multiplicity,on_line,residual,method'
    assert lines[2] == '0.5,14.1347251417,1,true,1e-13,line_bisection'


def test_json_layout():
    document = json.loads(to_json('eval', {'s': 2 + 1j, 'ratio': float('nan'), 'B_a': Fraction(1, 2)}))
    assert list(document) == ['schema', 's', 'ratio', 'B_a']
    assert document['schema'] == 'clz.eval/1'
    assert document['s'] == {'re': 2.0, 'im': 1.0}
    assert document['ratio'] is None
    assert document['B_a'] == '1/2'


def test_write_output_creates_directories(tmp_path):
    target = tmp_path / 'a' / 'b' / 'out.csv'
    assert write_output('x\n', target) == target
    assert target.read_text(encoding='utf-8') == 'x\n'
    assert write_output('x\n', None) is None


def test_trace_and_zero_rows():
    trace = trace_phase(exp_kernel(), 0.0, 2.0)
    rows = trace_rows(trace, Fraction(0))
    assert len(rows[0]) == len(TRACE_HEADER)
    assert rows[0] == [0.0, 0.0, 0.0, 0]
    assert rows[-1][3] == 1
    record = ZeroRecord(complex(0.5, 3.0), 2, True, ZeroMethod.REAL_SCAN, 0.0)
    assert zero_rows([record]) == [[0.5, 3.0, 2, True, 0.0, ZeroMethod.REAL_SCAN]]


def test_report_payload_keys():
    report = CountReport('made up', 10.0, N=4, N0=4, N0_prime=4, B_a=Fraction(1, 2), parity_ok=True,
                         d_estimate=0, mode=CountMode.REAL_ONESIDED)
    payload = report_dict(report)
    assert list(payload)[:6] == ['family', 'mode', 'T', 'N', 'N0', 'N0_prime']
    assert payload['violations'] == []
    document = json.loads(to_json('report', payload))
    assert document['mode'] == 'real_onesided'
    assert document['B_a'] == '1/2'
    assert document['terms'] is None


def test_r_of_alpha_changes_sign_near_its_root():
    rows = figure_r_of_alpha(6.7, 6.9, 0.1)
    assert [round(alpha, 6) for alpha, _ in rows] == [6.7, 6.8, 6.9]
    assert rows[0][1] < 0 < rows[-1][1]


def test_u_of_tau_grid():
    rows = figure_u_of_tau(0.6, 2.0, 0.5)
    assert [tau for tau, _ in rows] == [0.0, 0.5, 1.0, 1.5, 2.0]
    assert rows[0][1] == pytest.approx(-0.5)


def test_unknown_figure():
    with pytest.raises(ValueError):
        figure_rows('nope')


@pytest.mark.slow
def test_u_of_tau_default_range():
    values = [u for _, u in figure_u_of_tau()]
    assert min(values) < -1
    assert max(values) > 0.3
