from fractions import Fraction

from critical_line_zeros.table import complex_text, count_table, summary_box, zeros_table
from critical_line_zeros.winding import CountMode, CountReport
from critical_line_zeros.zerofind import ZeroMethod, ZeroRecord


def test_summary_box():
    lines = summary_box([['N', 6], ['B_a', Fraction(1, 2)]]).splitlines()
    assert lines[0] == '┌─────┬─────┐'
    assert lines[1] == '│ N   │ 6   │'
    assert lines[2] == '│ B_a │ 1/2 │'
    assert lines[-1] == '└─────┴─────┘'


def test_compact_summary_box():
    lines = summary_box([['ratio', 0.25]], compact=True).splitlines()
    assert lines == ['┌─────────────┐', '│ ratio  0.25 │', '└─────────────┘']


def test_complex_text():
    assert complex_text(1 - 2j) == '1-2i'
    assert complex_text(complex(0.5, 14.5)) == '0.5+14.5i'


def test_rich_tables():
    report = CountReport('zeta2(alpha=1, beta=1)', 10.0, N=4, N0=4, N0_prime=4, B_a=Fraction(1, 2),
                         parity_ok=True, d_estimate=0, mode=CountMode.REAL_ONESIDED)
    table = count_table(report)
    assert table.title == 'Counts for zeta2(alpha=1, beta=1)'
    assert table.row_count == 9
    records = [ZeroRecord(complex(0.0, 1.5), 1, True, ZeroMethod.LINE_BISECTION, 1e-12)]
    assert zeros_table(records).row_count == 1
