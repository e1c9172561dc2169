import json
import math

import pytest
from click.testing import CliRunner

from critical_line_zeros.cli import cli

ZETA2 = ['--family', 'zeta2', '--alpha', '0.3466', '--beta', '1']


@pytest.fixture
def runner():
    return CliRunner()


def run_json(runner, tmp_path, args, name='out.json'):
    target = tmp_path / name
    result = runner.invoke(cli, args + ['-o', str(target)])
    assert result.exit_code == 0, result.output
    return json.loads(target.read_text(encoding='utf-8'))


def test_version(runner):
    result = runner.invoke(cli, ['--version'])
    assert result.exit_code == 0
    assert '0.1.0' in result.output


def test_eval_zeta2(runner, tmp_path):
    document = run_json(runner, tmp_path, ['eval', *ZETA2, '--s', '2+0i'])
    assert document['schema'] == 'clz.eval/1'
    expected = math.exp(0.6932) + 3 * math.exp(-0.6932)
    assert document['f']['re'] == pytest.approx(expected, rel=1e-10)
    assert document['f']['im'] == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("args", [
    ['eval', *ZETA2, '--s', '2+'],
    ['eval', '--s', '2'],
    ['figure', 'nope'],
    ['locate', *ZETA2, '--box', '1,2'],
    ['verify', 'shift-ratio'],
    ['verify', 'shift-ratio', '--shift', '0.1'],
    ['report', *ZETA2, '--height', '-1'],
])
def test_usage_errors_exit_with_2(runner, args):
    assert runner.invoke(cli, args).exit_code == 2


def test_family_and_spec_file_are_exclusive(runner, tmp_path):
    spec = tmp_path / 'zeta2.spec'
    spec.write_text("family=zeta2\nalpha=1\n", encoding='utf-8')
    result = runner.invoke(cli, ['eval', *ZETA2, '--spec-file', str(spec), '--s', '2'])
    assert result.exit_code == 2


def test_eval_from_a_spec_file(runner, tmp_path):
    spec = tmp_path / 'zeta2.spec'
    spec.write_text("family = zeta2\nalpha = 0,3466\n", encoding='utf-8')
    document = run_json(runner, tmp_path, ['eval', '--spec-file', str(spec), '--s', '2'])
    assert document['f']['re'] == pytest.approx(math.exp(0.6932) + 3 * math.exp(-0.6932), rel=1e-10)


def test_solve_y_star(runner, tmp_path):
    document = run_json(runner, tmp_path, ['solve', 'y-star'])
    assert document['schema'] == 'clz.solve/1'
    assert document['parameter'] == pytest.approx(7.0555, abs=1e-4)
    assert document['tau'] is None


def test_trace_csv(runner, tmp_path):
    target = tmp_path / 'trace.csv'
    result = runner.invoke(cli, ['trace', *ZETA2, '--T', '5', '--format', 'csv', '-o', str(target)])
    assert result.exit_code == 0, result.output
    lines = target.read_text(encoding='utf-8').splitlines()
    assert lines[0] == '# schema: clz.trace/1'
    assert lines[1] == 'tau,phi,phi_over_pi,cell'
    assert lines[2].startswith('0,0,0,')


def test_locate_line_zeros(runner, tmp_path):
    document = run_json(runner, tmp_path, ['locate', *ZETA2, '--T', '10'])
    assert document['schema'] == 'clz.zeros/1'
    assert document['zeros']
    assert all(z['on_line'] for z in document['zeros'])


def test_report_zeta2(runner, tmp_path):
    document = run_json(runner, tmp_path, ['report', *ZETA2, '--T', '10'])
    assert document['N'] == document['N0'] == document['N0_prime']
    assert document['violations'] == []


def test_copiado_pass_and_fail(runner, tmp_path):
    family = ['--family', 'perturbed-polynomial', '--samples', '100']
    document = run_json(runner, tmp_path, ['verify', 'copiado', *family, '--poly', '1,3,2', '--y', '2'])
    assert document['passed'] is True
    assert document['certifying'] is False
    result = runner.invoke(cli, ['verify', 'copiado', *family, '--poly', '1,1', '--y', '0.5'])
    assert result.exit_code == 3


def test_output_is_deterministic(runner, tmp_path):
    args = ['eval', *ZETA2, '--s', '0.7+2i']
    first = tmp_path / 'first.json'
    second = tmp_path / 'second.json'
    assert runner.invoke(cli, args + ['-o', str(first)]).exit_code == 0
    assert runner.invoke(cli, args + ['-o', str(second)]).exit_code == 0
    assert first.read_bytes() == second.read_bytes()


def test_output_directory_from_the_environment(runner, tmp_path, monkeypatch):
    monkeypatch.setenv('CLZ_OUTPUT_DIR', str(tmp_path / 'results'))
    result = runner.invoke(cli, ['eval', *ZETA2, '--s', '1+1i'])
    assert result.exit_code == 0, result.output
    assert json.loads((tmp_path / 'results' / 'eval.json').read_text(encoding='utf-8'))['schema'] == 'clz.eval/1'


def test_stdout_without_a_destination(runner):
    result = runner.invoke(cli, ['solve', 'y-star', '--format', 'csv'])
    assert result.exit_code == 0
    assert '# schema: clz.solve/1' in result.output


@pytest.mark.slow
def test_report_hat_f8_finds_the_offline_pair(runner, tmp_path):
    document = run_json(runner, tmp_path, ['report', '--family', 'zeta-translate', '--alpha', '8', '--sign', 'plus',
                                           '--T', '5'])
    assert document['N'] - document['N0'] == 2
