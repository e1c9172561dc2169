#!/usr/bin/env python3
"""Command line interface for counting and locating zeros of symmetrized families."""
from dataclasses import dataclass
from pathlib import Path
import math

from rich.console import Console
from rich.panel import Panel
import click

from . import __version__, specfun
from .config import get_max_terms, get_output_dir, get_seed, get_tolerance, load_env
from .errors import BoundCheckFailed, BoundViolation, InvalidParameterError, NearZeroDenominatorError
from .export import (
    FIGURES,
    TRACE_HEADER,
    ZEROS_HEADER,
    density_dict,
    figure_rows,
    report_dict,
    to_csv,
    to_json,
    trace_rows,
    write_output,
    zero_dict,
    zero_rows,
)
from .families import FamilySpec, PerturbedPolynomial, WengTruncated, build_family, ratio_F
from .literals import parse_complex, parse_real
from .phase import trace_family
from .polynomial import Polynomial, parse_polynomial
from .specfile import FAMILY_NAMES, load_spec_file, spec_from_options
from .stability import (
    blaschke_check,
    check_polynomial,
    copiado_check,
    perturbed_family_check,
    shift_ratio_check,
    stable_corpus,
    unstable_corpus,
    xi_kernel,
)
from .table import complex_text, corpus_table, count_table, summary_box, zeros_table
from .winding import count_N, density_report, littlewood_S_mean
from .zerofind import line_zeros, offline_zeros, real_zeros, solve_alpha_star, solve_double_zero, solve_y_star

console = Console(stderr=True)

FORMATS = ('csv', 'json')
DEFAULT_HEIGHT = 30.0
SOLVE_TARGETS = ('alpha-star', 'y-star', 'double-zero')
CHECKS = ('copiado', 'shift-ratio', 'blaschke', 'corpus', 'perturbed')


@dataclass(frozen=True)
class JobConfig:
    """One validated invocation: what to run, on which family, and where the output goes."""

    command: str
    selection: tuple[tuple[str, object], ...] = ()
    spec_file: str | None = None
    height: float | None = None
    box: tuple[float, float, float, float] | None = None
    tolerance: float = 1e-12
    output: str | None = None
    fmt: str = 'json'
    seed: int = 20240517

    def __post_init__(self):
        if not self.tolerance > 0:
            raise InvalidParameterError(f"Tolerance must be positive, got {self.tolerance}")
        if self.fmt not in FORMATS:
            raise InvalidParameterError(f"Output format must be one of {', '.join(FORMATS)}, got {self.fmt!r}")
        if self.spec_file is not None and not Path(self.spec_file).is_file():
            raise InvalidParameterError(f"Spec file not found: {self.spec_file}")
        if self.height is not None and not self.height > 0:
            raise InvalidParameterError(f"Height must be positive, got {self.height}")

    def family_spec(self, verbose=False) -> FamilySpec:
        options = dict(self.selection)
        if self.spec_file and options.get('family'):
            raise InvalidParameterError("Pass either --family or --spec-file, not both")
        if self.spec_file:
            return load_spec_file(self.spec_file, verbose=verbose, console=console)
        if not options.get('family'):
            raise InvalidParameterError("A family is required: pass --family or --spec-file")
        return spec_from_options(options)


# ---- shared options

def family_options(func):
    """Family selection flags shared by every command that builds a family."""
    options = [
        click.option('--family', '-f', type=click.Choice(FAMILY_NAMES), help='Family to build'),
        click.option('--spec-file', type=click.Path(exists=True, dir_okay=False), help='key=value family spec file'),
        click.option('--sign', type=click.Choice(['plus', 'minus']), help='Sign in h(s) ± h(2a−s)'),
        click.option('--conjugated/--no-conjugated', default=None, help='Use h̄(2a−s) for the reflected term'),
        click.option('--alpha', help='Translate α (zeta2, zeta-translate, l-translate)'),
        click.option('--beta', help='Zero of the zeta2 kernel'),
        click.option('--y', help='Parameter y (eisenstein-a0, h-poly, perturbed-polynomial)'),
        click.option('--poly', help='Polynomial coefficients, highest degree first: "2,-1" is 2s − 1'),
        click.option('--T', 'T_value', help='Weng truncation parameter; the height for every other family'),
        click.option('--height', type=float, help='Counting height (default: --T, else 30)'),
        click.option('--form', help='Quadratic form a,b,c (epstein)'),
        click.option('--n', help='Number of Fourier terms (epstein)'),
        click.option('--lambda', 'lam', help='λ of the g-class family'),
        click.option('--entry', multiple=True, help='Bessel entry b,λk,Ak (g-class, repeatable)'),
        click.option('--chi', help='Character label N.j (l-translate)'),
        click.option('--completed/--xi', default=None, help='ζ*(s+α) (default) or ξ(s+α) kernel'),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def output_options(func):
    options = [
        click.option('--output', '-o', type=click.Path(dir_okay=False), help='Write output to this file'),
        click.option('--format', 'fmt', type=click.Choice(FORMATS), default='json', help='Output format'),
        click.option('--tol', type=float, help='Absolute tolerance (default: CLZ_TOLERANCE)'),
        click.option('--verbose', '-v', is_flag=True, help='Enable verbose output'),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _complex_option(ctx, param, value):
    if value is None:
        return None
    try:
        return parse_complex(value)
    except InvalidParameterError as e:
        raise click.BadParameter(str(e))


def _numbers(text: str | None, count: int, name: str) -> tuple[float, ...] | None:
    if text is None:
        return None
    parts = [part for part in text.replace(';', ',').split(',') if part.strip()]
    if len(parts) != count:
        raise click.BadParameter(f"expected {count} comma-separated numbers, got {text!r}", param_hint=name)
    try:
        return tuple(parse_real(part) for part in parts)
    except InvalidParameterError as e:
        raise click.BadParameter(str(e), param_hint=name)


def _selection(params: dict) -> tuple[tuple[str, object], ...]:
    keys = {
        'family': 'family', 'sign': 'sign', 'conjugated': 'conjugated', 'alpha': 'alpha', 'beta': 'beta',
        'y': 'y', 'poly': 'poly', 'form': 'form', 'n': 'n', 'lam': 'lambda', 'entry': 'entry', 'chi': 'chi',
        'completed': 'completed',
    }
    selected = [(key, params[name]) for name, key in keys.items() if params.get(name) not in (None, ())]
    if params.get('family') == 'weng' and params.get('T_value') is not None:
        selected.append(('T', params['T_value']))
    return tuple(selected)


def _job(command: str, params: dict, box=None, seed=None, verbose=False) -> JobConfig:
    load_env(verbose=verbose, console=console)
    specfun.set_default_precision(specfun.EvalPrecision(max_terms=get_max_terms(verbose=verbose, console=console)))
    tol = params.get('tol')
    return JobConfig(
        command=command,
        selection=_selection(params),
        spec_file=params.get('spec_file'),
        height=params.get('height'),
        box=box,
        tolerance=tol if tol is not None else get_tolerance(verbose=verbose, console=console),
        output=params.get('output'),
        fmt=params.get('fmt', 'json'),
        seed=seed if seed is not None else get_seed(verbose=verbose, console=console),
    )


def _height(job: JobConfig, spec: FamilySpec, params: dict) -> float:
    if job.height is not None:
        return job.height
    if params.get('T_value') is not None and not isinstance(spec.variant, WengTruncated):
        return parse_real(params['T_value'])
    return DEFAULT_HEIGHT


def _emit(job: JobConfig, kind: str, payload: dict, header=None, rows=None, verbose=False) -> Path | None:
    """Render the job's output once and write it to --output, CLZ_OUTPUT_DIR or stdout."""
    if job.fmt == 'json':
        text = to_json(kind, payload)
    else:
        if header is None:
            header, rows = ['key', 'value'], _flat(payload)
        text = to_csv(kind, header, rows)
    path = job.output
    if path is None:
        out_dir = get_output_dir(verbose=verbose, console=console)
        if out_dir:
            path = str(Path(out_dir) / f"{job.command}.{job.fmt}")
    if path is None:
        click.echo(text, nl=False)
        return None
    return write_output(text, path, verbose=verbose, console=console)


def _flat(payload: dict, prefix: str = '') -> list[list]:
    rows = []
    for key, value in payload.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            rows += _flat(value, f"{name}.")
        elif isinstance(value, (list, tuple)):
            if value and not isinstance(value[0], dict):
                rows.append([name, '; '.join(str(v) for v in value)])
        elif isinstance(value, complex):
            rows.append([f"{name}.re", value.real])
            rows.append([f"{name}.im", value.imag])
        else:
            rows.append([name, value])
    return rows


def _fail(e: Exception):
    """Map library errors onto the exit-code contract: 2 usage, 3 bound, 1 anything else."""
    if isinstance(e, (click.ClickException, click.Abort)):
        raise e
    if isinstance(e, BoundCheckFailed):
        raise BoundViolation(str(e))
    if isinstance(e, InvalidParameterError):
        raise click.UsageError(str(e))
    console.print(f"[bold red]Error:[/] {str(e)}", style="red")
    raise click.Abort()


def _show_success_message(title: str, lines: list[str], path: Path | None):
    """Display success message after a command completes."""
    location = f"\nOutput: {path}" if path else ""
    body = "\n".join(lines)
    console.print(Panel(f"""
[bold green]{title}[/]
{body}{location}
    """, title="Success"))


# ---- commands

@click.group(context_settings=dict(help_option_names=['-h', '--help']))
@click.version_option(__version__, prog_name='clz')
def cli():
    """Count and locate zeros of f(s) = h(s) ± h(2a−s) on and off the line ℜs = a."""


@cli.command('eval')
@family_options
@click.option('--s', 's_value', required=True, callback=_complex_option, help='Point s, e.g. 0.7+2i')
@output_options
def eval_command(s_value, verbose, **params):
    """Evaluate f(s), h(s), h(2a−s) and F(s)."""
    try:
        job = _job('eval', params, verbose=verbose)
        fam = build_family(job.family_spec(verbose), verbose=verbose, console=console)
        try:
            F = ratio_F(fam, s_value)
        except NearZeroDenominatorError:
            F = None
        payload = {
            'family': fam.label, 's': s_value, 'f': fam.value(s_value), 'h': fam.h(s_value),
            'h_reflected': fam.reflected(s_value), 'F': F,
        }
        console.print(summary_box([
            ["family", fam.label], ["s", complex_text(s_value)], ["f(s)", complex_text(payload['f'])],
            ["h(s)", complex_text(payload['h'])], ["h(2a−s)", complex_text(payload['h_reflected'])],
            ["F(s)", complex_text(F) if F is not None else "N/A"],
        ]))
        _emit(job, 'eval', payload, verbose=verbose)
    except Exception as e:
        _fail(e)


@cli.command('trace')
@family_options
@output_options
def trace_command(verbose, **params):
    """Continuous phase φ(τ) = arg h(a+iτ) up to the height."""
    try:
        job = _job('trace', params, verbose=verbose)
        spec = job.family_spec(verbose)
        height = _height(job, spec, params)
        with console.status("[bold green]Tracing phase...") as status:
            status.update("[bold blue]Building family...")
            fam = build_family(spec, verbose=verbose, console=console)
            status.update(f"[bold blue]Tracing up to τ = {height:g}...")
            trace = trace_family(fam, height)
        rows = trace_rows(trace, fam.line_offset)
        payload = {
            'family': fam.label, 'a': fam.a, 'offset': fam.line_offset, 'max_jump': trace.max_jump,
            'samples': [dict(zip(TRACE_HEADER, row)) for row in rows],
        }
        path = _emit(job, 'trace', payload, TRACE_HEADER, rows, verbose=verbose)
        if path:
            _show_success_message("Phase traced!", [f"Family: {fam.label}", f"Samples: {len(rows)}",
                                                    f"φ(T)/π: {trace.phi_end / math.pi:.6f}"], path)
    except Exception as e:
        _fail(e)


@cli.command('report')
@family_options
@click.option('--sigma0', type=float, help='Right edge of the counting box (default: from the envelope)')
@click.option('--strip', 'strip_sigma0', type=float, help='Count only in the strip 2a − σ₀ < σ < σ₀')
@click.option('--density', is_flag=True, help='Also compare N − N₀′ with 4·N_h(a, 2T+4)')
@click.option('--littlewood', is_flag=True, help='Also evaluate the mean of S(τ) on [0, T]')
@output_options
def report_command(sigma0, strip_sigma0, density, littlewood, verbose, **params):
    """Count N, N₀, N₀′ up to the height and check them against B_a."""
    try:
        job = _job('report', params, verbose=verbose)
        spec = job.family_spec(verbose)
        height = _height(job, spec, params)
        with console.status("[bold green]Counting zeros...") as status:
            status.update("[bold blue]Building family...")
            fam = build_family(spec, verbose=verbose, console=console)
            status.update(f"[bold blue]Counting up to T = {height:g}...")
            report = count_N(fam, height, sigma0=sigma0, strip_sigma0=strip_sigma0, tol=job.tolerance,
                             verbose=verbose, console=console)
            payload = report_dict(report)
            density_result = None
            if density:
                status.update("[bold blue]Counting zeros of h right of the line...")
                density_result = density_report(fam, height, verbose=verbose, console=console)
                payload['density'] = density_dict(density_result)
            if littlewood:
                status.update("[bold blue]Integrating log g on the contour...")
                payload['littlewood_S_mean'] = littlewood_S_mean(fam, height, report.sigma0)

        console.print("\n", count_table(report), "\n")
        if report.line_zeros or report.real_zeros:
            console.print(zeros_table(report.line_zeros + report.real_zeros, title="Located zeros"))
        path = _emit(job, 'report', payload, verbose=verbose)

        problems = list(report.violations)
        if density_result is not None and not density_result.within_budget:
            problems.append(f"gap {density_result.count_gap} exceeds budget {density_result.budget} + "
                            f"{density_result.slack}")
        if problems:
            raise BoundViolation("; ".join(problems))
        verdict = "all zeros on the line and simple" if report.all_on_line and report.N0 == report.N \
            else f"{report.N - report.N0} zeros off the line"
        _show_success_message("Count complete!", [f"Family: {fam.label}", f"N = {report.N}, N₀ = {report.N0}, "
                                                  f"N₀′ = {report.N0_prime}", f"Verdict: {verdict}"], path)
    except Exception as e:
        _fail(e)


@cli.command('locate')
@family_options
@click.option('--box', help='Search box σ_lo,σ_hi,τ_lo,τ_hi for zeros off the line')
@click.option('--real', 'real_interval', help='Real interval lo,hi to scan for real zeros')
@output_options
def locate_command(box, real_interval, verbose, **params):
    """Locate zeros: on the line up to the height, in a box, or on a real interval."""
    try:
        box = _numbers(box, 4, '--box')
        interval = _numbers(real_interval, 2, '--real')
        job = _job('locate', params, box=box, verbose=verbose)
        spec = job.family_spec(verbose)
        with console.status("[bold green]Locating zeros...") as status:
            status.update("[bold blue]Building family...")
            fam = build_family(spec, verbose=verbose, console=console)
            if box is not None:
                status.update("[bold blue]Subdividing the box...")
                records = offline_zeros(fam, box, verbose=verbose, console=console)
            elif interval is not None:
                status.update("[bold blue]Scanning the real axis...")
                records = real_zeros(fam, *interval)
            else:
                height = _height(job, spec, params)
                status.update(f"[bold blue]Bisecting line zeros up to τ = {height:g}...")
                records = line_zeros(fam, height, include_center=True, with_multiplicity=True)
        console.print(zeros_table(records, title=f"Zeros of {fam.label}"))
        payload = {'family': fam.label, 'zeros': [zero_dict(r) for r in records]}
        path = _emit(job, 'zeros', payload, ZEROS_HEADER, zero_rows(records), verbose=verbose)
        if path:
            _show_success_message("Zeros located!", [f"Family: {fam.label}", f"Zeros: {len(records)}"], path)
    except Exception as e:
        _fail(e)


@cli.command('solve')
@click.argument('target', type=click.Choice(SOLVE_TARGETS))
@click.option('--poly', help='q(s) for y-star, highest degree first (default 1)')
@click.option('--bracket', help='Parameter bracket lo,hi')
@click.option('--window', help='τ window lo,hi for the turning point (double-zero)')
@output_options
def solve_command(target, poly, bracket, window, verbose, **params):
    """Solve for α*, y* or a double-zero parameter."""
    try:
        bracket = _numbers(bracket, 2, '--bracket')
        window = _numbers(window, 2, '--window')
        job = _job('solve', params, verbose=verbose)
        with console.status(f"[bold green]Solving for {target}..."):
            match target:
                case 'alpha-star':
                    result = solve_alpha_star(bracket) if bracket else solve_alpha_star()
                case 'y-star':
                    result = solve_y_star(parse_polynomial(poly) if poly else Polynomial((1.0,)))
                case 'double-zero':
                    kwargs = {}
                    if bracket:
                        kwargs['bracket'] = bracket
                    if window:
                        kwargs['tau_window'] = window
                    result = solve_double_zero(**kwargs)
        payload = {'target': target, 'parameter': result.parameter, 'certificate': result.certificate,
                   'tau': result.tau}
        console.print(summary_box([[key, value if value is not None else "N/A"] for key, value in payload.items()]))
        _emit(job, 'solve', payload, verbose=verbose)
    except Exception as e:
        _fail(e)


@cli.command('figure')
@click.argument('name', type=click.Choice(FIGURES))
@click.option('--output', '-o', type=click.Path(dir_okay=False), help='Write output to this file')
@click.option('--format', 'fmt', type=click.Choice(FORMATS), default='csv', help='Output format')
@click.option('--verbose', '-v', is_flag=True, help='Enable verbose output')
def figure_command(name, output, fmt, verbose):
    """Plot data for r(α) or u(τ) (data only, no images)."""
    try:
        job = _job('figure', {'output': output, 'fmt': fmt}, verbose=verbose)
        with console.status(f"[bold green]Computing {name}..."):
            rows = figure_rows(name)
        payload = {'figure': name, 'points': [{'x': x, 'y': y} for x, y in rows]}
        path = _emit(job, 'figure', payload, ['x', 'y'], rows, verbose=verbose)
        if path:
            _show_success_message("Figure data written!", [f"Figure: {name}", f"Points: {len(rows)}"], path)
    except Exception as e:
        _fail(e)


@cli.command('verify')
@click.argument('check', type=click.Choice(CHECKS))
@family_options
@click.option('--samples', type=int, default=500, help='Quasi-random sample count')
@click.option('--seed', type=int, help='Sampling seed (default: CLZ_SEED)')
@click.option('--shift', type=float, help='Shift α for shift-ratio')
@click.option('--b', 'half_width', type=float, help='Half-width b of the zero strip (shift-ratio)')
@click.option('--scale', type=float, default=1.0, help='k in h(s) = ξ(k·s − (k−1)/2) (shift-ratio)')
@click.option('--count', type=int, default=200, help='Stable corpus size')
@click.option('--degree', type=int, default=8, help='Maximal corpus degree')
@output_options
def verify_command(check, samples, seed, shift, half_width, scale, count, degree, verbose, **params):
    """Sampled checks of |F| < 1, the stability corpus and the P(y;s) count window."""
    try:
        job = _job('verify', params, seed=seed, verbose=verbose)
        payload: dict = {'check': check, 'seed': job.seed, 'certifying': False}
        passed = True
        with console.status(f"[bold green]Running {check} check...") as status:
            match check:
                case 'copiado' | 'blaschke':
                    status.update("[bold blue]Building family...")
                    fam = build_family(job.family_spec(verbose), verbose=verbose, console=console)
                    status.update("[bold blue]Sampling |F|...")
                    if check == 'copiado':
                        result = copiado_check(fam.h, samples, job.seed)
                    else:
                        result = blaschke_check(fam, samples, job.seed)
                    payload.update(family=fam.label, samples=result.samples, worst=result.worst,
                                   worst_point=result.worst_point, monotone=result.monotone)
                    passed = result.passed
                case 'shift-ratio':
                    if shift is None:
                        raise click.UsageError("shift-ratio needs --shift")
                    b = half_width if half_width is not None else 1 / (2 * scale)
                    result = shift_ratio_check(xi_kernel(scale), shift, b, samples, job.seed)
                    payload.update(scale=scale, shift=shift, b=b, samples=result.samples, worst=result.worst,
                                   worst_point=result.worst_point)
                    passed = result.passed
                case 'corpus':
                    stable = [check_polynomial(p) for p in stable_corpus(count, degree, job.seed)]
                    status.update("[bold blue]Checking unstable polynomials...")
                    unstable = [check_polynomial(p) for p in unstable_corpus(max(1, count // 10), degree, job.seed)]
                    console.print(corpus_table(stable, unstable))
                    stable_ok = sum(1 for c in stable if c.stable and c.necessary_conditions)
                    unstable_caught = sum(1 for c in unstable if not c.necessary_conditions)
                    payload.update(stable=len(stable), stable_passing=stable_ok, unstable=len(unstable),
                                   unstable_failing=unstable_caught)
                    passed = stable_ok == len(stable) and unstable_caught == len(unstable)
                case 'perturbed':
                    spec = job.family_spec(verbose)
                    variant = spec.variant
                    if not isinstance(variant, PerturbedPolynomial):
                        raise click.UsageError("perturbed needs --family perturbed-polynomial")
                    height = _height(job, spec, params)
                    report = perturbed_family_check(variant.p, variant.y, height, spec.user_sign,
                                                    verbose=verbose, console=console)
                    payload.update(report_dict(report))
        payload['passed'] = passed
        path = _emit(job, 'check', payload, verbose=verbose)
        if not passed:
            raise BoundViolation(f"{check} check failed")
        _show_success_message("Check passed!", [f"Check: {check}", "Sampled, not a proof" if check in
                                                ('copiado', 'shift-ratio', 'blaschke') else ""], path)
    except Exception as e:
        _fail(e)


def main():
    """Entry point for the CLI."""
    cli()


if __name__ == '__main__':
    main()
