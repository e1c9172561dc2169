"""CSV/JSON export with a versioned schema line and 12 significant digits."""
from enum import Enum
from fractions import Fraction
from pathlib import Path
import csv
import io
import json
import math

import numpy as np

from .phase import PhaseTrace, trace_phase
from .winding import CountReport, DensityReport
from .zerofind import ZeroRecord, r_of_alpha, translate_kernel

SCHEMA_VERSION = 1
DIGITS = 12
KINDS = ('trace', 'zeros', 'report', 'figure', 'eval', 'check', 'solve')


def schema(kind: str) -> str:
    if kind not in KINDS:
        raise ValueError(f"Unknown export kind {kind!r}")
    return f"clz.{kind}/{SCHEMA_VERSION}"


def fmt(value) -> str:
    """One CSV cell: reals with 12 significant digits, booleans lowercase."""
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.{DIGITS}g}"
    return str(value)


def _plain(value):
    """JSON-ready copy of value with reals rounded to 12 significant digits."""
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return float(f"{value:.{DIGITS}g}") if math.isfinite(value) else None
    if isinstance(value, complex):
        return {'re': _plain(value.real), 'im': _plain(value.imag)}
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return str(value)


def to_csv(kind: str, header: list[str], rows) -> str:
    buffer = io.StringIO()
    buffer.write(f"# schema: {schema(kind)}\n")
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(cell) for cell in row])
    return buffer.getvalue()


def to_json(kind: str, payload: dict) -> str:
    document = {'schema': schema(kind)}
    document.update(_plain(payload))
    return json.dumps(document, indent=2, ensure_ascii=False) + '\n'


def write_output(text: str, path=None, verbose=False, console=None) -> Path | None:
    """Write text to path once, creating parent directories; None leaves it to the caller."""
    if path is None:
        return None
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding='utf-8')
    if verbose and console:
        console.print(f"[dim]→ Wrote {len(text.splitlines())} lines to {path.absolute()}[/]")
    return path


# ---- payloads

TRACE_HEADER = ['tau', 'phi', 'phi_over_pi', 'cell']
ZEROS_HEADER = ['re', 'im', 'multiplicity', 'on_line', 'residual', 'method']


def trace_rows(trace: PhaseTrace, offset: Fraction) -> list[list]:
    cells = trace.cells(offset)
    return [[tau, phi, phi / math.pi, int(cell)] for tau, phi, cell in zip(trace.taus, trace.phis, cells)]


def zero_rows(records) -> list[list]:
    return [[r.location.real, r.location.imag, r.multiplicity, r.on_line, r.residual, r.method]
            for r in records]


def zero_dict(record: ZeroRecord) -> dict:
    return {
        're': record.location.real, 'im': record.location.imag, 'multiplicity': record.multiplicity,
        'on_line': record.on_line, 'residual': record.residual, 'method': record.method,
    }


def report_dict(report: CountReport) -> dict:
    """Every CountReport field plus the contour metadata, in a fixed key order."""
    terms = report.terms
    payload = {
        'family': report.family,
        'mode': report.mode,
        'T': report.T,
        'N': report.N,
        'N0': report.N0,
        'N0_prime': report.N0_prime,
        'L': report.L,
        'B_a': report.B_a,
        'reduced_bound': report.reduced_bound,
        'bound_ok': report.bound_ok,
        'parity_ok': report.parity_ok,
        'all_on_line': report.all_on_line,
        'k': report.k,
        'd_estimate': report.d_estimate,
        'd_lower': report.d_lower,
        'd_stable': report.d_stable,
        'strip_sigma0': report.strip_sigma0,
        'contour': {
            'sigma0': report.sigma0,
            'envelope': report.envelope,
            'height': report.height,
            'bottom_offset': report.bottom_offset,
            'perturbations': report.perturbations,
        },
        'terms': None if terms is None else {
            'u_pm': terms.u_pm, 'n_f_right': terms.n_f_right, 'n_f_a': terms.n_f_a,
            'P_f_right': terms.P_f_right, 'N_h_right': terms.N_h_right, 'P_h_right': terms.P_h_right,
        },
        'violations': report.violations,
        'line_zeros': [zero_dict(r) for r in report.line_zeros],
        'real_zeros': [zero_dict(r) for r in report.real_zeros],
    }
    return payload


def density_dict(density: DensityReport) -> dict:
    return {
        'count_gap': density.count_gap, 'budget': density.budget, 'slack': density.slack,
        'within_budget': density.within_budget, 'N': density.N, 'N0_prime': density.N0_prime,
    }


# ---- figure data

FIGURES = ('r_of_alpha', 'u_of_tau')


def figure_r_of_alpha(start: float = 0.55, stop: float = 10.0, step: float = 0.01) -> list[list[float]]:
    """(α, r(α)) with r(α) the slope of arg ζ*(½ + α + iτ) at τ = 0."""
    count = int(round((stop - start) / step)) + 1
    return [[alpha, r_of_alpha(alpha)] for alpha in start + step * np.arange(count)]


def figure_u_of_tau(alpha: float = 0.6, stop: float = 21.0, step: float = 0.01) -> list[list[float]]:
    """(τ, u(τ)) with u = φ/π − ½ for h = ζ*(s + α), resampled on a uniform grid."""
    trace = trace_phase(translate_kernel(alpha), 0.0, stop)
    grid = np.linspace(0.0, stop, int(round(stop / step)) + 1)
    u = np.interp(grid, trace.taus, trace.phis) / math.pi - 0.5
    return [[tau, value] for tau, value in zip(grid, u)]


def figure_rows(name: str) -> list[list[float]]:
    match name:
        case 'r_of_alpha':
            return figure_r_of_alpha()
        case 'u_of_tau':
            return figure_u_of_tau()
    raise ValueError(f"Unknown figure {name!r}; expected one of {', '.join(FIGURES)}")
