"""CLZ_* settings: tolerance, seed, series budget and output directory, read from the process or a .env file."""
from pathlib import Path
import os

from dotenv import load_dotenv

from .errors import InvalidParameterError

# the .env file sits beside the package directory
PROJECT_ROOT = Path(__file__).parent.parent

DEFAULT_TOLERANCE = 1e-12
DEFAULT_SEED = 20240517
DEFAULT_MAX_TERMS = 400_000


def load_env(verbose=False, console=None):
    """Merge the project .env into the process environment; variables already set are kept."""
    env_path = PROJECT_ROOT / '.env'
    if verbose and console:
        console.print(f"[dim]→ Loading environment from: {env_path.absolute()}[/]")
        if env_path.exists():
            content = env_path.read_text().strip()
            keys = [line.split('=', 1)[0] for line in content.splitlines() if line.startswith('CLZ_')]
            if keys:
                console.print(f"[dim]→ .env file sets: {', '.join(keys)}[/]")
            else:
                console.print("[yellow]→ Warning: .env file has no CLZ_* keys[/]")
        else:
            console.print(f"[dim]→ No .env file at {env_path.absolute()}, using built-in defaults[/]")
    load_dotenv(env_path)


def _read(name: str, default, cast, verbose=False, console=None):
    raw = os.getenv(name)
    if verbose and console:
        console.print(f"[dim]→ {name}: {raw if raw is not None else f'not set (default {default})'}[/]")
    if raw is None or raw.strip() == '':
        return default
    try:
        return cast(raw.strip().replace(',', '.') if cast is float else raw.strip())
    except ValueError:
        if verbose and console:
            console.print(f"[yellow]→ Warning: {name}={raw!r} is not a valid {cast.__name__}[/]")
        raise InvalidParameterError(f"{name} must be a {cast.__name__}, got {raw!r}")


def get_tolerance(verbose=False, console=None) -> float:
    """Get the default absolute tolerance (CLZ_TOLERANCE)."""
    tol = _read('CLZ_TOLERANCE', DEFAULT_TOLERANCE, float, verbose, console)
    if not tol > 0:
        raise InvalidParameterError(f"CLZ_TOLERANCE must be positive, got {tol}")
    return tol


def get_seed(verbose=False, console=None) -> int:
    """Get the seed for quasi-random sampling (CLZ_SEED)."""
    return _read('CLZ_SEED', DEFAULT_SEED, int, verbose, console)


def get_max_terms(verbose=False, console=None) -> int:
    """Get the series/quadrature budget (CLZ_MAX_TERMS)."""
    max_terms = _read('CLZ_MAX_TERMS', DEFAULT_MAX_TERMS, int, verbose, console)
    if max_terms < 1:
        raise InvalidParameterError(f"CLZ_MAX_TERMS must be at least 1, got {max_terms}")
    return max_terms


def get_output_dir(verbose=False, console=None) -> str | None:
    """Directory for JSON/CSV exports (CLZ_OUTPUT_DIR), or None to keep results on the console."""
    output_dir = _read("CLZ_OUTPUT_DIR", None, str, verbose, console)
    return output_dir or None
