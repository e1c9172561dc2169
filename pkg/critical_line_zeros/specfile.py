"""Family selection from flat key=value spec files and command-line options."""
from pathlib import Path

from .characters import select_character
from .errors import CriticalLineError, InvalidParameterError, SpecFileError
from .families import (
    EisensteinA0,
    EpsteinPartial,
    FamilySpec,
    GClass,
    HPoly,
    LTranslate,
    PerturbedPolynomial,
    QuadraticForm,
    Sign,
    WengTruncated,
    Zeta2,
    ZetaTranslate,
)
from .literals import normalize_decimal_comma, parse_real
from .polynomial import Polynomial, parse_polynomial

FAMILY_NAMES = (
    'zeta2', 'zeta-translate', 'eisenstein-a0', 'h-poly', 'weng',
    'epstein', 'g-class', 'l-translate', 'perturbed-polynomial',
)

# keys accepted per family, on top of 'family', 'sign' and 'conjugated'
FAMILY_KEYS = {
    'zeta2': {'alpha', 'beta'},
    'zeta-translate': {'alpha', 'completed'},
    'eisenstein-a0': {'y'},
    'h-poly': {'y', 'poly'},
    'weng': {'T'},
    'epstein': {'form', 'n'},
    'g-class': {'lambda', 'entry'},
    'l-translate': {'alpha', 'chi', 'poly'},
    'perturbed-polynomial': {'poly', 'y'},
}

_COMMON_KEYS = {'family', 'sign', 'conjugated'}
# comma-separated lists, never read as a decimal comma
_LIST_KEYS = {'poly', 'form'}
_BOOLEANS = {'true': True, 'yes': True, '1': True, 'false': False, 'no': False, '0': False}


def _family_name(raw: str) -> str:
    name = raw.strip().lower().replace('_', '-')
    aliases = {'weng-truncated': 'weng', 'epstein-partial': 'epstein', 'hpoly': 'h-poly'}
    name = aliases.get(name, name)
    if name not in FAMILY_NAMES:
        raise InvalidParameterError(f"Unknown family {raw!r}; expected one of {', '.join(FAMILY_NAMES)}")
    return name


def _required(options: dict, key: str, family: str):
    value = options.get(key)
    if value is None or value == ():
        raise InvalidParameterError(f"Family {family} needs --{key}")
    return value


def _boolean(value) -> bool:
    if isinstance(value, bool):
        return value
    try:
        return _BOOLEANS[str(value).strip().lower()]
    except KeyError:
        raise InvalidParameterError(f"Not a boolean: {value!r}")


def _triple(text) -> tuple[float, float, float]:
    if isinstance(text, tuple):
        return tuple(float(x) for x in text)
    parts = [part for part in str(text).replace(';', ',').split(',') if part.strip()]
    if len(parts) != 3:
        raise InvalidParameterError(f"Expected three comma-separated numbers, got {text!r}")
    return tuple(parse_real(part) for part in parts)


def _polynomial(value, default=None) -> Polynomial:
    if value is None:
        if default is None:
            raise InvalidParameterError("A polynomial is required")
        return default
    if isinstance(value, Polynomial):
        return value
    return parse_polynomial(str(value))


def spec_from_options(options: dict) -> FamilySpec:
    """Turn a mapping of option names (CLI flags or spec-file keys) into a FamilySpec."""
    family = _family_name(_required(options, 'family', 'selection'))
    sign = options.get('sign')
    if sign:
        try:
            sign = Sign(str(sign).strip().lower())
        except ValueError:
            raise InvalidParameterError(f"Sign must be 'plus' or 'minus', got {sign!r}")
    else:
        sign = None
    conjugated = options.get('conjugated')
    conjugated = _boolean(conjugated) if conjugated is not None else None

    match family:
        case 'zeta2':
            beta = options.get('beta')
            variant = Zeta2(parse_real(_required(options, 'alpha', family)),
                            parse_real(beta) if beta is not None else 1.0)
        case 'zeta-translate':
            completed = options.get('completed')
            variant = ZetaTranslate(parse_real(_required(options, 'alpha', family)),
                                    _boolean(completed) if completed is not None else True)
        case 'eisenstein-a0':
            variant = EisensteinA0(parse_real(_required(options, 'y', family)))
        case 'h-poly':
            variant = HPoly(parse_real(_required(options, 'y', family)),
                            _polynomial(_required(options, 'poly', family)))
        case 'weng':
            T = options.get('T')
            variant = WengTruncated(parse_real(T) if T is not None else 1.0)
        case 'epstein':
            a, b, c = _triple(_required(options, 'form', family))
            variant = EpsteinPartial(QuadraticForm(a, b, c), int(parse_real(_required(options, 'n', family))))
        case 'g-class':
            entries = options.get('entry') or ()
            if isinstance(entries, str):
                entries = (entries,)
            variant = GClass(parse_real(_required(options, 'lambda', family)),
                             tuple(_triple(entry) for entry in entries))
        case 'l-translate':
            variant = LTranslate(parse_real(_required(options, 'alpha', family)),
                                 select_character(str(_required(options, 'chi', family))),
                                 _polynomial(options.get('poly'), Polynomial((1.0,))))
        case 'perturbed-polynomial':
            variant = PerturbedPolynomial(_polynomial(_required(options, 'poly', family)),
                                          parse_real(_required(options, 'y', family)))
    return FamilySpec(variant, sign, conjugated)


def load_spec_file(path, verbose=False, console=None) -> FamilySpec:
    """Read a family spec file: one key=value per line, '#' starts a comment, 'entry' may repeat."""
    path = Path(path)
    if not path.is_file():
        raise SpecFileError(f"Spec file not found: {path}")
    if verbose and console:
        console.print(f"[dim]→ Reading family spec from: {path.absolute()}[/]")

    options: dict = {}
    for lineno, raw in enumerate(path.read_text(encoding='utf-8').splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        if '=' not in line:
            raise SpecFileError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split('=', 1))
        if not key or not value:
            raise SpecFileError(f"{path}:{lineno}: empty key or value")
        if key == 'entry':
            options.setdefault('entry', []).append(value)
            continue
        if key in options:
            raise SpecFileError(f"{path}:{lineno}: duplicate key {key!r}")
        options[key] = value if key in _LIST_KEYS else normalize_decimal_comma(value)
        if verbose and console:
            console.print(f"[dim]  • {key}: {options[key]}[/]")

    if 'family' not in options:
        raise SpecFileError(f"{path}: missing 'family' key")
    try:
        family = _family_name(options['family'])
        unknown = set(options) - _COMMON_KEYS - FAMILY_KEYS[family]
        if unknown:
            raise SpecFileError(f"{path}: keys not used by {family}: {', '.join(sorted(unknown))}")
        return spec_from_options(options)
    except SpecFileError:
        raise
    except CriticalLineError as e:
        raise SpecFileError(f"{path}: {e}")
