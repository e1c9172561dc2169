"""Parsing of numeric literals from the command line and family spec files."""
import re

from .errors import InvalidParameterError

_DECIMAL_COMMA = re.compile(r'^([+-]?\d+),(\d+)$')
_BARE_UNIT = re.compile(r'(^|[+-])j')


def normalize_decimal_comma(text: str) -> str:
    """Rewrite a French-style decimal such as '2,61117' as '2.61117'.

    Anything that is not a single number with one decimal comma is returned unchanged.
    """
    text = text.strip()
    match = _DECIMAL_COMMA.match(text)
    if match:
        return f"{match.group(1)}.{match.group(2)}"
    return text


def parse_real(text) -> float:
    """Parse a real literal, accepting decimal commas."""
    if isinstance(text, (int, float)):
        return float(text)
    try:
        return float(normalize_decimal_comma(str(text)))
    except ValueError:
        raise InvalidParameterError(f"Not a real number: {text!r}")


def parse_complex(text) -> complex:
    """Parse '0.7+2i', '-3i', 'i' or '2' into a complex number."""
    if isinstance(text, (int, float, complex)):
        return complex(text)
    raw = str(text).strip().replace(' ', '').replace('I', 'i').replace('i', 'j')
    raw = _BARE_UNIT.sub(r'\g<1>1j', raw)
    if not raw:
        raise InvalidParameterError("Empty complex literal")
    try:
        return complex(raw)
    except ValueError:
        raise InvalidParameterError(f"Malformed complex literal: {text!r}")
