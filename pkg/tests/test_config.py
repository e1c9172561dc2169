import pytest
from rich.console import Console

from critical_line_zeros.config import (
    DEFAULT_SEED,
    DEFAULT_TOLERANCE,
    get_max_terms,
    get_output_dir,
    get_seed,
    get_tolerance,
    load_env,
)
from critical_line_zeros.errors import InvalidParameterError


def test_defaults():
    assert get_tolerance() == DEFAULT_TOLERANCE
    assert get_seed() == DEFAULT_SEED
    assert get_output_dir() is None


def test_environment_overrides(monkeypatch, tmp_path):
    monkeypatch.setenv('CLZ_TOLERANCE', '1,5e-8')
    monkeypatch.setenv('CLZ_SEED', '42')
    monkeypatch.setenv('CLZ_MAX_TERMS', '1000')
    monkeypatch.setenv('CLZ_OUTPUT_DIR', str(tmp_path))
    assert get_tolerance() == 1.5e-8
    assert get_seed() == 42
    assert get_max_terms() == 1000
    assert get_output_dir() == str(tmp_path)


@pytest.mark.parametrize("key, value, getter", [
    ('CLZ_TOLERANCE', 'abc', get_tolerance),
    ('CLZ_TOLERANCE', '-1', get_tolerance),
    ('CLZ_SEED', '4.5', get_seed),
    ('CLZ_MAX_TERMS', '0', get_max_terms),
])
def test_invalid_values(monkeypatch, key, value, getter):
    monkeypatch.setenv(key, value)
    with pytest.raises(InvalidParameterError):
        getter()


def test_verbose_output_names_the_keys(monkeypatch):
    monkeypatch.setenv('CLZ_SEED', '7')
    console = Console(record=True, width=120)
    load_env(verbose=True, console=console)
    assert get_seed(verbose=True, console=console) == 7
    text = console.export_text()
    assert 'Loading environment' in text
    assert 'CLZ_SEED: 7' in text
