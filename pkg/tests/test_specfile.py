import pytest

from critical_line_zeros.errors import InvalidParameterError, SpecFileError
from critical_line_zeros.families import GClass, PerturbedPolynomial, Sign, WengTruncated, Zeta2
from critical_line_zeros.polynomial import Polynomial
from critical_line_zeros.specfile import load_spec_file, spec_from_options


def write(tmp_path, text):
    path = tmp_path / 'family.spec'
    path.write_text(text, encoding='utf-8')
    return path


def test_load_with_comments_and_decimal_comma(tmp_path):
    spec = load_spec_file(write(tmp_path, "# zeta2 at the threshold\nfamily = zeta2\nalpha=0,3466  # ln 2 / 2\n\nsign=minus\n"))
    assert spec.variant == Zeta2(0.3466, 1.0)
    assert spec.sign is Sign.MINUS


def test_polynomial_keeps_its_commas(tmp_path):
    spec = load_spec_file(write(tmp_path, "family=perturbed-polynomial\npoly=2,-1\ny=2,5\n"))
    assert isinstance(spec.variant, PerturbedPolynomial)
    assert spec.variant.p == Polynomial((-1.0, 2.0))
    assert spec.variant.y == 2.5


def test_repeated_entries(tmp_path):
    spec = load_spec_file(write(tmp_path, "family=g-class\nlambda=1\nentry=1,0.5,3.14\nentry=0.5,1,6.28\n"))
    assert isinstance(spec.variant, GClass)
    assert len(spec.variant.entries) == 2


def test_family_alias(tmp_path):
    spec = load_spec_file(write(tmp_path, "family=weng_truncated\nT=2\n"))
    assert spec.variant == WengTruncated(2.0)


@pytest.mark.parametrize("text", [
    "family=zeta2\nalpha=1\ncolour=red\n",
    "alpha=1\n",
    "family=zeta2\nalpha=1\nalpha=2\n",
    "family=epstein\nform=1,2,1\nn=2\n",
    "family=zeta2\nalpha 1\n",
    "family=nope\n",
])
def test_malformed_files(tmp_path, text):
    with pytest.raises(SpecFileError):
        load_spec_file(write(tmp_path, text))


def test_missing_file(tmp_path):
    with pytest.raises(SpecFileError):
        load_spec_file(tmp_path / 'absent.spec')


def test_options_need_family_parameters():
    with pytest.raises(InvalidParameterError):
        spec_from_options({'family': 'zeta2'})
    with pytest.raises(InvalidParameterError):
        spec_from_options({'family': 'zeta2', 'alpha': '1', 'sign': 'both'})
    assert spec_from_options({'family': 'zeta2', 'alpha': 1.0, 'sign': 'PLUS'}).sign is Sign.PLUS
