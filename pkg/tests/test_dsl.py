import pytest

from bautq import catalog
from bautq.dsl import ParseError, format_model, parse_expression, parse_model, tokenize

from conftest import FIXTURE_FILES

HSPACE = """\
# four odd generators
generator x 3
generator y 3
generator z 5
generator w 7
d z = x*y
d w = x*z
"""


def test_parses_hspace_model():
    assert parse_model(HSPACE).model == catalog.hspace_k5_k8()


def test_odd_reordering_carries_sign():
    mf = parse_model("generator u 3\ngenerator v 3\ngenerator y 5\nd y = v*u\n")
    assert mf.model.d_of("y").format() == "-u*v"


def test_nine_generator_file():
    text = "\n".join(f"generator {n} {d}" for n, d in catalog.NON_UNIVERSAL_GENERATORS) + """
d x = a^2 + a*c
d y = a*b
d z = b*c
d phi = x*b - a*y - a*z
d psi = a*z - c*y
d w = phi*a + x*y + psi*a + c^3 + b^3
"""
    mf = parse_model(text)
    assert len(mf.model.generators) == 9
    assert mf.model == catalog.non_universal_model()
    assert mf.model.d_of("w") == mf.model.poly("phi*a + x*y + psi*a + c^3 + b^3")


def test_rationals_and_zero_differential():
    mf = parse_model("generator v 2\ngenerator y 5\nd y = 1/2*v^3\ngenerator q 4\nd q = 0\n")
    assert mf.model.d_of("y").format() == "1/2*v^3"
    assert not mf.model.d_of("q")


def test_extension_lines():
    mf = parse_model("generator u 3\ngenerator v 4\ngenerator y 6\nd y = u*v\nextend z 2\nd v += u*z\n")
    assert mf.extension.name == "z" and mf.extension.degree == 2
    assert mf.extension.perturbations["v"].format() == "z*u"


@pytest.mark.parametrize("text,fragment,line,column", [
    ("generator x 3\nd z = x*x\n", "unknown generator 'z'", 2, 3),
    ("generator x 3\ngenerator x 5\n", "duplicate generator 'x'", 2, 11),
    ("generator x 3\ngenerator y 7\nd y = x^2*x\n", "'^' applied to odd generator 'x'", 3, 8),
    ("generator a 2\ngenerator y 3\nd y = 1/0*a^2\n", "zero denominator", 3, 9),
    ("generator a 2\ngenerator y 3\nd y = 1/*a^2\n", "expected integer denominator", 3, 9),
    ("generator a 2\ngenerator y 3\nextend z 2\nd y += a^2\n", "lacks the extension generator", 4, 8),
    ("generator a 2\ngenerator y 3\nd y += a^2\n", "requires an 'extend'", 3, 5),
    ("generator a 0\n", "degree must be >= 1", 1, 13),
    ("generator a 2\nd a = a*a +\n", "expected generator name, found end of line", 2, 12),
    ("bogus line\n", "expected 'generator', 'extend', 'd' or '#'", 1, 1),
    ("generator a 2 $\n", "unexpected character '$'", 1, 15),
    ("generator a 2\ngenerator y 3\nd y = a^2\nd y = a^2\n", "duplicate differential", 4, 3),
])
def test_parse_errors_carry_position(text, fragment, line, column):
    with pytest.raises(ParseError) as info:
        parse_model(text)
    err = info.value
    assert fragment in err.message
    assert (err.line, err.column) == (line, column)


def test_tokenize_columns():
    toks = tokenize("d y = u*v")
    assert [(t.kind, t.column) for t in toks] == [("name", 1), ("name", 3), ("op", 5), ("name", 7),
                                                   ("op", 8), ("name", 9), ("end", 10)]


def test_parse_expression_leading_minus():
    alg = catalog.hspace_k5_k8().algebra
    assert parse_expression("-x*y + 2*z", alg).format() == "2*z - x*y"


@pytest.mark.parametrize("path", FIXTURE_FILES, ids=lambda p: p.stem)
def test_round_trip_on_fixtures(path):
    text = path.read_text(encoding="utf-8")
    mf = parse_model(text)
    assert format_model(mf.model, mf.extension) == text
