import pytest

from permder.terms import (
    IdentityParseError, NotMultilinear, format_term, multilinear_monomials, parse_identities,
    parse_identity, parse_presentation,
)


def test_parse_and_format_roundtrip():
    f = parse_identity("(x1*x2)*x3 - x1*(x2*x3) = 0")
    assert str(f) == "(x1*x2)*x3 - x1*(x2*x3) = 0"
    assert parse_identity(str(f)) == f


def test_rhs_and_coefficients():
    f = parse_identity("2 x1*x2 = x2*x1 + x1*x2")
    g = parse_identity("x1*x2 - x2*x1 = 0")
    assert f.body == g.body


def test_dialgebra_ops():
    f = parse_identity("x1-|(x2|-x3) - x1-|(x2-|x3) = 0")
    assert f.ops == {"|-", "-|"}
    assert format_term(next(iter(f.body.keys()))) in {"x1-|(x2|-x3)", "x1-|(x2-|x3)"}


@pytest.mark.parametrize("text", ["x1*x2*x3 = 0", "(x1*x2 = 0", "x1*x1 = 0", "x1 + 1 = 0"])
def test_bad_identities(text):
    with pytest.raises((IdentityParseError, NotMultilinear)):
        parse_identity(text)


def test_parse_error_location():
    with pytest.raises(IdentityParseError) as exc:
        parse_identities("x1*x2 - x2*x1 = 0\n(x1*x2)*x3 - x1*(x2* = 0\n")
    assert exc.value.line == 2 and exc.value.col > 0


def test_presentation_comments():
    p = parse_presentation("# commutative\nx1*x2 - x2*x1 = 0\n", "c")
    assert len(p.identities) == 1 and p.ops == ("*",)


@pytest.mark.parametrize("n, count", [(1, 1), (2, 2), (3, 12), (4, 120)])
def test_monomial_counts(n, count):
    assert len(multilinear_monomials(n)) == count
