import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reference_ops import D, X, b10_8i, l4_8i, lam, mu, x
from weylcomm.errors import NonIntegerExponent, OperatorSyntaxError
from weylcomm.exactalg import GaussRat, MPoly, RatFunc
from weylcomm.oreops import DiffOp
from weylcomm.parse import parse_operator, parse_polynomial, parse_scalar, read_operator_file


def test_operator_examples():
    assert parse_operator("D^2 + x^3") == D**2 + X**3
    assert parse_operator("(D^2 + x^4 + 1)^2 + 8*i*D + 16*x^2") == l4_8i()
    assert parse_operator("D*x - x*D") == DiffOp.scalar(1)


def test_products_are_ordered():
    assert parse_operator("D*x") == X * D + 1
    assert parse_operator("x*D") == X * D
    assert parse_operator("-D^2") == -(D**2)
    assert parse_operator("2^3*D") == D.left_scale(8)


def test_division_by_functions_of_x():
    assert parse_operator("D/2") == D.left_scale(GaussRat(1) / 2)
    assert parse_operator("D/x") == D.left_scale(RatFunc(MPoly.const(1), x))
    with pytest.raises(OperatorSyntaxError):
        parse_operator("x/D")
    with pytest.raises(OperatorSyntaxError):
        parse_operator("x/0")


def test_polynomials():
    assert parse_polynomial("mu^2 + lam*(-lam^4 - 56*lam^2 + 288*lam - 1296)") == (
        mu**2 + lam * (-(lam**4) - 56 * lam**2 + 288 * lam - 1296)
    )
    assert parse_polynomial("3/4*lam") == lam.scale(GaussRat(3) / 4)
    assert parse_scalar("-5/11") == GaussRat(-5) / 11
    assert parse_scalar("2*i") == GaussRat(0, 2)
    with pytest.raises(OperatorSyntaxError):
        parse_polynomial("D + 1")
    with pytest.raises(OperatorSyntaxError):
        parse_polynomial("lam/mu")
    with pytest.raises(OperatorSyntaxError):
        parse_scalar("lam")


@pytest.mark.parametrize(
    "text, line, column",
    [("D^q", 1, 3), ("x +\n D^-1", 2, 4), ("(D + 1", 1, 7), ("D $ x", 1, 3), ("", 1, 1), ("D + * x", 1, 5)],
)
def test_syntax_errors_carry_positions(text, line, column):
    with pytest.raises(OperatorSyntaxError) as info:
        parse_operator(text)
    assert (info.value.line, info.value.column) == (line, column)
    assert f"line {line}" in str(info.value)


def test_bad_exponent_is_specific():
    with pytest.raises(NonIntegerExponent):
        parse_operator("D^(1/2)")


def test_comments_and_files(tmp_path):
    path = tmp_path / "l4.op"
    path.write_text("# the order-4 operator\n(D^2 + x^4 + 1)^2  # square\n + 8*i*D + 16*x^2\n", encoding="utf-8")
    assert read_operator_file(path) == l4_8i()


def test_round_trip_of_large_operator():
    b = b10_8i()
    assert parse_operator(str(b)) == b


coeff = st.builds(
    lambda cs: sum((MPoly.const(GaussRat(a, b) / d) * x**k for k, (a, b, d) in enumerate(cs)), MPoly.zero()),
    st.lists(st.tuples(st.integers(-9, 9), st.integers(-3, 3), st.integers(1, 5)), max_size=4),
)


@settings(max_examples=100, deadline=None)
@given(st.lists(coeff, max_size=5))
def test_print_parse_round_trip(cs):
    op = DiffOp(cs)
    assert parse_operator(str(op)) == op


@settings(max_examples=40, deadline=None)
@given(st.lists(coeff, min_size=1, max_size=3), st.lists(coeff, min_size=1, max_size=2))
def test_round_trip_with_rational_coefficients(num, den):
    d = den[0] * x**3 + x**2 + 1
    op = DiffOp([RatFunc(c, d) for c in num])
    assert parse_operator(str(op)) == op
