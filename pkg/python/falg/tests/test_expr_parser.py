import pytest

from errors import ExpressionSyntaxError, ScalarDivisionError, UnknownSymbolError
from algebra.expr_parser import tokenize
from algebra.scalars import parse_scalar


def test_tokenize_positions():
    tokens = tokenize("x^-2 + chi")
    assert [(t.kind, t.value) for t in tokens] == [
        ("name", "x"), ("op", "^"), ("op", "-"), ("int", "2"), ("op", "+"), ("name", "chi"), ("end", ""),
    ]
    assert tokens[5].position == 7


def test_precedence_and_associativity(xy):
    assert parse_scalar("1 + 2*3", xy) == 7
    assert parse_scalar("8/4/2", xy) == 1
    assert parse_scalar("2 - 3 - 4", xy) == -5
    assert parse_scalar("(1 + 2)*3", xy) == 9


def test_unary_minus_binds_below_power(xy):
    assert parse_scalar("-x^2", xy) == -(parse_scalar("x", xy) ** 2)
    assert parse_scalar("--x", xy) == parse_scalar("x", xy)


def test_exponent_forms(xy):
    x = parse_scalar("x", xy)
    assert parse_scalar("x^-3", xy) == 1 / x ** 3
    assert parse_scalar("x^(-3)", xy) == 1 / x ** 3
    assert parse_scalar("x^(1+1)", xy) == x * x
    assert parse_scalar("x^0", xy) == 1


def test_rationals_as_integer_quotients(xy):
    assert parse_scalar("1/2 + 1/2", xy) == 1


@pytest.mark.parametrize("text, position", [
    ("x +", 3),
    ("(x + y", 6),
    ("x $ y", 2),
    ("x^y", 2),
    ("x^2^3", 3),
    ("x^(1/2)", 2),
    ("", 0),
])
def test_syntax_errors_report_position(xy, text, position):
    with pytest.raises(ExpressionSyntaxError) as info:
        parse_scalar(text, xy)
    assert info.value.position == position


def test_unknown_symbol(xy):
    with pytest.raises(UnknownSymbolError) as info:
        parse_scalar("x + w", xy)
    assert info.value.name == "w"


@pytest.mark.parametrize("text", ["1/0", "x/(y - y)", "(x - x)^-1"])
def test_division_by_zero(xy, text):
    with pytest.raises(ScalarDivisionError):
        parse_scalar(text, xy)


def test_errors_are_value_errors(xy):
    with pytest.raises(ValueError):
        parse_scalar("x +", xy)
