from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from errors import ChartMismatchError, ScalarDivisionError, SpecError, UnknownSymbolError
from algebra.scalars import Chart, arith, differentiate, is_zero, parse_scalar

XY = Chart.create(["x", "y"])
CHI = Chart.create(["x", "y"], {"chi": {"x": "2*x^-3*chi", "y": "0"}})


# ── Strategies ───────────────────────────────────────────────────────

_monomial = st.tuples(st.integers(-3, 3), st.integers(0, 2), st.integers(0, 2), st.integers(0, 1))


def _polynomial_text(terms, with_chi):
    parts = []
    for c, a, b, k in terms:
        factors = [str(c), f"x^{a}", f"y^{b}"]
        if with_chi and k:
            factors.append("chi")
        parts.append("*".join(factors))
    return " + ".join(f"({p})" for p in parts) or "0"


def scalars(chart, with_chi=False):
    polys = st.lists(_monomial, min_size=1, max_size=3)

    @st.composite
    def build(draw):
        numer = parse_scalar(_polynomial_text(draw(polys), with_chi), chart)
        denom = parse_scalar(_polynomial_text(draw(polys), with_chi), chart)
        if denom.is_zero:
            return numer
        return numer / denom

    return build()


# ── Parsing and canonical form ───────────────────────────────────────

def test_cancellation(xy):
    assert is_zero(parse_scalar("x - x", xy))


def test_rational_sum_normalizes(xy):
    assert parse_scalar("1/(1-x) + 1/(1+x)", xy) == parse_scalar("2/(1 - x^2)", xy)


def test_generator_is_a_symbol(chi_chart):
    chi = parse_scalar("chi", chi_chart)
    assert chi == chi_chart.symbol("chi")
    assert not chi.is_constant


def test_canonical_denominator_is_monic(xy):
    s = parse_scalar("2/(1 - x^2)", xy)
    numer, denom = s.canonical
    assert denom.LC == 1
    assert s == parse_scalar("-2/(x^2 - 1)", xy)
    assert hash(s) == hash(parse_scalar("-2/(x^2 - 1)", xy))


def test_arith_examples(xy):
    x = parse_scalar("x", xy)
    assert is_zero(arith("add", x, parse_scalar("-x", xy)))
    assert arith("mul", parse_scalar("1/x", xy), x) == 1
    assert arith("div", parse_scalar("x^2 - y^2", xy), parse_scalar("x - y", xy)) == parse_scalar("x + y", xy)
    assert arith("int_pow", x, -2) == parse_scalar("x^-2", xy)
    assert arith("sub", x, 1) == parse_scalar("x - 1", xy)


def test_arith_division_by_zero(xy):
    with pytest.raises(ScalarDivisionError):
        arith("div", parse_scalar("x", xy), xy.zero)
    with pytest.raises(ScalarDivisionError):
        arith("int_pow", xy.zero, -1)


def test_is_zero_examples(xy):
    assert is_zero(xy.zero)
    assert is_zero(parse_scalar("(x+y)^2 - x^2 - 2*x*y - y^2", xy))
    assert not is_zero(parse_scalar("x - y", xy))


def test_fraction_constants(xy):
    assert xy.constant(Fraction(1, 2)) == parse_scalar("1/2", xy)
    assert xy.constant(Fraction(1, 2)).render() == "1/2"


def test_mixing_charts_fails(xy, xyz):
    with pytest.raises(ChartMismatchError):
        parse_scalar("x", xy) + parse_scalar("x", xyz)


# ── Differentiation ──────────────────────────────────────────────────

def test_partial_derivative(xy):
    assert differentiate(parse_scalar("x^2*y", xy), "x") == parse_scalar("2*x*y", xy)
    assert differentiate(parse_scalar("1/(1 + x^2)", xy), "x") == parse_scalar("-2*x/(1 + x^2)^2", xy)


def test_generator_rule(chi_chart):
    d_chi = differentiate(parse_scalar("chi", chi_chart), "x")
    assert d_chi == parse_scalar("2*x^-3*chi", chi_chart)
    assert differentiate(parse_scalar("chi", chi_chart), "y").is_zero


def test_iterated_generator_rule_renders_laurent(chi_chart):
    first = differentiate(parse_scalar("chi", chi_chart), "x")
    second = differentiate(first, "x")
    third = differentiate(second, "x")
    assert first.render() == "2*x^-3*chi"
    assert second.render() == "(4*x^-6 - 6*x^-4)*chi"
    assert third.render() == "(8*x^-9 - 36*x^-7 + 24*x^-5)*chi"


def test_unknown_coordinate(xy):
    with pytest.raises(UnknownSymbolError):
        differentiate(parse_scalar("x", xy), "z")


# ── Chart validation ─────────────────────────────────────────────────

@pytest.mark.parametrize("coordinates, generators", [
    (["x", "x"], {}),
    (["x", "2y"], {}),
    (["x"], {"x": {}}),
    ([], {}),
    (["x"], {"g": {"y": "1"}}),
])
def test_invalid_charts(coordinates, generators):
    with pytest.raises(SpecError):
        Chart.create(coordinates, generators)


def test_rule_may_only_mention_chart_symbols():
    with pytest.raises(UnknownSymbolError):
        Chart.create(["x"], {"g": {"x": "h"}})


def test_non_integrable_rules_are_rejected():
    # d/dx(d g/dy) = 1 but d/dy(d g/dx) = 0
    with pytest.raises(SpecError):
        Chart.create(["x", "y"], {"g": {"x": "0", "y": "x"}})


# ── Rendering ────────────────────────────────────────────────────────

@pytest.mark.parametrize("text, rendered", [
    ("0", "0"),
    ("-3", "-3"),
    ("x^2*y - x", "-x + x^2*y"),
    ("z*y", "y*z"),
    ("2*x^-3", "2*x^-3"),
    ("x/2", "1/2*x"),
    ("1/(1 + x)", "1/(1 + x)"),
])
def test_render(xyz, text, rendered):
    assert parse_scalar(text, xyz).render() == rendered


def test_render_groups_by_generator(chi_chart):
    s = parse_scalar("x*chi + chi + x^2", chi_chart)
    assert s.render() == "x^2 + (1 + x)*chi"


# ── Properties ───────────────────────────────────────────────────────

@settings(max_examples=40, deadline=None)
@given(scalars(XY), scalars(XY), scalars(XY))
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a - a == 0
    if not a.is_zero:
        assert a * (1 / a) == 1


@settings(max_examples=30, deadline=None)
@given(scalars(CHI, with_chi=True), scalars(CHI, with_chi=True))
def test_leibniz_rule(f, g):
    for coord in ("x", "y"):
        assert differentiate(f * g, coord) == differentiate(f, coord) * g + f * differentiate(g, coord)


@settings(max_examples=30, deadline=None)
@given(scalars(CHI, with_chi=True))
def test_mixed_partials_commute(f):
    assert differentiate(differentiate(f, "x"), "y") == differentiate(differentiate(f, "y"), "x")


@settings(max_examples=40, deadline=None)
@given(scalars(CHI, with_chi=True))
def test_render_round_trip(f):
    assert parse_scalar(f.render(), CHI) == f
    assert parse_scalar(parse_scalar(f.render(), CHI).render(), CHI).render() == f.render()
