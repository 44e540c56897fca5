"""falg — Exact scalar fields over a coordinate chart.

A Scalar is an element of the rational function field QQ(x1..xn, g1..gk) in
the chart coordinates x and the declared transcendental generators g. Each
generator carries one derivative rule per coordinate, so the field is closed
under the partial derivatives d/dx_i.

Arithmetic and cancellation are done by sympy's FracField (grlex order,
coordinates before generators, each in declaration order); the canonical
representative used for equality, hashing and rendering additionally makes
the denominator monic.

Usage:
    chart = Chart.create(["x", "y"], {"chi": {"x": "2*x^-3*chi"}})
    s = parse_scalar("x^2*chi", chart)
    differentiate(s, "x").render()     # -> "2*x^-2*chi + 2*x*chi" style text
"""

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Tuple, Union

from sympy.polys.domains import QQ
from sympy.polys.fields import FracField
from sympy.polys.orderings import grlex

from errors import (
    ChartMismatchError,
    ScalarDivisionError,
    SpecError,
    UnknownSymbolError,
)
from algebra.expr_parser import IDENTIFIER, ExpressionParser


# ── Chart ────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class Chart:
    """Coordinates plus transcendental generators with derivative rules.

    ``rules[g][i]`` is d(generator g)/d(coordinate i) as a field element.
    Build charts with :meth:`Chart.create`.
    """
    coordinates: Tuple[str, ...]
    generators: Tuple[str, ...]
    field: FracField
    rules: Tuple[Tuple[object, ...], ...]

    @classmethod
    def create(cls, coordinates: Sequence[str],
               generators: Optional[Mapping[str, Mapping[str, str]]] = None) -> "Chart":
        coordinates = tuple(coordinates)
        generators = dict(generators or {})
        names = coordinates + tuple(generators)
        if not coordinates:
            raise SpecError("chart.coordinates", "at least one coordinate is required")
        for name in names:
            if not isinstance(name, str) or not IDENTIFIER.match(name):
                raise SpecError("chart", f"invalid symbol name {name!r}")
        if len(set(names)) != len(names):
            raise SpecError("chart", f"symbol names must be distinct: {', '.join(names)}")

        field = FracField(names, QQ, grlex)
        parser = ExpressionParser(field, dict(zip(names, field.gens)))
        rules = []
        for gen_name, derivatives in generators.items():
            unknown = set(derivatives) - set(coordinates)
            if unknown:
                raise SpecError(f"chart.generators.{gen_name}",
                                f"derivative rule for unknown coordinate(s) {sorted(unknown)}")
            rules.append(tuple(
                parser.parse(str(derivatives[c])) if c in derivatives else field.zero
                for c in coordinates
            ))
        chart = cls(coordinates, tuple(generators), field, tuple(rules))
        chart._check_integrable()
        return chart

    @property
    def dimension(self) -> int:
        return len(self.coordinates)

    @property
    def symbols(self) -> Tuple[str, ...]:
        return self.coordinates + self.generators

    @functools.cached_property
    def zero(self) -> "Scalar":
        return Scalar(self, self.field.zero)

    @functools.cached_property
    def one(self) -> "Scalar":
        return Scalar(self, self.field.one)

    def coordinate_index(self, coord: Union[str, int]) -> int:
        if isinstance(coord, int):
            if 0 <= coord < self.dimension:
                return coord
            raise UnknownSymbolError(str(coord), self.coordinates)
        try:
            return self.coordinates.index(coord)
        except ValueError:
            raise UnknownSymbolError(coord, self.coordinates) from None

    def symbol(self, name: str) -> "Scalar":
        try:
            index = self.symbols.index(name)
        except ValueError:
            raise UnknownSymbolError(name, self.symbols) from None
        return Scalar(self, self.field.gens[index])

    def constant(self, value: Union[int, Fraction]) -> "Scalar":
        value = Fraction(value)
        return Scalar(self, self.field.ground_new(QQ(value.numerator, value.denominator)))

    def _partial(self, element, index: int):
        """Total d/dx_index of a raw field element, generator rules included."""
        gens = self.field.gens
        result = element.diff(gens[index])
        for gen, rule in zip(gens[self.dimension:], self.rules):
            partial = element.diff(gen)
            if partial and rule[index]:
                result += partial * rule[index]
        return result

    def _check_integrable(self):
        for g, gen_name in enumerate(self.generators):
            for i in range(self.dimension):
                for j in range(i + 1, self.dimension):
                    lhs = self._partial(self.rules[g][j], i)
                    rhs = self._partial(self.rules[g][i], j)
                    if lhs != rhs:
                        raise SpecError(
                            f"chart.generators.{gen_name}",
                            f"derivative rules are not integrable in "
                            f"({self.coordinates[i]}, {self.coordinates[j]})")

    def check_same(self, other: "Chart"):
        if self is not other and self != other:
            raise ChartMismatchError(
                f"chart mismatch: ({', '.join(self.symbols)}) vs ({', '.join(other.symbols)})")


# ── Scalar ───────────────────────────────────────────────────────────

ScalarLike = Union["Scalar", int, Fraction]


@dataclass(frozen=True, eq=False)
class Scalar:
    chart: Chart
    value: object  # FracElement of chart.field

    # canonical representative: (numerator, monic denominator)
    @functools.cached_property
    def canonical(self):
        numer, denom = self.value.numer, self.value.denom
        lc = denom.LC
        if lc != 1:
            numer = numer.quo_ground(lc)
            denom = denom.quo_ground(lc)
        return numer, denom

    @property
    def numerator(self):
        return self.canonical[0]

    @property
    def denominator(self):
        return self.canonical[1]

    @property
    def is_zero(self) -> bool:
        return not self.value.numer

    @property
    def is_constant(self) -> bool:
        return self.value.denom == 1 and self.value.numer.is_ground

    def _coerce(self, other: ScalarLike) -> "Scalar":
        if isinstance(other, Scalar):
            self.chart.check_same(other.chart)
            return other
        if isinstance(other, (int, Fraction)):
            return self.chart.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Scalar(self.chart, self.value + other.value)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Scalar(self.chart, self.value - other.value)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Scalar(self.chart, other.value - self.value)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Scalar(self.chart, self.value * other.value)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero:
            raise ScalarDivisionError("division by the zero scalar")
        return Scalar(self.chart, self.value / other.value)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __neg__(self):
        return Scalar(self.chart, -self.value)

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent >= 0:
            return Scalar(self.chart, self.value ** exponent)
        if self.is_zero:
            raise ScalarDivisionError("negative power of the zero scalar")
        return Scalar(self.chart, self.chart.field.one / self.value ** (-exponent))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.chart.constant(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        if self.chart is not other.chart and self.chart != other.chart:
            return False
        return self.canonical == other.canonical

    def __hash__(self):
        numer, denom = self.canonical
        return hash((self.chart.symbols, numer, denom))

    def __bool__(self):
        return not self.is_zero

    def diff(self, coord: Union[str, int]) -> "Scalar":
        index = self.chart.coordinate_index(coord)
        return Scalar(self.chart, self.chart._partial(self.value, index))

    def render(self) -> str:
        from algebra.render import render_scalar
        return render_scalar(self)

    def is_compound(self) -> bool:
        """True when the rendered form is a sum and needs parentheses as a factor."""
        from algebra.render import is_compound
        return is_compound(self)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"Scalar({self.render()!r})"


# ── Module-level operations ──────────────────────────────────────────

def parse_scalar(text: str, chart: Chart) -> Scalar:
    parser = ExpressionParser(chart.field, dict(zip(chart.symbols, chart.field.gens)))
    return Scalar(chart, parser.parse(text))


def arith(op: str, a: Scalar, b: Union[Scalar, int]) -> Scalar:
    """Binary scalar arithmetic by name: add, sub, mul, div or int_pow."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "int_pow":
        return a ** int(b)
    raise ValueError(f"unknown arithmetic operation {op!r}")


def differentiate(s: Scalar, coord: str) -> Scalar:
    return s.diff(coord)


def is_zero(s: Scalar) -> bool:
    return s.is_zero


def as_scalar(chart: Chart, value: Union[Scalar, int, Fraction, str]) -> Scalar:
    if isinstance(value, Scalar):
        chart.check_same(value.chart)
        return value
    if isinstance(value, str):
        return parse_scalar(value, chart)
    return chart.constant(value)
