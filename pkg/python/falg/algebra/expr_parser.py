"""falg — Expression parser for scalar fields.

Grammar (whitespace insignificant):

    expr     := operand (binop operand)*        precedence climbing, + - below * /
    operand  := '-' operand | power
    power    := primary ['^' exponent]
    exponent := INT | '-' INT | '(' expr ')'    must evaluate to an integer constant
    primary  := INT | NAME | '(' expr ')'

Expressions are evaluated while parsing, straight into elements of a sympy
rational function field, so the result is already in canonical form.
"""

import re
from dataclasses import dataclass
from typing import Dict, List

from errors import ExpressionSyntaxError, ScalarDivisionError, UnknownSymbolError

IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))")

# (precedence, left-associative) for the binary operators
BINARY_OPERATORS = {
    "+": (1, True),
    "-": (1, True),
    "*": (2, True),
    "/": (2, True),
}


@dataclass(frozen=True)
class Token:
    kind: str       # "int" | "name" | "op" | "end"
    value: str
    position: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        match = _TOKEN.match(text, pos)
        if match is None or match.end() == pos:
            raise ExpressionSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        kind = match.lastgroup
        start = match.start(kind)
        tokens.append(Token(kind, match.group(kind), start))
        pos = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class ExpressionParser:
    """Parses expression text into elements of ``field``.

    ``symbols`` maps every admissible identifier to its field generator.
    """

    def __init__(self, field, symbols: Dict[str, object]):
        self._field = field
        self._symbols = symbols

    def parse(self, text: str):
        self._text = text
        self._tokens = tokenize(text)
        self._index = 0
        if self._peek().kind == "end":
            raise ExpressionSyntaxError("empty expression", text, 0)
        value = self._expression(0)
        token = self._peek()
        if token.kind != "end":
            raise ExpressionSyntaxError(f"unexpected {token.value!r}", text, token.position)
        return value

    # ── Token stream ─────────────────────────────────────────────────

    def _peek(self) -> Token:
        return self._tokens[self._index]

    def _advance(self) -> Token:
        token = self._tokens[self._index]
        self._index += 1
        return token

    def _expect(self, value: str) -> Token:
        token = self._advance()
        if token.value != value or token.kind != "op":
            found = token.value or "end of input"
            raise ExpressionSyntaxError(f"expected {value!r}, found {found!r}",
                                        self._text, token.position)
        return token

    # ── Grammar ──────────────────────────────────────────────────────

    def _expression(self, min_prec: int):
        lhs = self._operand()
        while True:
            token = self._peek()
            if token.kind != "op" or token.value not in BINARY_OPERATORS:
                return lhs
            prec, left_assoc = BINARY_OPERATORS[token.value]
            if prec < min_prec:
                return lhs
            self._advance()
            rhs = self._expression(prec + 1 if left_assoc else prec)
            lhs = self._apply(token, lhs, rhs)

    def _apply(self, token: Token, lhs, rhs):
        if token.value == "+":
            return lhs + rhs
        if token.value == "-":
            return lhs - rhs
        if token.value == "*":
            return lhs * rhs
        if not rhs:
            raise ScalarDivisionError(
                f"division by zero at position {token.position} in {self._text!r}")
        return lhs / rhs

    def _operand(self):
        token = self._peek()
        if token.kind == "op" and token.value == "-":
            self._advance()
            return -self._operand()
        return self._power()

    def _power(self):
        base = self._primary()
        token = self._peek()
        if not (token.kind == "op" and token.value == "^"):
            return base
        self._advance()
        exponent = self._exponent()
        following = self._peek()
        if following.kind == "op" and following.value == "^":
            raise ExpressionSyntaxError("chained '^'; use parentheses",
                                        self._text, following.position)
        if exponent < 0:
            if not base:
                raise ScalarDivisionError(
                    f"negative power of zero at position {token.position} in {self._text!r}")
            return self._field.one / base ** (-exponent)
        return base ** exponent

    def _exponent(self) -> int:
        token = self._advance()
        if token.kind == "int":
            return int(token.value)
        if token.kind == "op" and token.value == "-":
            literal = self._advance()
            if literal.kind != "int":
                raise ExpressionSyntaxError("expected integer exponent",
                                            self._text, literal.position)
            return -int(literal.value)
        if token.kind == "op" and token.value == "(":
            value = self._expression(0)
            self._expect(")")
            if value.denom != 1 or not value.numer.is_ground:
                raise ExpressionSyntaxError("exponent must be an integer constant",
                                            self._text, token.position)
            constant = value.numer.LC
            if constant.denominator != 1:
                raise ExpressionSyntaxError("exponent must be an integer constant",
                                            self._text, token.position)
            return int(constant.numerator)
        raise ExpressionSyntaxError("expected integer exponent", self._text, token.position)

    def _primary(self):
        token = self._advance()
        if token.kind == "int":
            return self._field(int(token.value))
        if token.kind == "name":
            try:
                return self._symbols[token.value]
            except KeyError:
                raise UnknownSymbolError(token.value, list(self._symbols)) from None
        if token.kind == "op" and token.value == "(":
            value = self._expression(0)
            self._expect(")")
            return value
        found = token.value or "end of input"
        raise ExpressionSyntaxError(f"unexpected {found!r}", self._text, token.position)
