"""falg — Text rendering of scalars in the expression grammar.

Terms are ordered by ascending total degree (ties: descending exponent
vector). A monomial denominator is folded into negative exponents and the
terms are grouped by their generator part, e.g. ``(4*x^-6 - 6*x^-4)*chi``.
Anything else prints as ``num/(den)``.
"""

from fractions import Fraction
from typing import Dict, List, Sequence, Tuple


def _fraction(coeff) -> Fraction:
    return Fraction(int(coeff.numerator), int(coeff.denominator))


def _format_number(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _order_key(exps: Sequence[int]):
    return (sum(exps), tuple(-e for e in exps))


def _factors(names: Sequence[str], exps: Sequence[int]) -> List[str]:
    out = []
    for name, e in zip(names, exps):
        if e == 1:
            out.append(name)
        elif e != 0:
            out.append(f"{name}^{e}")
    return out


def _term(coeff: Fraction, factors: List[str]) -> str:
    if not factors:
        return _format_number(coeff)
    body = "*".join(factors)
    if coeff == 1:
        return body
    if coeff == -1:
        return "-" + body
    return f"{_format_number(coeff)}*{body}"


def _join(summands: List[str]) -> str:
    return " + ".join(summands).replace("+ -", "- ")


def _summands(chart, terms: Dict[Tuple[int, ...], Fraction]) -> List[str]:
    n = chart.dimension
    groups: Dict[Tuple[int, ...], List[Tuple[Tuple[int, ...], Fraction]]] = {}
    for exps, coeff in terms.items():
        groups.setdefault(exps[n:], []).append((exps[:n], coeff))

    summands = []
    for gen_exps in sorted(groups, key=_order_key):
        items = sorted(groups[gen_exps], key=lambda item: _order_key(item[0]))
        gen_factors = _factors(chart.generators, gen_exps)
        if len(items) == 1:
            coord_exps, coeff = items[0]
            summands.append(_term(coeff, _factors(chart.coordinates, coord_exps) + gen_factors))
        elif not gen_factors:
            summands.extend(_term(c, _factors(chart.coordinates, e)) for e, c in items)
        else:
            inner = _join([_term(c, _factors(chart.coordinates, e)) for e, c in items])
            summands.append(f"({inner})*{'*'.join(gen_factors)}")
    return summands


def _polynomial_terms(poly, shift=None) -> Dict[Tuple[int, ...], Fraction]:
    if shift is None:
        return {tuple(m): _fraction(c) for m, c in poly.items()}
    return {tuple(e - d for e, d in zip(m, shift)): _fraction(c) for m, c in poly.items()}


def _laurent_shift(denom):
    if denom.is_monomial:
        (monom,) = denom.keys()
        return tuple(monom)
    return None


def render_scalar(s) -> str:
    numer, denom = s.canonical
    if not numer:
        return "0"
    shift = _laurent_shift(denom)
    if shift is not None:
        return _join(_summands(s.chart, _polynomial_terms(numer, shift)))
    num = _summands(s.chart, _polynomial_terms(numer))
    den = _join(_summands(s.chart, _polynomial_terms(denom)))
    num_text = _join(num)
    if len(num) > 1:
        num_text = f"({num_text})"
    return f"{num_text}/({den})"


def is_compound(s) -> bool:
    numer, denom = s.canonical
    if not numer:
        return False
    shift = _laurent_shift(denom)
    if shift is None:
        return False
    return len(_summands(s.chart, _polynomial_terms(numer, shift))) > 1
