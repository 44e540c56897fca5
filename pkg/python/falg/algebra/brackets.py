"""falg — Bracket monomials of the free anticommutative and free Lie algebras.

A monomial is a full binary tree: a leaf is a generator index (int, 1-based),
an internal node is a pair ``(left, right)``. Two flavors:

    almost  antisymmetry is the only relation; canonical trees have the
            smaller child on the left at every node (order: degree first,
            then left subtree, then right subtree).
    lie     Jacobi holds as well; canonical trees are standard bracketings
            of Lyndon words, and normalization goes through the free
            associative algebra.
"""

import functools
import re
from typing import Dict, Iterator, List, Optional, Tuple, Union

from errors import ExpressionSyntaxError, FalgError, GeneratorIndexError

Tree = Union[int, tuple]
Word = Tuple[int, ...]

ALMOST = "almost"
LIE = "lie"
FLAVORS = (ALMOST, LIE)


# ── Tree basics ──────────────────────────────────────────────────────

def is_leaf(t: Tree) -> bool:
    return isinstance(t, int)


@functools.lru_cache(maxsize=None)
def degree(t: Tree) -> int:
    if is_leaf(t):
        return 1
    return degree(t[0]) + degree(t[1])


@functools.lru_cache(maxsize=None)
def tree_key(t: Tree) -> tuple:
    """Total order on trees: degree-major, then left, then right subtree."""
    if is_leaf(t):
        return (1, t)
    return (degree(t), tree_key(t[0]), tree_key(t[1]))


def word(t: Tree) -> Word:
    """The leaf labels read left to right."""
    if is_leaf(t):
        return (t,)
    return word(t[0]) + word(t[1])


def check_generators(t: Tree, m: Optional[int]):
    if m is None:
        return
    for i in word(t):
        if i < 1 or i > m:
            raise GeneratorIndexError(i, m)


def render_monomial(t: Tree) -> str:
    if is_leaf(t):
        return f"e{t}"
    return f"[{render_monomial(t[0])},{render_monomial(t[1])}]"


_MONOMIAL_TOKEN = re.compile(r"e(\d+)|([\[\],])")


def parse_monomial(text: str) -> Tree:
    """Parse the ``[e1,[e2,e3]]`` syntax."""
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        match = _MONOMIAL_TOKEN.match(text, pos)
        if match is None:
            raise ExpressionSyntaxError("expected 'e<n>', '[', ',' or ']'", text, pos)
        tokens.append((match.group(1) or match.group(2), match.start()))
        pos = match.end()

    def parse_at(i: int) -> Tuple[Tree, int]:
        if i >= len(tokens):
            raise ExpressionSyntaxError("unexpected end of monomial", text, len(text))
        tok, where = tokens[i]
        if tok.isdigit():
            return int(tok), i + 1
        if tok != "[":
            raise ExpressionSyntaxError(f"unexpected {tok!r}", text, where)
        left, i = parse_at(i + 1)
        i = _expect(i, ",")
        right, i = parse_at(i)
        i = _expect(i, "]")
        return (left, right), i

    def _expect(i: int, tok: str) -> int:
        if i >= len(tokens) or tokens[i][0] != tok:
            where = tokens[i][1] if i < len(tokens) else len(text)
            raise ExpressionSyntaxError(f"expected {tok!r}", text, where)
        return i + 1

    tree, end = parse_at(0)
    if end != len(tokens):
        raise ExpressionSyntaxError("trailing input after monomial", text, tokens[end][1])
    return tree


# ── Signed combinations ──────────────────────────────────────────────

class SignedCombination:
    """Finite integer combination of canonical monomials (no zero entries)."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Dict[Tree, int]] = None):
        self._terms = {t: c for t, c in (terms or {}).items() if c}

    @classmethod
    def of(cls, t: Tree, coeff: int = 1) -> "SignedCombination":
        return cls({t: coeff})

    def items(self):
        return sorted(self._terms.items(), key=lambda item: tree_key(item[0]))

    def monomials(self) -> List[Tree]:
        return [t for t, _ in self.items()]

    def coefficient(self, t: Tree) -> int:
        return self._terms.get(t, 0)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: "SignedCombination") -> "SignedCombination":
        terms = dict(self._terms)
        for t, c in other._terms.items():
            terms[t] = terms.get(t, 0) + c
        return SignedCombination(terms)

    def __neg__(self) -> "SignedCombination":
        return SignedCombination({t: -c for t, c in self._terms.items()})

    def __sub__(self, other: "SignedCombination") -> "SignedCombination":
        return self + (-other)

    def __mul__(self, k: int) -> "SignedCombination":
        return SignedCombination({t: k * c for t, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, SignedCombination):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None

    def render(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for t, c in self.items():
            body = render_monomial(t)
            parts.append(body if c == 1 else f"-{body}" if c == -1 else f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"SignedCombination({self.render()})"


# ── Almost flavor ────────────────────────────────────────────────────

@functools.lru_cache(maxsize=None)
def _canonical_almost(t: Tree) -> Optional[Tuple[int, Tree]]:
    if is_leaf(t):
        return 1, t
    left = _canonical_almost(t[0])
    right = _canonical_almost(t[1])
    if left is None or right is None:
        return None
    (sign_l, l), (sign_r, r) = left, right
    kl, kr = tree_key(l), tree_key(r)
    if kl == kr:
        return None
    if kl < kr:
        return sign_l * sign_r, (l, r)
    return -sign_l * sign_r, (r, l)


def canonicalize_almost(t: Tree, m: Optional[int] = None) -> SignedCombination:
    check_generators(t, m)
    result = _canonical_almost(t)
    if result is None:
        return SignedCombination()
    sign, tree = result
    return SignedCombination.of(tree, sign)


# ── Lie flavor ───────────────────────────────────────────────────────

def is_lyndon(w: Word) -> bool:
    return len(w) > 0 and all(w < w[i:] for i in range(1, len(w)))


def lyndon_words(m: int, d: int) -> List[Word]:
    """Lyndon words of length d over 1..m in lexicographic order (Duval)."""
    out = []
    w = [-1]
    while w:
        w[-1] += 1
        if len(w) == d:
            out.append(tuple(i + 1 for i in w))
        period = len(w)
        while len(w) < d:
            w.append(w[-period])
        while w and w[-1] == m - 1:
            w.pop()
    return out


@functools.lru_cache(maxsize=None)
def standard_bracketing(w: Word) -> Tree:
    """Split off the longest proper Lyndon suffix, recursively."""
    if len(w) == 1:
        return w[0]
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return (standard_bracketing(w[:i]), standard_bracketing(w[i:]))
    raise ValueError(f"{w} is not a Lyndon word")


@functools.lru_cache(maxsize=None)
def _expand(t: Tree) -> Tuple[Tuple[Word, int], ...]:
    if is_leaf(t):
        return (((t,), 1),)
    left = _expand(t[0])
    right = _expand(t[1])
    terms: Dict[Word, int] = {}
    for wl, cl in left:
        for wr, cr in right:
            terms[wl + wr] = terms.get(wl + wr, 0) + cl * cr
            terms[wr + wl] = terms.get(wr + wl, 0) - cl * cr
    return tuple((w, c) for w, c in sorted(terms.items()) if c)


def expand_associative(t: Tree) -> Dict[Word, int]:
    """Image of a bracket monomial in the free associative algebra, [a,b] = ab - ba."""
    return dict(_expand(t))


@functools.lru_cache(maxsize=None)
def _normalize_lie(t: Tree) -> Tuple[Tuple[Tree, int], ...]:
    remainder = expand_associative(t)
    basis: Dict[Tree, int] = {}
    while remainder:
        # the smallest word of a Lie polynomial is Lyndon, and it leads b(w) with coefficient 1
        w = min(remainder)
        c = remainder[w]
        b = standard_bracketing(w)
        basis[b] = basis.get(b, 0) + c
        for u, cu in expand_associative(b).items():
            value = remainder.get(u, 0) - c * cu
            if value:
                remainder[u] = value
            else:
                remainder.pop(u, None)
    return tuple(basis.items())


def normalize_lie(t: Tree, m: Optional[int] = None) -> SignedCombination:
    check_generators(t, m)
    return SignedCombination(dict(_normalize_lie(t)))


# ── Flavor dispatch ──────────────────────────────────────────────────

def check_flavor(flavor: str):
    if flavor not in FLAVORS:
        raise FalgError(f"unknown flavor {flavor!r} (expected one of {', '.join(FLAVORS)})")


def canonicalize(t: Tree, flavor: str, m: Optional[int] = None) -> SignedCombination:
    check_flavor(flavor)
    if flavor == ALMOST:
        return canonicalize_almost(t, m)
    return normalize_lie(t, m)


def is_canonical(t: Tree, flavor: str) -> bool:
    check_flavor(flavor)
    if flavor == ALMOST:
        return _canonical_almost(t) == (1, t)
    w = word(t)
    return is_lyndon(w) and standard_bracketing(w) == t


@functools.lru_cache(maxsize=None)
def _basis(m: int, d: int, flavor: str) -> Tuple[Tree, ...]:
    if d == 1:
        return tuple(range(1, m + 1))
    if flavor == LIE:
        return tuple(standard_bracketing(w) for w in lyndon_words(m, d))
    trees = []
    for i in range(1, d // 2 + 1):
        for left in _basis(m, i, flavor):
            for right in _basis(m, d - i, flavor):
                if tree_key(left) < tree_key(right):
                    trees.append((left, right))
    return tuple(sorted(trees, key=tree_key))


def enumerate_basis(m: int, d: int, flavor: str) -> List[Tree]:
    """Canonical degree-d monomials: tree order for almost, Lyndon-word order for lie."""
    check_flavor(flavor)
    if m < 1 or d < 1:
        raise ValueError(f"need m >= 1 and d >= 1, got m={m}, d={d}")
    return list(_basis(m, d, flavor))


def graded_dimension(m: int, d: int, flavor: str) -> int:
    return len(enumerate_basis(m, d, flavor))


def iter_basis(m: int, depth: int, flavor: str) -> Iterator[Tree]:
    """All canonical monomials of degree 1..depth, degree by degree."""
    for d in range(1, depth + 1):
        yield from enumerate_basis(m, d, flavor)
