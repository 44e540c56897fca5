"""falg — Tensor fields over a chart.

A TensorField of type (r,s) stores its components densely in a numpy object
array of shape (n,)*(r+s), contravariant axes first, then covariant axes;
every entry is a Scalar. Charts are low-dimensional, so the dense grid is
cheap and keeps every operation a plain array manipulation.
"""

import logging
from dataclasses import dataclass
from typing import Iterable, List, Mapping, Sequence, Tuple

import numpy as np
from sympy.polys.matrices import DomainMatrix

from errors import TensorTypeError
from algebra.scalars import Chart, Scalar, as_scalar, parse_scalar

logger = logging.getLogger("falg.tensors")


def _wrap(value) -> np.ndarray:
    """Object array from a numpy result; 0-d operations hand back the bare element."""
    if isinstance(value, np.ndarray):
        return value
    out = np.empty((), dtype=object)
    out[()] = value
    return out


def _map_components(components: np.ndarray, fn) -> np.ndarray:
    out = np.empty(components.shape, dtype=object)
    for idx in np.ndindex(components.shape):
        out[idx] = fn(components[idx])
    return out


def _slot_action(components: np.ndarray, matrix: np.ndarray, axis: int) -> np.ndarray:
    """new[..a..] = sum_c matrix[a, c] * t[..c..] on the given axis."""
    moved = np.tensordot(matrix, components, axes=([1], [axis]))
    return np.moveaxis(moved, 0, axis)


@dataclass(frozen=True, eq=False)
class TensorField:
    chart: Chart
    rank: Tuple[int, int]
    components: np.ndarray

    # ── Constructors ─────────────────────────────────────────────────

    @classmethod
    def zeros(cls, chart: Chart, r: int, s: int) -> "TensorField":
        shape = (chart.dimension,) * (r + s)
        return cls(chart, (r, s), np.full(shape, chart.zero, dtype=object))

    @classmethod
    def scalar(cls, chart: Chart, value) -> "TensorField":
        components = np.empty((), dtype=object)
        components[()] = as_scalar(chart, value)
        return cls(chart, (0, 0), components)

    @classmethod
    def vector(cls, chart: Chart, values: Sequence) -> "TensorField":
        return cls._from_list(chart, (1, 0), values)

    @classmethod
    def one_form(cls, chart: Chart, values: Sequence) -> "TensorField":
        return cls._from_list(chart, (0, 1), values)

    @classmethod
    def _from_list(cls, chart: Chart, rank, values: Sequence) -> "TensorField":
        if len(values) != chart.dimension:
            raise TensorTypeError(
                f"expected {chart.dimension} components, got {len(values)}")
        components = np.empty((chart.dimension,), dtype=object)
        for i, value in enumerate(values):
            components[i] = as_scalar(chart, value)
        return cls(chart, rank, components)

    @classmethod
    def partial(cls, chart: Chart, coord) -> "TensorField":
        """The coordinate vector field d/d(coord)."""
        i = chart.coordinate_index(coord)
        return cls.vector(chart, [1 if j == i else 0 for j in range(chart.dimension)])

    @classmethod
    def differential(cls, chart: Chart, coord) -> "TensorField":
        """The coordinate 1-form d(coord)."""
        i = chart.coordinate_index(coord)
        return cls.one_form(chart, [1 if j == i else 0 for j in range(chart.dimension)])

    @classmethod
    def from_json(cls, chart: Chart, doc: Mapping) -> "TensorField":
        """Parse {"type": [r,s], "components": {"i1,..;j1,..": expr}} (1-based)."""
        r, s = (int(v) for v in doc["type"])
        tensor = cls.zeros(chart, r, s)
        components = tensor.components.copy()
        for key, text in doc.get("components", {}).items():
            idx = _parse_index_key(key, r, s, chart.dimension)
            components[idx] = parse_scalar(str(text), chart)
        return cls(chart, (r, s), components)

    # ── Basic properties ─────────────────────────────────────────────

    @property
    def r(self) -> int:
        return self.rank[0]

    @property
    def s(self) -> int:
        return self.rank[1]

    @property
    def slots(self) -> int:
        return self.r + self.s

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.components.flat)

    def __getitem__(self, idx) -> Scalar:
        return self.components[idx]

    def value(self) -> Scalar:
        """The Scalar of a type (0,0) tensor."""
        if self.slots:
            raise TensorTypeError(f"type {self.rank} tensor is not a scalar")
        return self.components[()]

    def _check_compatible(self, other: "TensorField", same_type: bool = True):
        self.chart.check_same(other.chart)
        if same_type and self.rank != other.rank:
            raise TensorTypeError(f"type mismatch: {self.rank} vs {other.rank}")

    # ── Linear structure ─────────────────────────────────────────────

    def __add__(self, other: "TensorField") -> "TensorField":
        self._check_compatible(other)
        return TensorField(self.chart, self.rank, _wrap(self.components + other.components))

    def __sub__(self, other: "TensorField") -> "TensorField":
        self._check_compatible(other)
        return TensorField(self.chart, self.rank, _wrap(self.components - other.components))

    def __neg__(self) -> "TensorField":
        return TensorField(self.chart, self.rank, _map_components(self.components, lambda c: -c))

    def scale(self, f) -> "TensorField":
        f = as_scalar(self.chart, f)
        return TensorField(self.chart, self.rank, _map_components(self.components, lambda c: c * f))

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorField):
            return NotImplemented
        if self.rank != other.rank:
            return False
        return (self - other).is_zero

    __hash__ = None

    def render(self) -> str:
        return render_tensor(self)

    def __repr__(self):
        return f"TensorField{self.rank}({self.render()})"


def _parse_index_key(key: str, r: int, s: int, n: int) -> tuple:
    if ";" in key:
        upper, lower = key.split(";", 1)
    elif r == 0:
        upper, lower = "", key
    elif s == 0:
        upper, lower = key, ""
    else:
        raise TensorTypeError(f"component key {key!r} needs ';' between upper and lower indices")
    ups = [int(p) for p in upper.split(",") if p.strip()]
    lows = [int(p) for p in lower.split(",") if p.strip()]
    if len(ups) != r or len(lows) != s:
        raise TensorTypeError(f"component key {key!r} does not fit type ({r},{s})")
    idx = ups + lows
    if any(i < 1 or i > n for i in idx):
        raise TensorTypeError(f"component key {key!r} has an index outside 1..{n}")
    return tuple(i - 1 for i in idx)


# ── Graded operations ────────────────────────────────────────────────

def add(t1: TensorField, t2: TensorField) -> TensorField:
    return t1 + t2


def scale(t: TensorField, f) -> TensorField:
    return t.scale(f)


def tensor_product(t1: TensorField, t2: TensorField) -> TensorField:
    t1.chart.check_same(t2.chart)
    outer = _wrap(np.multiply.outer(t1.components, t2.components))
    r1, s1 = t1.rank
    r2, s2 = t2.rank
    # outer axes: [r1 up, s1 down, r2 up, s2 down] -> [r1 up, r2 up, s1 down, s2 down]
    order = (list(range(r1))
             + list(range(r1 + s1, r1 + s1 + r2))
             + list(range(r1, r1 + s1))
             + list(range(r1 + s1 + r2, r1 + s1 + r2 + s2)))
    return TensorField(t1.chart, (r1 + r2, s1 + s2), np.transpose(outer, order))


# ── Vector field calculus ────────────────────────────────────────────

def _require_vector(v: TensorField, what: str = "vector field"):
    if v.rank != (1, 0):
        raise TensorTypeError(f"expected a {what} (type (1,0)), got type {v.rank}")


def apply_vector(v: TensorField, f: Scalar) -> Scalar:
    """v(f) = v^i d_i f."""
    _require_vector(v)
    v.chart.check_same(f.chart)
    total = v.chart.zero
    for i, vi in enumerate(v.components):
        if not vi.is_zero:
            total = total + vi * f.diff(i)
    return total


def derivative_along(v: TensorField, t: TensorField) -> TensorField:
    """Componentwise directional derivative v(t^{..}_{..})."""
    v.chart.check_same(t.chart)
    return TensorField(t.chart, t.rank, _map_components(t.components, lambda c: apply_vector(v, c)))


def jacobian(v: TensorField) -> np.ndarray:
    """J[a, c] = d_c v^a."""
    _require_vector(v)
    n = v.chart.dimension
    out = np.empty((n, n), dtype=object)
    for a in range(n):
        for c in range(n):
            out[a, c] = v.components[a].diff(c)
    return out


def endomorphism_action(t: TensorField, matrix: np.ndarray, slot: int) -> TensorField:
    """Act with an endomorphism of TM on one slot of t.

    For a contravariant slot the vector index is hit by ``matrix``; for a
    covariant slot by its transpose (the dual action, without sign).
    """
    if slot < t.r:
        return TensorField(t.chart, t.rank, _slot_action(t.components, matrix, slot))
    return TensorField(t.chart, t.rank, _slot_action(t.components, matrix.T, slot))


def lie_derivative(v: TensorField, t: TensorField) -> TensorField:
    _require_vector(v)
    v.chart.check_same(t.chart)
    result = derivative_along(v, t)
    if not t.slots:
        return result
    jac = jacobian(v)
    for slot in range(t.slots):
        action = endomorphism_action(t, jac, slot)
        result = result - action if slot < t.r else result + action
    return result


def commutator(v: TensorField, w: TensorField) -> TensorField:
    _require_vector(v)
    _require_vector(w)
    return lie_derivative(v, w)


# ── Insertions and pairings ──────────────────────────────────────────

def insert(v: TensorField, t: TensorField) -> TensorField:
    """Contract v into the first covariant slot of t."""
    _require_vector(v)
    v.chart.check_same(t.chart)
    if t.s < 1:
        raise TensorTypeError(f"cannot insert a vector into type {t.rank}")
    components = _wrap(np.tensordot(v.components, t.components, axes=([0], [t.r])))
    return TensorField(t.chart, (t.r, t.s - 1), components)


def contract(omega: TensorField, v: TensorField) -> Scalar:
    """The pairing omega(v) of a 1-form and a vector field."""
    if omega.rank != (0, 1):
        raise TensorTypeError(f"expected a 1-form, got type {omega.rank}")
    return insert(v, omega).value()


def evaluate(t: TensorField, *vectors: TensorField) -> Scalar:
    """t(v1, ..., vs) for a purely covariant tensor."""
    if t.r or len(vectors) != t.s:
        raise TensorTypeError(f"cannot evaluate type {t.rank} on {len(vectors)} vectors")
    for v in vectors:
        t = insert(v, t)
    return t.value()


def insert_mixed(pairs: Iterable[Tuple[TensorField, TensorField]], omega: TensorField) -> TensorField:
    """sum over pairs (w, v) of (i_v omega) * w, for 1-forms w and omega."""
    result = TensorField.zeros(omega.chart, 0, 1)
    for form, vec in pairs:
        pairing = contract(omega, vec)
        if not pairing.is_zero:
            result = result + form.scale(pairing)
    return result


def generic_rank(vectors: Sequence[TensorField]) -> int:
    """Rank of a family of vector fields over the rational function field."""
    if not vectors:
        return 0
    chart = vectors[0].chart
    domain = chart.field.to_domain()
    rows = []
    for v in vectors:
        _require_vector(v)
        chart.check_same(v.chart)
        rows.append([c.value for c in v.components])
    return DomainMatrix(rows, (len(rows), chart.dimension), domain).rank()


# ── Rendering ────────────────────────────────────────────────────────

def _basis_label(chart: Chart, r: int, idx: tuple) -> str:
    ups = [f"∂{chart.coordinates[i]}" for i in idx[:r]]
    downs = [f"d{chart.coordinates[j]}" for j in idx[r:]]
    return "⊗".join(ups + downs)


def render_terms(terms: Iterable[Tuple[Scalar, str]]) -> str:
    """Join (coefficient, basis label) pairs as ``coef label`` summands."""
    parts: List[str] = []
    for coeff, label in terms:
        if coeff.is_zero:
            continue
        if coeff == 1:
            parts.append(label)
        elif coeff == -1:
            parts.append(f"-{label}")
        elif coeff.is_compound():
            parts.append(f"({coeff.render()}) {label}")
        else:
            parts.append(f"{coeff.render()} {label}")
    if not parts:
        return "0"
    return " + ".join(parts).replace("+ -", "- ")


def render_tensor(t: TensorField) -> str:
    if not t.slots:
        return t.value().render()
    return render_terms(
        (t.components[idx], _basis_label(t.chart, t.r, idx))
        for idx in np.ndindex(t.components.shape)
    )
