"""falg — Anchored bundles with connections over a chart.

Frames are global: a rank-m bundle E has the frame e_1..e_m, the anchor is
the m x n matrix rho[a][i] (rho(e_a) = rho_a^i d_i) and a connection is given
by Christoffel coefficients gamma[i, a, b] with nabla_{d_i} e_a = gamma_{ia}^b e_b.
All indices are 0-based in code and 1-based in spec files.

The E-connection on tensor fields acts as

    E-nabla_s t = L_{rho(s)} t - (mixed endomorphism on contravariant slots)
                               + (its transpose on covariant slots)

with the mixed endomorphism K[j, i] = (rho(nabla_{d_i} s))^j.
"""

import logging
from dataclasses import dataclass
from typing import List, Mapping, Sequence, Tuple

import numpy as np

from errors import SpecError, TensorTypeError
from algebra.scalars import Chart, Scalar, as_scalar, parse_scalar
from algebra.tensors import (
    TensorField,
    apply_vector,
    endomorphism_action,
    lie_derivative,
    render_terms,
)

logger = logging.getLogger("falg.bundle")


def parse_index_triple(key: str, bounds: Tuple[int, int, int], location: str) -> Tuple[int, int, int]:
    """'i,a,b' (1-based) -> 0-based triple, bounds-checked."""
    parts = [p.strip() for p in str(key).split(",")]
    if len(parts) != 3 or not all(p.isdigit() for p in parts):
        raise SpecError(f"{location}[{key!r}]", "expected three comma-separated 1-based indices")
    idx = tuple(int(p) - 1 for p in parts)
    for value, bound in zip(idx, bounds):
        if value < 0 or value >= bound:
            raise SpecError(f"{location}[{key!r}]", f"index {value + 1} outside 1..{bound}")
    return idx


# ── Bundle ───────────────────────────────────────────────────────────

@dataclass(frozen=True)
class AnchoredBundle:
    chart: Chart
    rank: int
    anchor: Tuple[Tuple[Scalar, ...], ...]  # rank rows of chart.dimension entries

    def __post_init__(self):
        if self.rank < 1:
            raise SpecError("rank", "rank must be positive")
        if len(self.anchor) != self.rank or any(len(row) != self.chart.dimension for row in self.anchor):
            raise SpecError("anchor", f"anchor must be {self.rank}x{self.chart.dimension}")

    @classmethod
    def from_rows(cls, chart: Chart, rows: Sequence[Sequence]) -> "AnchoredBundle":
        anchor = tuple(tuple(as_scalar(chart, str(v) if not isinstance(v, Scalar) else v) for v in row)
                       for row in rows)
        return cls(chart, len(anchor), anchor)

    def anchor_vector(self, a: int) -> TensorField:
        """rho(e_a), a 0-based."""
        return TensorField.vector(self.chart, self.anchor[a])

    def frame(self, a: int) -> "ESection":
        return ESection.basis(self, a)


@dataclass(frozen=True, eq=False)
class Connection:
    bundle: AnchoredBundle
    christoffel: np.ndarray  # shape (n, m, m)

    def __post_init__(self):
        shape = (self.bundle.chart.dimension, self.bundle.rank, self.bundle.rank)
        if self.christoffel.shape != shape:
            raise SpecError("gamma", f"christoffel array must have shape {shape}")

    @classmethod
    def flat(cls, bundle: AnchoredBundle) -> "Connection":
        shape = (bundle.chart.dimension, bundle.rank, bundle.rank)
        return cls(bundle, np.full(shape, bundle.chart.zero, dtype=object))

    @classmethod
    def from_json(cls, bundle: AnchoredBundle, gamma: Mapping[str, str],
                  location: str = "gamma") -> "Connection":
        chart = bundle.chart
        shape = (chart.dimension, bundle.rank, bundle.rank)
        christoffel = np.full(shape, chart.zero, dtype=object)
        for key, text in (gamma or {}).items():
            christoffel[parse_index_triple(key, shape, location)] = parse_scalar(str(text), chart)
        return cls(bundle, christoffel)


@dataclass(frozen=True, eq=False)
class ESection:
    bundle: AnchoredBundle
    coefficients: Tuple[Scalar, ...]

    def __post_init__(self):
        if len(self.coefficients) != self.bundle.rank:
            raise TensorTypeError(
                f"section needs {self.bundle.rank} coefficients, got {len(self.coefficients)}")

    @classmethod
    def basis(cls, bundle: AnchoredBundle, a: int) -> "ESection":
        chart = bundle.chart
        return cls(bundle, tuple(chart.one if b == a else chart.zero for b in range(bundle.rank)))

    @classmethod
    def of(cls, bundle: AnchoredBundle, values: Sequence) -> "ESection":
        return cls(bundle, tuple(as_scalar(bundle.chart, v) for v in values))

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.coefficients)

    def __add__(self, other: "ESection") -> "ESection":
        return ESection(self.bundle, tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __sub__(self, other: "ESection") -> "ESection":
        return ESection(self.bundle, tuple(a - b for a, b in zip(self.coefficients, other.coefficients)))

    def scale(self, f) -> "ESection":
        f = as_scalar(self.bundle.chart, f)
        return ESection(self.bundle, tuple(f * c for c in self.coefficients))

    def __eq__(self, other):
        if not isinstance(other, ESection):
            return NotImplemented
        return (self - other).is_zero

    __hash__ = None

    def render(self) -> str:
        return render_terms((c, f"e{a + 1}") for a, c in enumerate(self.coefficients))


# ── Anchor and connection ────────────────────────────────────────────

def anchor_apply(s: ESection) -> TensorField:
    bundle = s.bundle
    result = TensorField.zeros(bundle.chart, 1, 0)
    for a, f in enumerate(s.coefficients):
        if not f.is_zero:
            result = result + bundle.anchor_vector(a).scale(f)
    return result


def covariant_derivative(connection: Connection, v: TensorField, s: ESection) -> ESection:
    """(nabla_v s)^b = v^i (d_i f^b + gamma_{ia}^b f^a)."""
    bundle = connection.bundle
    bundle.chart.check_same(v.chart)
    out = [bundle.chart.zero] * bundle.rank
    for i, vi in enumerate(v.components):
        if vi.is_zero:
            continue
        component = _partial_derivative(connection, s, i)
        out = [o + vi * c for o, c in zip(out, component.coefficients)]
    return ESection(bundle, tuple(out))


def _partial_derivative(connection: Connection, s: ESection, i: int) -> ESection:
    bundle = connection.bundle
    out = []
    for b in range(bundle.rank):
        value = s.coefficients[b].diff(i)
        for a, f in enumerate(s.coefficients):
            gamma = connection.christoffel[i, a, b]
            if not (f.is_zero or gamma.is_zero):
                value = value + gamma * f
        out.append(value)
    return ESection(bundle, tuple(out))


def full_derivative(connection: Connection, s: ESection) -> List[Tuple[str, ESection]]:
    """nabla s as the n pairs (coordinate, nabla_{d_i} s)."""
    chart = connection.bundle.chart
    return [(chart.coordinates[i], _partial_derivative(connection, s, i)) for i in range(chart.dimension)]


def curvature(connection: Connection) -> np.ndarray:
    """F[i, j, a, b] = F_{ij a}^b, antisymmetric in (i, j)."""
    gamma = connection.christoffel
    n, m, _ = gamma.shape
    zero = connection.bundle.chart.zero
    out = np.full((n, n, m, m), zero, dtype=object)
    for i in range(n):
        for j in range(i + 1, n):
            for a in range(m):
                for b in range(m):
                    value = gamma[j, a, b].diff(i) - gamma[i, a, b].diff(j)
                    for c in range(m):
                        value = value + gamma[i, c, b] * gamma[j, a, c] - gamma[j, c, b] * gamma[i, a, c]
                    out[i, j, a, b] = value
                    out[j, i, a, b] = -value
    return out


# ── E-connection on tensor fields ────────────────────────────────────

def mixed_endomorphism(chart: Chart, directional_anchors: Sequence[TensorField]) -> np.ndarray:
    """K[j, i] = (rho(nabla_{d_i} s))^j from the n vector fields rho(nabla_{d_i} s)."""
    n = chart.dimension
    out = np.empty((n, n), dtype=object)
    for i, vector in enumerate(directional_anchors):
        for j in range(n):
            out[j, i] = vector.components[j]
    return out


def tensor_e_derivative(anchor: TensorField, mixed: Sequence[np.ndarray], t: TensorField) -> TensorField:
    """L_anchor t with slot k corrected by mixed[k] (contravariant: minus K, covariant: plus K^T)."""
    if len(mixed) != t.slots:
        raise TensorTypeError(f"{len(mixed)} connections for a tensor with {t.slots} slots")
    result = lie_derivative(anchor, t)
    for slot, matrix in enumerate(mixed):
        action = endomorphism_action(t, matrix, slot)
        result = result - action if slot < t.r else result + action
    return result


def _mixed_for(connection: Connection, s: ESection) -> np.ndarray:
    anchors = [anchor_apply(component) for _, component in full_derivative(connection, s)]
    return mixed_endomorphism(connection.bundle.chart, anchors)


def e_connection_apply(bundle: AnchoredBundle, connection: Connection, s: ESection,
                       t: TensorField) -> TensorField:
    return combined_e_connection(bundle, [connection] * t.slots, s, t)


def combined_e_connection(bundle: AnchoredBundle, connections: Sequence[Connection], s: ESection,
                          t: TensorField) -> TensorField:
    """Slot k differentiated by the E-connection of connections[k]; contravariant slots first."""
    bundle.chart.check_same(t.chart)
    if len(connections) != t.slots:
        raise TensorTypeError(f"{len(connections)} connections for a tensor with {t.slots} slots")
    anchor = anchor_apply(s)
    if not t.slots:
        return TensorField.scalar(t.chart, apply_vector(anchor, t.value()))
    cache = {}
    mixed = []
    for connection in connections:
        if id(connection) not in cache:
            cache[id(connection)] = _mixed_for(connection, s)
        mixed.append(cache[id(connection)])
    return tensor_e_derivative(anchor, mixed, t)


@dataclass(frozen=True)
class CompatibilityResult:
    residuals: Tuple[TensorField, ...]  # one per frame section e_a

    @property
    def compatible(self) -> bool:
        return all(r.is_zero for r in self.residuals)


def check_compatibility(bundle: AnchoredBundle, connections: Sequence[Connection],
                        t: TensorField) -> CompatibilityResult:
    residuals = tuple(
        combined_e_connection(bundle, connections, bundle.frame(a), t) for a in range(bundle.rank)
    )
    result = CompatibilityResult(residuals)
    logger.debug("compatibility of type %s tensor: %s", t.rank, result.compatible)
    return result
