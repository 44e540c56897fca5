"""falg — Finite-rank Lie algebroids and anchored morphisms into them.

A FiniteLieAlgebroid is given on a global frame e_1..e_k by its anchor rows,
structure functions C[a, b, c] ([e_a, e_b] = C_ab^c e_c) and Christoffels
gamma[i, a, b]. These are the targets of the universal morphism out of the
free Lie algebroid.
"""

import logging
import threading
from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional, Sequence, Tuple

import numpy as np

from errors import FlavorMismatchError, GeneratorIndexError, IdentityViolation, MorphismError, SpecError
from algebra import brackets
from algebra.brackets import LIE, Tree
from algebra.scalars import Chart, Scalar, parse_scalar
from algebra.tensors import TensorField, commutator
from geometry.algebroid import Algebroid, Cotensor, Section
from geometry.anchored_bundle import (
    AnchoredBundle,
    Connection,
    curvature,
    parse_index_triple,
)
from geometry.checks import CheckReport
from geometry.free_algebroid import FreeAlgebroid, FreeSection

logger = logging.getLogger("falg.lie")


class FiniteLieAlgebroid(Algebroid):

    def __init__(self, bundle: AnchoredBundle, structure: np.ndarray,
                 connection: Optional[Connection] = None, name: str = ""):
        super().__init__(bundle.chart)
        k = bundle.rank
        if structure.shape != (k, k, k):
            raise SpecError("structure", f"structure functions must have shape {(k, k, k)}")
        self.bundle = bundle
        self.structure = structure
        self.connection = connection or Connection.flat(bundle)
        self.name = name

    @classmethod
    def from_json(cls, chart: Chart, doc: Mapping, name: str = "",
                  location: str = "target") -> "FiniteLieAlgebroid":
        """{"rank", "anchor", "structure": {"a,b,c": expr}, "gamma": {"i,a,b": expr}}.

        A structure entry without its antisymmetric partner gets the partner filled in.
        """
        try:
            bundle = AnchoredBundle.from_rows(chart, doc["anchor"])
        except KeyError:
            raise SpecError(location, "missing 'anchor'") from None
        except SpecError as e:
            raise SpecError(f"{location}.{e.location}", str(e).split(": ", 1)[-1]) from None
        k = bundle.rank
        if "rank" in doc and int(doc["rank"]) != k:
            raise SpecError(f"{location}.rank", f"rank {doc['rank']} does not match {k} anchor rows")
        structure = np.full((k, k, k), chart.zero, dtype=object)
        entries = doc.get("structure", {}) or {}
        given = {}
        for key, text in entries.items():
            idx = parse_index_triple(key, (k, k, k), f"{location}.structure")
            given[idx] = parse_scalar(str(text), chart)
        for (a, b, c), value in given.items():
            structure[a, b, c] = value
            if (b, a, c) not in given:
                structure[b, a, c] = -value
        connection = Connection.from_json(bundle, doc.get("gamma", {}), f"{location}.gamma")
        return cls(bundle, structure, connection, name)

    # ── Frame ────────────────────────────────────────────────────────

    @property
    def rank(self) -> int:
        return self.bundle.rank

    def key_order(self, key):
        return key

    def render_key(self, key) -> str:
        return f"e{key}"

    def describe(self) -> str:
        return f"target {self.name or '?'} rank {self.rank}"

    def generator(self, a: int, coeff=1) -> Section:
        if a < 1 or a > self.rank:
            raise GeneratorIndexError(a, self.rank)
        return self.basis_section(a, coeff)

    def section_of(self, values: Sequence) -> Section:
        """Section from a length-k coefficient list."""
        if len(values) != self.rank:
            raise SpecError("images", f"expected {self.rank} coefficients, got {len(values)}")
        return self.section({a + 1: parse_scalar(str(v), self.chart) if not isinstance(v, Scalar) else v
                             for a, v in enumerate(values)})

    def basis_anchor(self, key: int) -> TensorField:
        return self.bundle.anchor_vector(key - 1)

    def basis_bracket(self, left: int, right: int) -> Section:
        return self.section({c + 1: self.structure[left - 1, right - 1, c] for c in range(self.rank)})

    def basis_derivative(self, key: int) -> Cotensor:
        gamma = self.connection.christoffel
        return Cotensor(tuple(
            self.section({b + 1: gamma[i, key - 1, b] for b in range(self.rank)})
            for i in range(self.chart.dimension)
        ))

    def as_anchored_bundle(self) -> Tuple[AnchoredBundle, Connection]:
        """The underlying anchored bundle with connection (for tensor compatibility checks)."""
        return self.bundle, self.connection

    # ── Axioms ───────────────────────────────────────────────────────

    def check_lie_algebroid_axioms(self) -> CheckReport:
        """Antisymmetry of C, anchor morphism, Jacobi; every entry labelled with its indices."""
        report = CheckReport(f"axioms {self.name}".strip())
        k = self.rank
        for a in range(1, k + 1):
            for b in range(a, k + 1):
                residual = self.basis_bracket(a, b) + self.basis_bracket(b, a)
                report.add(f"C(e{a},e{b}) + C(e{b},e{a})", residual)
        for a in range(1, k + 1):
            for b in range(a + 1, k + 1):
                lhs = self.anchor(self.basis_bracket(a, b))
                report.add(f"rho[e{a},e{b}] - [rho e{a},rho e{b}]",
                           lhs - commutator(self.basis_anchor(a), self.basis_anchor(b)))
        for a in range(1, k + 1):
            for b in range(a + 1, k + 1):
                for c in range(b + 1, k + 1):
                    residual = self.jacobiator(*(self.basis_section(x) for x in (a, b, c)))
                    report.add(f"Jac(e{a},e{b},e{c})", residual)
        return report

    # ── Compatibility tensor S ───────────────────────────────────────

    def a_torsion(self) -> np.ndarray:
        """T[a, b, c] = rho_a^i gamma_ib^c - rho_b^i gamma_ia^c - C_ab^c."""
        k, n = self.rank, self.chart.dimension
        rho, gamma = self.bundle.anchor, self.connection.christoffel
        out = np.empty((k, k, k), dtype=object)
        for a, b, c in np.ndindex(k, k, k):
            value = -self.structure[a, b, c]
            for i in range(n):
                value = value + rho[a][i] * gamma[i, b, c] - rho[b][i] * gamma[i, a, c]
            out[a, b, c] = value
        return out

    def _torsion_derivative(self, torsion: np.ndarray) -> np.ndarray:
        """(nabla_j T)[a, b, c] with the induced connection on A* (x) A* (x) A."""
        k, n = self.rank, self.chart.dimension
        gamma = self.connection.christoffel
        out = np.empty((n, k, k, k), dtype=object)
        for j, a, b, c in np.ndindex(n, k, k, k):
            value = torsion[a, b, c].diff(j)
            for d in range(k):
                value = (value + gamma[j, d, c] * torsion[a, b, d]
                         - gamma[j, a, d] * torsion[d, b, c]
                         - gamma[j, b, d] * torsion[a, d, c])
            out[j, a, b, c] = value
        return out

    def compatibility_tensor_curvature(self) -> np.ndarray:
        """S[a, b, j, c] = rho_a^i F_ijb^c - rho_b^i F_ija^c + (nabla_j T)_ab^c."""
        k, n = self.rank, self.chart.dimension
        rho = self.bundle.anchor
        f = curvature(self.connection)
        dt = self._torsion_derivative(self.a_torsion())
        out = np.empty((k, k, n, k), dtype=object)
        for a, b, j, c in np.ndindex(k, k, n, k):
            value = dt[j, a, b, c]
            for i in range(n):
                value = value + rho[a][i] * f[i, j, b, c] - rho[b][i] * f[i, j, a, c]
            out[a, b, j, c] = value
        return out

    def compatibility_tensor_frame(self) -> np.ndarray:
        """S[a, b, j, c] from the sections formula on frame pairs."""
        k, n = self.rank, self.chart.dimension
        out = np.empty((k, k, n, k), dtype=object)
        for a in range(k):
            for b in range(k):
                s = self.compatibility_tensor(self.basis_section(a + 1), self.basis_section(b + 1))
                for j, c in np.ndindex(n, k):
                    out[a, b, j, c] = s[j].coefficient(c + 1)
        return out

    def cotensor_from(self, array: np.ndarray, a: int, b: int) -> Cotensor:
        """The (a, b) slice of an S array as a Cotensor (0-based a, b)."""
        n = self.chart.dimension
        return Cotensor(tuple(
            self.section({c + 1: array[a, b, j, c] for c in range(self.rank)}) for j in range(n)
        ))

    def check_cartan(self) -> CheckReport:
        """S on frame pairs from the curvature formula, plus its agreement with the sections formula."""
        report = CheckReport(f"S {self.name}".strip())
        by_curvature = self.compatibility_tensor_curvature()
        by_sections = self.compatibility_tensor_frame()
        for a in range(self.rank):
            for b in range(a + 1, self.rank):
                formula = self.cotensor_from(by_curvature, a, b)
                report.add(f"S(e{a + 1},e{b + 1})", formula)
                report.add(f"S(e{a + 1},e{b + 1}) curvature - sections",
                           formula - self.cotensor_from(by_sections, a, b))
        return report


# ── Morphisms ────────────────────────────────────────────────────────

@dataclass(frozen=True, eq=False)
class AnchoredMorphism:
    """Frame images phi(e_a) of a connection-preserving anchored-bundle map E -> A."""
    source: AnchoredBundle
    connection: Connection
    target: FiniteLieAlgebroid
    images: Tuple[Section, ...]
    _memo: Dict[Tree, Section] = field(default_factory=dict, init=False, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, init=False, repr=False)

    def __post_init__(self):
        if len(self.images) != self.source.rank:
            raise MorphismError(f"morphism needs {self.source.rank} images, got {len(self.images)}")
        self.source.chart.check_same(self.target.chart)

    def image(self, a: int) -> Section:
        return self.images[a - 1]

    def apply(self, coefficients: Sequence[Scalar]) -> Section:
        """phi of sum_a f^a e_a."""
        result = self.target.zero_section()
        for a, f in enumerate(coefficients):
            if not f.is_zero:
                result = result + self.images[a].scale(f)
        return result

    def validate(self):
        """Raise MorphismError unless phi commutes with anchors and connections."""
        target = self.target
        for a in range(self.source.rank):
            if target.anchor(self.images[a]) != self.source.anchor_vector(a):
                raise MorphismError(
                    f"anchor not preserved on e{a + 1}: rho_A(phi(e{a + 1})) = "
                    f"{target.anchor(self.images[a]).render()}, rho_E(e{a + 1}) = "
                    f"{self.source.anchor_vector(a).render()}")
            derivative = target.covariant_derivative(self.images[a])
            gamma = self.connection.christoffel
            for i in range(self.source.chart.dimension):
                lhs = self.apply([gamma[i, a, b] for b in range(self.source.rank)])
                if lhs != derivative[i]:
                    coord = self.source.chart.coordinates[i]
                    raise MorphismError(
                        f"connection not preserved on e{a + 1} along d{coord}: "
                        f"phi(nabla e{a + 1}) = {lhs.render()}, nabla phi(e{a + 1}) = {derivative[i].render()}")

    def monomial_image(self, tree: Tree) -> Section:
        with self._lock:
            cached = self._memo.get(tree)
        if cached is not None:
            return cached
        if brackets.is_leaf(tree):
            value = self.image(tree)
        else:
            value = self.target.bracket(self.monomial_image(tree[0]), self.monomial_image(tree[1]))
        with self._lock:
            return self._memo.setdefault(tree, value)

    def map_section(self, xi: Section) -> Section:
        result = self.target.zero_section()
        for tree, f in xi.items():
            result = result + self.monomial_image(tree).scale(f)
        return result


def _check_source(phi: AnchoredMorphism, free: FreeAlgebroid):
    if free.flavor != LIE:
        raise FlavorMismatchError("the universal morphism is defined on the lie flavor only")
    if not (free.bundle is phi.source or free.bundle == phi.source):
        raise FlavorMismatchError("section does not belong to the morphism's source bundle")
    same = free.connection is phi.connection or all(
        x == y for x, y in zip(free.connection.christoffel.flat, phi.connection.christoffel.flat))
    if not same:
        raise MorphismError("free algebroid carries a different connection than the morphism's source")


def extend_morphism(phi: AnchoredMorphism, xi: FreeSection) -> Section:
    """phi~([u, v]) = [phi~(u), phi~(v)]_A, with anchor and connection postconditions asserted."""
    free = xi.algebroid
    _check_source(phi, free)
    phi.validate()
    image = phi.map_section(xi)
    target = phi.target

    if target.anchor(image) != free.anchor(xi):
        raise IdentityViolation(
            f"anchor postcondition failed for {xi.render()}: "
            f"{target.anchor(image).render()} vs {free.anchor(xi).render()}")
    mapped = free.covariant_derivative(xi)
    derivative = target.covariant_derivative(image)
    for i in range(free.chart.dimension):
        if phi.map_section(mapped[i]) != derivative[i]:
            raise IdentityViolation(
                f"connection postcondition failed for {xi.render()} along d{free.chart.coordinates[i]}")
    return image


def morphism_from_json(free_bundle: AnchoredBundle, connection: Connection, target: FiniteLieAlgebroid,
                       rows: Sequence[Sequence], location: str = "morphism") -> AnchoredMorphism:
    if len(rows) != free_bundle.rank:
        raise SpecError(f"{location}.images", f"expected {free_bundle.rank} rows, got {len(rows)}")
    images = tuple(target.section_of(row) for row in rows)
    return AnchoredMorphism(free_bundle, connection, target, images)
