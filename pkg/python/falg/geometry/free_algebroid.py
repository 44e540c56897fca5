"""falg — The depth-truncated free (almost-)Lie algebroid of an anchored bundle.

Frame keys are canonical bracket monomials (see algebra.brackets) of degree
at most the truncation depth D. The bracket of two frame monomials is the
canonicalized tree; the anchor is extended as a bracket morphism; the
connection of E is extended to all monomials through

    nabla[s, s'] = L_s(nabla s') - L_s'(nabla s) - nabla_{rho(nabla s)} s' + nabla_{rho(nabla s')} s

which makes the compatibility tensor S vanish identically. Brackets whose
degree would exceed D raise DepthOverflowError; nothing is dropped silently.

Anchors and covariant derivatives of monomials are memoized; the memo tables
are guarded by a lock so one algebroid can serve several worker threads.
"""

import itertools
import logging
import threading
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from errors import DepthOverflowError, FlavorMismatchError, IdentityViolation
from algebra import brackets
from algebra.brackets import LIE, Tree
from algebra.scalars import as_scalar
from algebra.tensors import TensorField, commutator, generic_rank
from geometry.algebroid import Algebroid, Cotensor, Section, sweep_pairs
from geometry.anchored_bundle import AnchoredBundle, Connection
from geometry.checks import CheckReport

logger = logging.getLogger("falg.free")


class FreeSection(Section):
    """Section of FR_{<=D}(E) or FR^alm_{<=D}(E) in the monomial frame."""

    __slots__ = ()

    @property
    def bundle(self) -> AnchoredBundle:
        return self.algebroid.bundle

    @property
    def flavor(self) -> str:
        return self.algebroid.flavor

    @property
    def depth_bound(self) -> int:
        return self.algebroid.depth

    @property
    def degree(self) -> int:
        """Filtration degree: the largest monomial degree present (0 for the zero section)."""
        return max((brackets.degree(t) for t in self._terms), default=0)

    def graded_part(self, d: int) -> "FreeSection":
        return self._new({t: c for t, c in self._terms.items() if brackets.degree(t) == d})


class _SharedAnchors:
    """Anchor memo shared by every connection view of one free algebroid."""

    def __init__(self):
        self.lock = threading.Lock()
        self.table: Dict[Tree, TensorField] = {}


class FreeAlgebroid(Algebroid):
    section_class = FreeSection

    def __init__(self, bundle: AnchoredBundle, connection: Optional[Connection] = None,
                 flavor: str = LIE, depth: int = 3, _anchors: Optional[_SharedAnchors] = None):
        super().__init__(bundle.chart)
        brackets.check_flavor(flavor)
        if depth < 1:
            raise ValueError(f"truncation depth must be positive, got {depth}")
        if connection is not None and connection.bundle is not bundle and connection.bundle != bundle:
            raise FlavorMismatchError("connection belongs to a different bundle")
        self.bundle = bundle
        self.connection = connection or Connection.flat(bundle)
        self.flavor = flavor
        self.depth = depth
        self._anchors = _anchors or _SharedAnchors()
        self._nabla_lock = threading.Lock()
        self._nabla: Dict[Tree, Cotensor] = {}

    def with_connection(self, connection: Connection) -> "FreeAlgebroid":
        """Same sections and anchors, different extended connection."""
        return FreeAlgebroid(self.bundle, connection, self.flavor, self.depth, _anchors=self._anchors)

    def same_space(self, other: Algebroid) -> bool:
        return (isinstance(other, FreeAlgebroid)
                and (other.bundle is self.bundle or other.bundle == self.bundle)
                and other.flavor == self.flavor
                and other.depth == self.depth)

    def describe(self) -> str:
        return f"FR[{self.flavor}] rank {self.bundle.rank} depth {self.depth}"

    @property
    def rank(self) -> int:
        return self.bundle.rank

    # ── Frame ────────────────────────────────────────────────────────

    def key_order(self, key):
        return brackets.tree_key(key)

    def render_key(self, key) -> str:
        return brackets.render_monomial(key)

    def monomials(self, depth: Optional[int] = None) -> List[Tree]:
        return list(brackets.iter_basis(self.rank, depth or self.depth, self.flavor))

    def generator(self, a: int, coeff=1) -> FreeSection:
        """The frame section e_a (1-based)."""
        brackets.check_generators(a, self.rank)
        return self.basis_section(a, coeff)

    def monomial(self, tree: Tree, coeff=1) -> FreeSection:
        """Any bracket tree, canonicalized for this flavor."""
        brackets.check_generators(tree, self.rank)
        if brackets.degree(tree) > self.depth:
            raise DepthOverflowError(tree, None, self.depth, brackets.render_monomial(tree))
        coeff = as_scalar(self.chart, coeff)
        combination = brackets.canonicalize(tree, self.flavor, self.rank)
        return self.section({t: coeff * c for t, c in combination.items()})

    def parse(self, text: str, coeff=1) -> FreeSection:
        return self.monomial(brackets.parse_monomial(text), coeff)

    def from_esection(self, s) -> FreeSection:
        return self.section({a + 1: c for a, c in enumerate(s.coefficients)})

    def basis_anchor(self, key: Tree) -> TensorField:
        table = self._anchors.table
        with self._anchors.lock:
            cached = table.get(key)
        if cached is not None:
            return cached
        if brackets.is_leaf(key):
            value = self.bundle.anchor_vector(key - 1)
        else:
            value = commutator(self.basis_anchor(key[0]), self.basis_anchor(key[1]))
        with self._anchors.lock:
            return table.setdefault(key, value)

    def basis_bracket(self, left: Tree, right: Tree) -> FreeSection:
        if brackets.degree(left) + brackets.degree(right) > self.depth:
            rendered = f"[{brackets.render_monomial(left)},{brackets.render_monomial(right)}]"
            raise DepthOverflowError(left, right, self.depth, rendered)
        combination = brackets.canonicalize((left, right), self.flavor)
        return self.section({t: as_scalar(self.chart, c) for t, c in combination.items()})

    def basis_derivative(self, key: Tree) -> Cotensor:
        with self._nabla_lock:
            cached = self._nabla.get(key)
        if cached is not None:
            return cached
        if brackets.is_leaf(key):
            value = self._generator_derivative(key - 1)
        else:
            value = self.bracket_derivative(self.basis_section(key[0]), self.basis_section(key[1]))
            logger.debug("extended nabla to %s", brackets.render_monomial(key))
        with self._nabla_lock:
            return self._nabla.setdefault(key, value)

    def _generator_derivative(self, a: int) -> Cotensor:
        gamma = self.connection.christoffel
        return Cotensor(tuple(
            self.section({b + 1: gamma[i, a, b] for b in range(self.rank)})
            for i in range(self.chart.dimension)
        ))

    # ── Named operations ─────────────────────────────────────────────

    def anchor_of_section(self, xi: FreeSection) -> TensorField:
        return self.anchor(xi)

    def extend_connection(self, tree: Tree) -> Cotensor:
        """nabla of a canonical monomial."""
        brackets.check_generators(tree, self.rank)
        if not brackets.is_canonical(tree, self.flavor):
            raise ValueError(f"{brackets.render_monomial(tree)} is not canonical for flavor {self.flavor}")
        if brackets.degree(tree) > self.depth:
            raise DepthOverflowError(tree, None, self.depth, brackets.render_monomial(tree))
        return self.basis_derivative(tree)

    def compatibility_tensor_sections(self, s: FreeSection, s2: FreeSection) -> Cotensor:
        return self.compatibility_tensor(s, s2)

    def jacobiator(self, s1: FreeSection, s2: FreeSection, s3: FreeSection) -> FreeSection:
        value = super().jacobiator(s1, s2, s3)
        if self.flavor == LIE and not value.is_zero:
            raise IdentityViolation(f"Jacobiator does not normalize to zero: {value.render()}")
        return value

    def associated_graded_bracket(self, a: FreeSection, b: FreeSection) -> FreeSection:
        """The bracket with every anchor term dropped (degrees add exactly)."""
        a._same_space(b)
        result = self.zero_section()
        for u, f in a.items():
            for v, g in b.items():
                result = result + self.basis_bracket(u, v).scale(f * g)
        return result

    def fr_representation_apply(self, xi: FreeSection, t: TensorField,
                                connections: Optional[Sequence[Connection]] = None) -> TensorField:
        """Combined FR-connection on t, slot k through the extension of connections[k]."""
        views = None
        if connections is not None:
            views = [self if c is self.connection else self.with_connection(c) for c in connections]
        return self.e_derivative(xi, t, views)

    def anchor_distribution(self, depth: Optional[int] = None) -> Tuple[List[Tuple[Tree, TensorField]], int]:
        """Anchors of all canonical monomials up to depth, and the generic rank of their span."""
        table = [(t, self.basis_anchor(t)) for t in self.monomials(depth)]
        return table, generic_rank([v for _, v in table])

    # ── Sweeps ───────────────────────────────────────────────────────

    def check_cartan(self, depth: Optional[int] = None) -> CheckReport:
        """S(u, v) over canonical monomial pairs with deg u + deg v <= depth."""
        depth = depth or self.depth
        report = CheckReport("S(u,v)")
        for u, v in sweep_pairs(self.monomials(depth), brackets.degree, depth):
            residual = self.compatibility_tensor(self.basis_section(u), self.basis_section(v))
            report.add(f"S({self.render_key(u)},{self.render_key(v)})", residual)
        return report

    def check_jacobiator_covariant_constancy(self, depth: Optional[int] = None) -> CheckReport:
        """nabla Jac(b_i,b_j,b_k) against Jac with nabla moved onto each argument."""
        depth = depth or self.depth
        report = CheckReport("nabla Jac")
        frame = self.monomials(depth // 3) if depth >= 3 else []
        for u, v, w in itertools.combinations_with_replacement(frame, 3):
            su, sv, sw = (self.basis_section(t) for t in (u, v, w))
            lhs = self.covariant_derivative(self.jacobiator(su, sv, sw))
            du, dv, dw = (self.covariant_derivative(s) for s in (su, sv, sw))
            rhs = Cotensor(tuple(
                self.jacobiator(su, sv, dw[i]) + self.jacobiator(sv, sw, du[i]) + self.jacobiator(sw, su, dv[i])
                for i in range(self.chart.dimension)
            ))
            label = f"Jac({self.render_key(u)},{self.render_key(v)},{self.render_key(w)})"
            report.add(label, lhs - rhs)
        return report

    def check_invariance(self, t: TensorField, connections: Optional[Sequence[Connection]] = None,
                         depth: Optional[int] = None) -> CheckReport:
        """FR-connection of t along every canonical monomial up to depth."""
        report = CheckReport("FR-nabla")
        for tree in self.monomials(depth):
            residual = self.fr_representation_apply(self.basis_section(tree), t, connections)
            report.add(f"nabla_{self.render_key(tree)}", residual)
        return report

    def check_representation(self, tensors: Iterable[Tuple[str, TensorField]],
                             depth: Optional[int] = None) -> CheckReport:
        """E-curvature of every tensor on monomial pairs with total degree <= depth."""
        depth = depth or self.depth
        tensors = list(tensors)
        report = CheckReport("E-curvature")
        for u, v in sweep_pairs(self.monomials(depth), brackets.degree, depth):
            su, sv = self.basis_section(u), self.basis_section(v)
            for name, t in tensors:
                residual = self.e_curvature(su, sv, t)
                report.add(f"R({self.render_key(u)},{self.render_key(v)}){name}", residual)
        return report
