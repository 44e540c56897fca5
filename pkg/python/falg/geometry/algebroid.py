"""falg — Algebroid ABC: bracket, anchor and connection calculus over a frame.

Subclasses describe an algebroid by its frame alone: the anchor of a frame
element, the bracket of two frame elements and the covariant derivative of
a frame element. Everything else (Leibniz bracket of arbitrary sections,
covariant derivative, module Lie derivative, the compatibility tensor S,
the Jacobiator, the induced E-connection on tensor fields and its
curvature) is written once here.

A Section is a finite map from frame keys to Scalars; a Cotensor is the
list of n Sections (nabla s)_i, the dx^i-part of an element of T*M (x) A.
"""

import abc
import logging
from dataclasses import dataclass
from typing import Callable, Dict, Hashable, Iterable, Mapping, Optional, Sequence, Tuple

from errors import FlavorMismatchError, TensorTypeError
from algebra.scalars import Chart, Scalar, as_scalar
from algebra.tensors import TensorField, apply_vector, render_terms
from geometry.anchored_bundle import mixed_endomorphism, tensor_e_derivative

logger = logging.getLogger("falg.algebroid")


class Section:
    """Scalar-weighted combination of frame elements of one algebroid."""

    __slots__ = ("algebroid", "_terms")

    def __init__(self, algebroid: "Algebroid", terms: Optional[Mapping[Hashable, Scalar]] = None):
        self.algebroid = algebroid
        self._terms: Dict[Hashable, Scalar] = {k: v for k, v in (terms or {}).items() if not v.is_zero}

    @property
    def chart(self) -> Chart:
        return self.algebroid.chart

    def items(self):
        return sorted(self._terms.items(), key=lambda item: self.algebroid.key_order(item[0]))

    def keys(self):
        return [k for k, _ in self.items()]

    def coefficient(self, key) -> Scalar:
        return self._terms.get(key, self.chart.zero)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def _same_space(self, other: "Section"):
        if not self.algebroid.same_space(other.algebroid):
            raise FlavorMismatchError(
                f"sections of different algebroids: {self.algebroid.describe()} vs {other.algebroid.describe()}")

    def _new(self, terms) -> "Section":
        return self.algebroid.section(terms)

    def __add__(self, other: "Section") -> "Section":
        self._same_space(other)
        terms = dict(self._terms)
        for k, v in other._terms.items():
            terms[k] = terms[k] + v if k in terms else v
        return self._new(terms)

    def __neg__(self) -> "Section":
        return self._new({k: -v for k, v in self._terms.items()})

    def __sub__(self, other: "Section") -> "Section":
        return self + (-other)

    def scale(self, f) -> "Section":
        f = as_scalar(self.chart, f)
        if f.is_zero:
            return self._new({})
        return self._new({k: f * v for k, v in self._terms.items()})

    def __rmul__(self, f) -> "Section":
        return self.scale(f)

    def __eq__(self, other):
        if not isinstance(other, Section):
            return NotImplemented
        return (self - other).is_zero

    __hash__ = None

    def render(self) -> str:
        return render_terms((c, self.algebroid.render_key(k)) for k, c in self.items())

    def __repr__(self):
        return f"{type(self).__name__}({self.render()})"


@dataclass(frozen=True, eq=False)
class Cotensor:
    """Element of Gamma(T*M (x) A): components[i] is the dx^i-part."""
    components: Tuple[Section, ...]

    @property
    def chart(self) -> Chart:
        return self.components[0].chart

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.components)

    def __add__(self, other: "Cotensor") -> "Cotensor":
        return Cotensor(tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: "Cotensor") -> "Cotensor":
        return Cotensor(tuple(a - b for a, b in zip(self.components, other.components)))

    def __neg__(self) -> "Cotensor":
        return Cotensor(tuple(-a for a in self.components))

    def scale(self, f) -> "Cotensor":
        return Cotensor(tuple(a.scale(f) for a in self.components))

    def __getitem__(self, i: int) -> Section:
        return self.components[i]

    def __eq__(self, other):
        if not isinstance(other, Cotensor):
            return NotImplemented
        return (self - other).is_zero

    __hash__ = None

    def render(self) -> str:
        coords = self.chart.coordinates
        return render_terms(
            (coeff, f"d{coords[i]}⊗{section.algebroid.render_key(key)}")
            for i, section in enumerate(self.components)
            for key, coeff in section.items()
        )

    def __repr__(self):
        return f"Cotensor({self.render()})"


class Algebroid(abc.ABC):
    """Anchored bracket algebra on a global frame, with a connection."""

    section_class = Section

    def __init__(self, chart: Chart):
        self.chart = chart

    # ── Frame data (subclass responsibility) ─────────────────────────

    @abc.abstractmethod
    def basis_anchor(self, key) -> TensorField:
        """rho of the frame element ``key``."""

    @abc.abstractmethod
    def basis_bracket(self, left, right) -> Section:
        """Bracket of two frame elements."""

    @abc.abstractmethod
    def basis_derivative(self, key) -> Cotensor:
        """nabla of the frame element ``key``."""

    @abc.abstractmethod
    def key_order(self, key):
        """Sort key for frame elements."""

    @abc.abstractmethod
    def render_key(self, key) -> str:
        """Text label of a frame element."""

    def same_space(self, other: "Algebroid") -> bool:
        """Sections of self and other can be combined."""
        return self is other

    def describe(self) -> str:
        return type(self).__name__

    # ── Sections ─────────────────────────────────────────────────────

    def section(self, terms: Optional[Mapping] = None) -> Section:
        return self.section_class(self, terms)

    def zero_section(self) -> Section:
        return self.section({})

    def basis_section(self, key, coeff=1) -> Section:
        return self.section({key: as_scalar(self.chart, coeff)})

    # ── Anchor and bracket ───────────────────────────────────────────

    def anchor(self, section: Section) -> TensorField:
        result = TensorField.zeros(self.chart, 1, 0)
        for key, coeff in section.items():
            result = result + self.basis_anchor(key).scale(coeff)
        return result

    def bracket(self, a: Section, b: Section) -> Section:
        """[f u, g v] = f g [u,v] + f rho(u)(g) v - g rho(v)(f) u."""
        a._same_space(b)
        result: Dict[Hashable, Scalar] = {}

        def accumulate(section: Section, factor: Scalar):
            for key, coeff in section._terms.items():
                value = factor * coeff
                result[key] = result[key] + value if key in result else value

        for u, f in a.items():
            for v, g in b.items():
                accumulate(self.basis_bracket(u, v), f * g)
                rho_u_g = apply_vector(self.basis_anchor(u), g)
                if not rho_u_g.is_zero:
                    accumulate(self.basis_section(v), f * rho_u_g)
                rho_v_f = apply_vector(self.basis_anchor(v), f)
                if not rho_v_f.is_zero:
                    accumulate(self.basis_section(u), -(g * rho_v_f))
        return self.section(result)

    def jacobiator(self, s1: Section, s2: Section, s3: Section) -> Section:
        """[s1,[s2,s3]] + [s2,[s3,s1]] + [s3,[s1,s2]]."""
        return (self.bracket(s1, self.bracket(s2, s3))
                + self.bracket(s2, self.bracket(s3, s1))
                + self.bracket(s3, self.bracket(s1, s2)))

    # ── Connection ───────────────────────────────────────────────────

    def covariant_derivative(self, section: Section) -> Cotensor:
        """nabla(f u) = df (x) u + f nabla u."""
        n = self.chart.dimension
        components = [dict() for _ in range(n)]
        for key, f in section.items():
            derivative = self.basis_derivative(key)
            for i in range(n):
                terms = components[i]
                df = f.diff(i)
                if not df.is_zero:
                    terms[key] = terms[key] + df if key in terms else df
                for k, c in derivative[i]._terms.items():
                    value = f * c
                    terms[k] = terms[k] + value if k in terms else value
        return Cotensor(tuple(self.section(terms) for terms in components))

    def nabla_along(self, w: TensorField, section: Section) -> Section:
        """nabla_w s = w^i (nabla s)_i."""
        derivative = self.covariant_derivative(section)
        result = self.zero_section()
        for i, wi in enumerate(w.components):
            if not wi.is_zero:
                result = result + derivative[i].scale(wi)
        return result

    def module_lie_derivative(self, s: Section, cotensor: Cotensor) -> Cotensor:
        """L_s on T*M (x) A: (L_s C)_j = d_j(v^i) C_i + [s, C_j], v = rho(s)."""
        v = self.anchor(s)
        n = self.chart.dimension
        out = []
        for j in range(n):
            component = self.bracket(s, cotensor[j])
            for i in range(n):
                dv = v.components[i].diff(j)
                if not dv.is_zero:
                    component = component + cotensor[i].scale(dv)
            out.append(component)
        return Cotensor(tuple(out))

    def nabla_along_mixed(self, mixed: Cotensor, target: Section) -> Cotensor:
        """nabla_{rho(mixed)} target: component j is nabla_{rho(mixed_j)} target."""
        return Cotensor(tuple(self.nabla_along(self.anchor(m), target) for m in mixed.components))

    def bracket_derivative(self, s: Section, s2: Section) -> Cotensor:
        """L_s(nabla s') - L_s'(nabla s) - nabla_{rho(nabla s)} s' + nabla_{rho(nabla s')} s."""
        ds = self.covariant_derivative(s)
        ds2 = self.covariant_derivative(s2)
        return (self.module_lie_derivative(s, ds2)
                - self.module_lie_derivative(s2, ds)
                - self.nabla_along_mixed(ds, s2)
                + self.nabla_along_mixed(ds2, s))

    def compatibility_tensor(self, s: Section, s2: Section) -> Cotensor:
        """S(s, s') as the defect of nabla[s, s'] against its Leibniz-type expansion."""
        return self.bracket_derivative(s, s2) - self.covariant_derivative(self.bracket(s, s2))

    # ── Induced E-connection on tensor fields ────────────────────────

    def mixed_matrix(self, section: Section):
        derivative = self.covariant_derivative(section)
        return mixed_endomorphism(self.chart, [self.anchor(c) for c in derivative.components])

    def e_derivative(self, section: Section, t: TensorField,
                     connections: Optional[Sequence["Algebroid"]] = None) -> TensorField:
        """Combined E-connection: slot k uses connections[k] (default: self everywhere)."""
        self.chart.check_same(t.chart)
        views = list(connections) if connections is not None else [self] * t.slots
        anchor = self.anchor(section)
        if not t.slots:
            if views:
                raise TensorTypeError(f"{len(views)} connections for a scalar")
            return TensorField.scalar(self.chart, apply_vector(anchor, t.value()))
        cache = {}
        mixed = []
        for view in views:
            if id(view) not in cache:
                cache[id(view)] = view.mixed_matrix(section)
            mixed.append(cache[id(view)])
        return tensor_e_derivative(anchor, mixed, t)

    def e_curvature(self, s: Section, s2: Section, t: TensorField,
                    connections: Optional[Sequence["Algebroid"]] = None) -> TensorField:
        """E-nabla_s E-nabla_s' t - E-nabla_s' E-nabla_s t - E-nabla_[s,s'] t."""
        first = self.e_derivative(s, self.e_derivative(s2, t, connections), connections)
        second = self.e_derivative(s2, self.e_derivative(s, t, connections), connections)
        return first - second - self.e_derivative(self.bracket(s, s2), t, connections)


def sweep_pairs(keys: Iterable, degree: Callable, depth: int):
    """Unordered pairs (u, v) of frame keys, u before v, with degree(u) + degree(v) <= depth."""
    keys = list(keys)
    for i, u in enumerate(keys):
        for v in keys[i + 1:]:
            if degree(u) + degree(v) <= depth:
                yield u, v
