import pytest
from hypothesis import given, settings, strategies as st

from errors import DepthOverflowError, FlavorMismatchError, GeneratorIndexError
from algebra.brackets import ALMOST, LIE
from algebra.scalars import parse_scalar
from algebra.tensors import TensorField, apply_vector, commutator
from geometry.free_algebroid import FreeAlgebroid


@pytest.fixture(scope="module")
def chi_free(chi_spec):
    return FreeAlgebroid(chi_spec.bundle, chi_spec.default_connection, LIE, 4)


@pytest.fixture(scope="module")
def euclid_free(euclid_spec):
    return FreeAlgebroid(euclid_spec.bundle, euclid_spec.default_connection, LIE, 3)


@pytest.fixture(scope="module")
def noncartan_free(noncartan_spec):
    return FreeAlgebroid(noncartan_spec.bundle, noncartan_spec.default_connection, LIE, 3)


# ── Anchors ──────────────────────────────────────────────────────────

@pytest.mark.parametrize("text, rendered", [
    ("e2", "chi ∂y"),
    ("[e1,e2]", "2*x^-3*chi ∂y"),
    ("[e1,[e1,e2]]", "(4*x^-6 - 6*x^-4)*chi ∂y"),
    ("[e1,[e1,[e1,e2]]]", "(8*x^-9 - 36*x^-7 + 24*x^-5)*chi ∂y"),
])
def test_chi_anchors_gain_inverse_powers(chi_free, text, rendered):
    assert chi_free.anchor(chi_free.parse(text)).render() == rendered


def test_chi_anchors_match_repeated_differentiation(chi_free):
    chi = chi_free.chart.symbol("chi")
    coefficient = chi
    for text in ("e2", "[e1,e2]", "[e1,[e1,e2]]", "[e1,[e1,[e1,e2]]]"):
        anchor = chi_free.anchor(chi_free.parse(text))
        assert anchor == TensorField.vector(chi_free.chart, [0, coefficient])
        coefficient = coefficient.diff("x")


def test_euclidean_anchors(euclid_free):
    chart = euclid_free.chart
    assert euclid_free.anchor_of_section(euclid_free.generator(2, "z")).render() == "-y*z ∂x + x*z ∂y"
    assert euclid_free.anchor(euclid_free.parse("[e1,e2]")) == TensorField.partial(chart, "y")
    assert euclid_free.anchor(euclid_free.parse("[e2,e3]")).render() == "z ∂y - y ∂z"


def test_anchor_distribution(chi_free, euclid_free):
    table, rank = chi_free.anchor_distribution(3)
    assert [chi_free.render_key(t) for t, _ in table] == ["e1", "e2", "[e1,e2]", "[e1,[e1,e2]]", "[[e1,e2],e2]"]
    assert rank == 2
    assert table[-1][1].is_zero
    assert euclid_free.anchor_distribution()[1] == 3


# ── Bracket ──────────────────────────────────────────────────────────

def test_bracket_of_generators(chi_free):
    e1, e2 = chi_free.generator(1), chi_free.generator(2)
    assert chi_free.bracket(e2, e1) == -chi_free.parse("[e1,e2]")
    assert chi_free.bracket(e1, e1).is_zero


def test_leibniz_rule(chi_free):
    e1, e2 = chi_free.generator(1), chi_free.generator(2)
    e12 = chi_free.parse("[e1,e2]")
    assert chi_free.bracket(e1, e2.scale("x")) == e12.scale("x") + e2
    assert chi_free.bracket(e1.scale("y"), e2) == e12.scale("y") - e1.scale("chi")
    assert chi_free.bracket(e1, e12).render() == "[e1,[e1,e2]]"


_low_monomials = st.sampled_from(["e1", "e2", "[e1,e2]"])
_functions = st.sampled_from(["1/(1 + x^2)", "x*y", "chi", "y^2 - x"])


@settings(max_examples=20, deadline=None)
@given(left=_low_monomials, right=_low_monomials, text=_functions)
def test_leibniz_rule_for_sampled_functions(chi_free, left, right, text):
    a, b = chi_free.parse(left), chi_free.parse(right)
    f = parse_scalar(text, chi_free.chart)
    lhs = chi_free.bracket(a, b.scale(f))
    rhs = chi_free.bracket(a, b).scale(f) + b.scale(apply_vector(chi_free.anchor(a), f))
    assert lhs == rhs


def test_function_multiplication(chi_free):
    f = chi_free.chart.symbol("x") * chi_free.chart.symbol("y")
    for left, right in (("e1", "e2"), ("e2", "[e1,e2]"), ("e1", "[e1,e2]")):
        s, s2 = chi_free.parse(left), chi_free.parse(right)
        scaled = chi_free.bracket(s, s2).scale(f)
        assert scaled == chi_free.bracket(s.scale(f), s2) + s.scale(apply_vector(chi_free.anchor(s2), f))
        assert scaled == chi_free.bracket(s, s2.scale(f)) - s2.scale(apply_vector(chi_free.anchor(s), f))


def test_depth_overflow(chi_spec):
    free = FreeAlgebroid(chi_spec.bundle, flavor=LIE, depth=2)
    e12 = free.parse("[e1,e2]")
    with pytest.raises(DepthOverflowError) as info:
        free.bracket(e12, free.generator(1))
    assert info.value.depth_bound == 2
    with pytest.raises(DepthOverflowError):
        free.parse("[e1,[e1,e2]]")


def test_generator_out_of_range(chi_free):
    with pytest.raises(GeneratorIndexError):
        chi_free.generator(3)


def test_sections_of_different_flavors_do_not_mix(chi_spec, chi_free):
    almost = FreeAlgebroid(chi_spec.bundle, chi_spec.default_connection, ALMOST, 4)
    with pytest.raises(FlavorMismatchError):
        chi_free.bracket(chi_free.generator(1), almost.generator(2))


def test_lie_jacobiator_vanishes(euclid_free):
    e1, e2, e3 = (euclid_free.generator(a) for a in (1, 2, 3))
    assert euclid_free.jacobiator(e1, e2, e3).is_zero
    assert euclid_free.jacobiator(e1.scale("x"), e2, e3.scale("y*z")).is_zero


def test_almost_jacobiator(euclid_spec):
    free = FreeAlgebroid(euclid_spec.bundle, euclid_spec.default_connection, ALMOST, 3)
    e1, e2, e3 = (free.generator(a) for a in (1, 2, 3))
    jac = free.jacobiator(e1, e2, e3)
    assert jac.render() == "[e1,[e2,e3]] - [e2,[e1,e3]] + [e3,[e1,e2]]"
    assert free.jacobiator(e1, e1, e2).is_zero
    assert free.jacobiator(e1.scale("x"), e2, e3) == jac.scale("x")
    assert free.anchor(jac).is_zero


# ── Filtration ───────────────────────────────────────────────────────

def test_degree_and_graded_part(chi_free):
    xi = chi_free.generator(1, "x") + chi_free.parse("[e1,e2]")
    assert xi.degree == 2
    assert xi.graded_part(1) == chi_free.generator(1, "x")
    assert chi_free.zero_section().degree == 0


def test_associated_graded_bracket_drops_anchor_terms(chi_free):
    e1, e2 = chi_free.generator(1), chi_free.generator(2, "x")
    assert chi_free.associated_graded_bracket(e1, e2) == chi_free.parse("[e1,e2]", "x")
    assert chi_free.bracket(e1, e2) - chi_free.associated_graded_bracket(e1, e2) == chi_free.generator(2)


# ── Extended connection ──────────────────────────────────────────────

def test_flat_connection_extends_flat(euclid_free):
    for tree in euclid_free.monomials():
        assert euclid_free.extend_connection(tree).is_zero


def test_extension_of_x_dy(noncartan_free):
    assert noncartan_free.extend_connection(2).render() == "x dy⊗e2"
    assert noncartan_free.extend_connection((1, 2)).render() == "dy⊗e2 + x dy⊗[e1,e2]"
    assert noncartan_free.extend_connection(1).is_zero


def test_extend_connection_needs_canonical_monomial(noncartan_free):
    with pytest.raises(ValueError):
        noncartan_free.extend_connection((2, 1))
    with pytest.raises(DepthOverflowError):
        noncartan_free.extend_connection((1, (1, (1, 2))))


def test_covariant_derivative_leibniz(noncartan_free):
    s = noncartan_free.generator(2, "y")
    derivative = noncartan_free.covariant_derivative(s)
    assert derivative[1] == noncartan_free.generator(2, "1 + x*y")
    assert derivative.render() == "(1 + x*y) dy⊗e2"
    assert derivative[0].is_zero


@pytest.mark.parametrize("flavor", [LIE, ALMOST])
def test_free_extension_is_cartan(flavor, chi_spec, euclid_spec, noncartan_spec):
    for spec, depth in ((chi_spec, 4), (euclid_spec, 3), (noncartan_spec, 3)):
        free = FreeAlgebroid(spec.bundle, spec.default_connection, flavor, depth)
        report = free.check_cartan()
        assert report.passed, report.first_violation
        assert len(report) > 0


def test_compatibility_tensor_on_function_multiples(noncartan_free):
    s = noncartan_free.generator(1, "x*y")
    s2 = noncartan_free.generator(2, "x + y")
    assert noncartan_free.compatibility_tensor_sections(s, s2).is_zero


@pytest.mark.parametrize("spec_name, depth", [("chi_spec", 4), ("euclid_spec", 4), ("noncartan_spec", 3)])
def test_jacobiator_is_covariantly_constant(request, spec_name, depth):
    spec = request.getfixturevalue(spec_name)
    free = FreeAlgebroid(spec.bundle, spec.default_connection, ALMOST, depth)
    report = free.check_jacobiator_covariant_constancy()
    assert report.passed, report.first_violation
    assert len(report) == {2: 4, 3: 10}[spec.bundle.rank]


# ── Induced representation ───────────────────────────────────────────

@pytest.mark.parametrize("depth", [1, 2, 3])
def test_representation_on_euclidean_tensors(euclid_spec, depth):
    free = FreeAlgebroid(euclid_spec.bundle, euclid_spec.default_connection, LIE, 3)
    tensors = [(name, euclid_spec.tensor(name).tensor) for name in ("g", "dx", "d_z")]
    report = free.check_representation(tensors, depth)
    assert report.passed, report.first_violation


def test_metric_is_invariant(euclid_spec, euclid_free):
    g = euclid_spec.tensor("g").tensor
    report = euclid_free.check_invariance(g, euclid_spec.slot_connections("g"))
    assert report.passed
    assert len(report) == len(euclid_free.monomials())


def test_dx_dx_is_not_invariant(euclid_spec, euclid_free):
    dx_dx = euclid_spec.tensor("dx_dx").tensor
    report = euclid_free.check_invariance(dx_dx, euclid_spec.slot_connections("dx_dx"))
    assert not report.passed
    assert report.first_violation.label == "nabla_e2"


def test_representation_with_explicit_connections(euclid_spec, euclid_free):
    d_z = euclid_spec.tensor("d_z").tensor
    xi = euclid_free.parse("[e1,e3]")
    # rho([e1,e3]) = d_z
    assert euclid_free.fr_representation_apply(xi, d_z, [euclid_spec.default_connection]).is_zero
    e3 = euclid_free.generator(3)
    assert euclid_free.fr_representation_apply(e3, d_z) == TensorField.partial(euclid_free.chart, "x")
    assert euclid_free.fr_representation_apply(e3, d_z) == commutator(euclid_free.anchor(e3), d_z)


# ── Properties ───────────────────────────────────────────────────────

_coefficients = st.sampled_from(["0", "1", "x", "y", "chi", "x*y", "x^2 - chi", "1/x"])
_frame = st.sampled_from(["e1", "e2"])


@settings(max_examples=20, deadline=None)
@given(st.lists(st.tuples(_coefficients, _frame), min_size=1, max_size=3),
       st.lists(st.tuples(_coefficients, _frame), min_size=1, max_size=3))
def test_anchor_is_a_bracket_morphism(chi_spec, a, b):
    free = FreeAlgebroid(chi_spec.bundle, chi_spec.default_connection, LIE, 2)
    xi = sum((free.parse(m, c) for c, m in a), free.zero_section())
    eta = sum((free.parse(m, c) for c, m in b), free.zero_section())
    assert free.anchor(free.bracket(xi, eta)) == commutator(free.anchor(xi), free.anchor(eta))
    assert free.bracket(xi, eta) == -free.bracket(eta, xi)
