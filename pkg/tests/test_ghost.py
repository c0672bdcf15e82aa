import pytest
from hypothesis import given, strategies as st

from ghostcalc.algebra import BasisVector, LieSuperalgebra
from ghostcalc.automorphism import GradedAutomorphism
from ghostcalc.errors import (BudgetExceeded, CentralityError, DecompositionMismatch, GhostDimensionError, MembershipError,
                              Unsupported)
from ghostcalc.families import build_algebra, mat_add, mat_mul
from ghostcalc.fields import Q, RatFun
from ghostcalc.ghost import (a_phi_element, center_of_even_part, central_subset_sum_element,
                             centrality_failures, covered_class, hc_image, invariance_failures,
                             limit_to_center, minimal_component_count, product_into_twisted,
                             projectivity_data, projectivity_polynomial, semisimplicity_test,
                             solve_in_A_phi, v_g, v_g_closed_form, v_g_generic_solve,
                             vandermonde_decompose)
from ghostcalc.hc import t_g_polynomial
from ghostcalc.linalg import dense_rank
from ghostcalc.pbw import default_borel, default_uea
from ghostcalc.superpoly import SuperPolynomial, rational_factorization
from ghostcalc.verify import gl11_vandermonde_input, matrix_of_element

CLOSED = ["gl(1|1)", "gl(2|1)", "sl(2|1)", "gl(1|2)", "osp(1|2)", "osp(1|4)", "osp(2|2)",
          "abelian(0|1)", "abelian(0|3)", "abelian(3|2)"]


@pytest.mark.parametrize("name", CLOSED)
def test_closed_form_agrees_with_solver(name):
    g = build_algebra(name)
    closed = v_g_closed_form(g)
    assert closed.certificate_failures() == []
    assert closed.ratio_to(v_g_generic_solve(g)) == 1


@pytest.mark.parametrize("name, text", [
    ("gl(1|1)", "y*x"),
    ("gl(2|1)", "e31*e32*e13*e23"),
    ("osp(1|2)", "u1*v1 + 1"),
    ("q(1)", "b"),
    ("abelian(0|2)", "xi1*xi2"),
])
def test_frozen_ghosts(name, text):
    assert str(v_g(build_algebra(name)).representative) == text


def test_covered_classes():
    assert covered_class(build_algebra("osp(1|4)")) == "osp1"
    assert covered_class(build_algebra("gl(2|1)")) == "type-one"
    assert covered_class(build_algebra("abelian(2|2)")) == "central-odd"


def _solvable(twist):
    basis = [BasisVector(0, "h", 0), BasisVector(1, "xi", 1), BasisVector(2, "eta", 1)]
    brackets = {(0, 1): {1: Q(1)}, (0, 2): {2: Q(twist)}}
    return LieSuperalgebra(f"solvable({twist})", basis, brackets, cartan_even=[0])


def test_unbalanced_odd_action_has_no_ghost():
    g = _solvable(1)
    assert covered_class(g) is None
    with pytest.raises(GhostDimensionError) as info:
        v_g(g)
    assert info.value.dimension == 0


def test_balanced_odd_action_has_a_ghost():
    g = _solvable(-1)
    assert str(v_g(g).representative) == "xi*eta"
    assert v_g_generic_solve(g).ratio_to(v_g(g)) == 1


@pytest.mark.parametrize("name, semisimple, counit", [
    ("osp(1|2)", True, 1), ("osp(1|4)", True, 3), ("gl(1|1)", False, 0), ("q(1)", False, 0),
])
def test_semisimplicity(name, semisimple, counit):
    report = semisimplicity_test(build_algebra(name))
    assert bool(report) is semisimple
    assert report.counit == counit


def test_a_phi_frozen_gl11():
    g = build_algebra("gl(1|1)")
    a = a_phi_element(GradedAutomorphism.delta(), g=g)
    assert str(a.element) == "4*y*x - 2*h1 - 2*h2"
    assert a.certified
    c = a_phi_element(GradedAutomorphism.scale(RatFun.c()), g=g)
    assert str(c.element) == "((-c^2 + 2*c - 1)/c)*y*x + (c - 1)*h1 + (c - 1)*h2"


def test_abelian_matrix_twist():
    g = build_algebra("abelian(0|2)")
    a = a_phi_element(GradedAutomorphism.from_matrix([[2, 1], [0, 3]]), g=g)
    assert str(a.element) == "2*xi1*xi2"


def _phi_matrix(g, phi, u):
    out = {}
    for j, c in phi.image(g, u).items():
        out = mat_add(out, g.representation[2][j], scales=(1, c))
    return out


@pytest.mark.parametrize("phi", [GradedAutomorphism.delta(), GradedAutomorphism.scale(Q(2)),
                                 GradedAutomorphism.scale(Q(-1, 3))])
def test_a_phi_invariance_in_defining_representation(phi):
    # u a - (-1)^{|u||a|} a phi(u) vanishes as a supermatrix for every generator u
    g = build_algebra("gl(2|1)")
    for z in center_of_even_part(g, 2):
        a = a_phi_element(phi, z)
        ma = matrix_of_element(a.element)
        for u in range(g.dim):
            mu = g.representation[2][u]
            diff = mat_add(mat_mul(mu, ma), mat_mul(ma, _phi_matrix(g, phi, u)), scales=(1, -1))
            assert all(v == 0 for v in diff.values())


def test_projectivity_gl():
    g = build_algebra("gl(2|1)")
    p = projectivity_polynomial(g)
    assert p.ratio_to(t_g_polynomial(default_borel(g))) == -4


def test_projectivity_q1():
    data = projectivity_data(build_algebra("q(1)"))
    assert str(data.polynomial) == "4*h"
    assert str(data.b_H) == "2*h"
    assert data.p1 == 2
    assert data.polynomial.degree() <= data.degree_bound


def test_solve_in_a_phi_recovers_target():
    g = build_algebra("gl(2|1)")
    borel = default_borel(g)
    t = t_g_polynomial(borel)
    h1 = SuperPolynomial.variable(g.cartan_names, "h1")
    h2 = SuperPolynomial.variable(g.cartan_names, "h2")
    target = t * (h1 + h2 + 3)
    for phi in (GradedAutomorphism.delta(), GradedAutomorphism.scale(RatFun.c())):
        a = solve_in_A_phi(g, phi, target)
        assert a.hc_image == target
        assert invariance_failures(phi, a.element) == []
    with pytest.raises(BudgetExceeded):
        solve_in_A_phi(g, GradedAutomorphism.delta(), t * (h1 + 3))


def test_membership_error():
    g = build_algebra("gl(1|1)")
    h1 = SuperPolynomial.variable(g.cartan_names, "h1")
    with pytest.raises(MembershipError):
        solve_in_A_phi(g, GradedAutomorphism.delta(), h1)


def test_scale_needs_type_one():
    with pytest.raises(Unsupported):
        a_phi_element(GradedAutomorphism.scale(Q(2)), g=build_algebra("osp(1|2)"))


def test_central_element_gl21():
    g = build_algebra("gl(2|1)")
    z = central_subset_sum_element(g)
    assert centrality_failures(z) == []
    assert hc_image(z).ratio_to(t_g_polynomial(default_borel(g))) == -1


def test_displayed_sign_is_not_central_for_two_odd_pairs():
    with pytest.raises(CentralityError):
        central_subset_sum_element(build_algebra("gl(2|1)"), sign="displayed")
    # both conventions coincide when g_1 is one-dimensional
    g = build_algebra("gl(1|1)")
    assert central_subset_sum_element(g, "displayed") == central_subset_sum_element(g)


def test_limit_to_center():
    g = build_algebra("gl(2|1)")
    borel = default_borel(g)
    t = t_g_polynomial(borel)
    z = limit_to_center(g, t, borel)
    assert centrality_failures(z) == []
    assert hc_image(z, borel) == t
    assert z == central_subset_sum_element(g).scale(-1)


def test_product_into_twisted():
    g = build_algebra("gl(1|1)")
    a = a_phi_element(GradedAutomorphism.delta(), g=g)
    prod = product_into_twisted(a, a)
    assert prod.automorphism.kind == "identity"
    assert str(prod.hc_image) == "4*h1^2 + 8*h1*h2 + 4*h2^2"
    assert centrality_failures(prod.element) == []


@given(st.integers(-4, 4).filter(lambda s: s not in (0, 1)), st.integers(-4, 4).filter(lambda s: s not in (0, 1)))
def test_scale_products_compose(s, t):
    g = build_algebra("gl(1|1)")
    a = a_phi_element(GradedAutomorphism.scale(Q(s)), g=g)
    b = a_phi_element(GradedAutomorphism.scale(Q(t)), g=g)
    prod = product_into_twisted(a, b)
    assert invariance_failures(prod.automorphism, prod.element) == []


def test_vandermonde_gl11():
    u = gl11_vandermonde_input()
    res = vandermonde_decompose(u, 2)
    assert res.exact
    assert [c.automorphism.describe() for c in res.components] == ["identity", "delta"]
    assert sum((c.element for c in res.components), default_uea(u.element.algebra).zero()) == u.element
    with pytest.raises(DecompositionMismatch):
        vandermonde_decompose(u, 1)
    report = minimal_component_count(u)
    assert report["minimal_M"] == 2
    assert report["attempts"] == {1: False, 2: True}


def test_vandermonde_of_a_c_family_member():
    g = build_algebra("gl(1|1)")
    u = a_phi_element(GradedAutomorphism.scale(RatFun.c()), g=g)
    res = vandermonde_decompose(u, 2)
    assert res.exact


def _ghost_set(g):
    out = []
    for phi in (GradedAutomorphism.delta(), GradedAutomorphism.scale(Q(2)), GradedAutomorphism.scale(Q(-3))):
        for z in center_of_even_part(g, 1):
            out.append(a_phi_element(phi, z))
    return out


@pytest.mark.parametrize("name", ["gl(1|1)", "gl(2|1)"])
def test_ghost_elements_commute(name):
    g = build_algebra(name)
    elements = [a.element for a in _ghost_set(g)] + [central_subset_sum_element(g)]
    for i, a in enumerate(elements):
        for b in elements[i + 1:]:
            assert a * b == b * a


@pytest.mark.parametrize("name", ["gl(1|1)", "gl(2|1)"])
def test_filtration_bound_and_injectivity(name):
    g = build_algebra(name)
    borel = default_borel(g)
    odd = len(g.odd_indices)
    zs = center_of_even_part(g, 2)
    images = []
    for z in zs:
        a = a_phi_element(GradedAutomorphism.delta(), z, borel=borel)
        # doubled degree convention: even generators count 2, odd ones 1
        assert a.element.filtration_degree() <= z.filtration_degree() + odd
        images.append(a.hc_image)
    # HC images of distinct centre basis elements are linearly independent
    keys = sorted({k for p in images for k in p.terms})
    matrix = [[p.terms.get(k, Q(0)) for k in keys] for p in images]
    assert dense_rank(matrix) == len(zs)


def test_projectivity_factors_into_linear_forms():
    for name in ("gl(1|1)", "gl(2|1)", "q(1)", "osp(1|2)"):
        report = rational_factorization(projectivity_polynomial(build_algebra(name)))
        assert report["all_linear"]
