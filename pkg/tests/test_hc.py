import random

import pytest
from hypothesis import given, strategies as st

from ghostcalc.errors import NotCartanEven
from ghostcalc.families import build_algebra
from ghostcalc.fields import Q
from ghostcalc.hc import (atypicality_locus_test, check_degree_bound, clifford_poly_bH, evaluate_at_weight,
                          group_variables, hc_project_group, hc_project_pair, rho_shifted_weyl_check,
                          t_g_polynomial)
from ghostcalc.linalg import dense_rank
from ghostcalc.modules import act_on_vector, build_kac_module, dominant_grid
from ghostcalc.pairs import diagonal_pair
from ghostcalc.pbw import default_borel, default_uea
from ghostcalc.superpoly import SuperPolynomial
from ghostcalc.verify import random_element


def weight_zero_elements(name, max_length=6):
    g = build_algebra(name)
    U = default_uea(g)
    word = st.lists(st.integers(0, g.dim - 1), max_size=max_length).map(tuple)

    def zero_weight_part(ts):
        total = U.zero()
        for w, c in ts:
            total = total + U.word(w, Q(c))
        return U.element({m: c for m, c in total.terms.items() if U.element({m: c}).weight() == (0,) * len(g.cartan_even)})

    return st.lists(st.tuples(word, st.integers(-3, 3)), max_size=3).map(zero_weight_part)


@pytest.mark.parametrize("name", ["gl(1|1)", "gl(2|1)", "osp(1|2)"])
@given(data=st.data())
def test_group_and_pair_routes_agree(name, data):
    g = build_algebra(name)
    a = data.draw(weight_zero_elements(name))
    pair = diagonal_pair(g)
    assert group_variables(hc_project_pair(a, pair), g) == hc_project_group(a)


@pytest.mark.parametrize("name", ["gl(1|1)", "gl(2|1)"])
def test_hc_matches_action_on_highest_weight_vector(name):
    # the unshifted projection evaluated at lam is the hw-component of a acting on v_lam
    g = build_algebra(name)
    borel = default_borel(g)
    rng = random.Random(3)
    modules = [build_kac_module(g, lam, borel) for lam in dominant_grid(g, 1, borel)[:6]]
    for _ in range(15):
        a = random_element(g, rng, 5)
        a = a.uea.element({m: c for m, c in a.terms.items()
                           if a.uea.element({m: c}).weight() == (0,) * len(g.cartan_even)})
        p = hc_project_group(a, borel)
        for M in modules:
            assert M.weights[0] == M.highest_weight
            image = act_on_vector(a, M, {0: Q(1)})
            assert image.get(0, Q(0)) == evaluate_at_weight(p, M.highest_weight)


def _from_roots(borel):
    # independent product over odd positive roots using the form directly
    g = borel.algebra
    total = SuperPolynomial.constant(g.cartan_names, Q(1))
    for alpha in borel.odd_positive:
        coeffs = [borel.pairing(tuple(Q(int(i == k)) for i in range(len(g.cartan_even))), alpha)
                  for k in range(len(g.cartan_even))]
        total = total * SuperPolynomial.linear(g.cartan_names, coeffs, borel.pairing(borel.rho, alpha))
    return total


@pytest.mark.parametrize("name", ["gl(1|1)", "gl(2|1)", "gl(1|2)", "sl(2|1)", "gl(2|2)"])
def test_t_g_against_root_data(name):
    borel = default_borel(build_algebra(name))
    assert t_g_polynomial(borel) == _from_roots(borel)


def test_t_g_frozen_values():
    b = default_borel(build_algebra("gl(1|1)"))
    assert str(t_g_polynomial(b)) == "h1 + h2"
    b = default_borel(build_algebra("gl(2|1)"))
    assert str(t_g_polynomial(b)) == "h1*h2 + h1*h3 + h2*h3 + h3^2 + h2 + h3"


@pytest.mark.parametrize("name", ["gl(1|1)", "gl(2|1)", "gl(1|2)"])
def test_t_g_vanishes_exactly_on_atypicals(name):
    g = build_algebra(name)
    borel = default_borel(g)
    t = t_g_polynomial(borel)
    for lam in dominant_grid(g, 3, borel):
        assert (t.evaluate(list(lam)) == 0) == atypicality_locus_test(lam, borel)


def test_t_g_is_shifted_weyl_invariant():
    for name in ("gl(2|1)", "gl(1|2)", "gl(2|2)"):
        borel = default_borel(build_algebra(name))
        assert rho_shifted_weyl_check(t_g_polynomial(borel), borel)


def test_weyl_check_rejects_non_invariant():
    borel = default_borel(build_algebra("gl(2|1)"))
    h1 = SuperPolynomial.variable(borel.algebra.cartan_names, "h1")
    assert not rho_shifted_weyl_check(h1, borel)


@given(st.integers(-6, 6))
def test_b_h_rank_oracle(h):
    g = build_algebra("q(1)")
    bh = clifford_poly_bH(g)
    gram = [[Q(2 * h)]]       # lambda([b, b]) = 2 lambda(h)
    assert (bh.evaluate([Q(h)]) != 0) == (dense_rank(gram) == 1)


def test_b_h_frozen():
    assert str(clifford_poly_bH(build_algebra("q(1)"))) == "2*h"
    assert clifford_poly_bH(build_algebra("gl(2|1)")).evaluate([1, 2, 3]) == 1
    assert clifford_poly_bH(build_algebra("abelian(0|2)")).is_zero()


def test_group_route_needs_cartan_even():
    g = build_algebra("q(1)")
    with pytest.raises(NotCartanEven):
        hc_project_group(default_uea(g).gen("h"))


def test_q1_pair_route():
    g = build_algebra("q(1)")
    U = default_uea(g)
    pair = diagonal_pair(g)
    assert str(hc_project_pair(U.word(("b", "b")), pair)) == "a.h"
    assert str(hc_project_pair(U.gen("b"), pair)) == "a.b"


@pytest.mark.parametrize("name", ["gl(1|1)", "gl(2|1)", "osp(1|2)", "q(1)"])
def test_degree_bound_random(name):
    g = build_algebra(name)
    pair = None if g.is_cartan_even else diagonal_pair(g)
    rng = random.Random(11)
    for _ in range(60):
        assert check_degree_bound(random_element(g, rng, 7), pair=pair)
