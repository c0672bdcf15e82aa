import pytest

from ghostcalc.automorphism import GradedAutomorphism
from ghostcalc.errors import NotDominant, Unsupported
from ghostcalc.families import build_algebra
from ghostcalc.fields import Q, RatFun
from ghostcalc.ghost import a_phi_element, center_of_even_part, central_subset_sum_element, hc_image
from ghostcalc.hc import atypicality_locus_test, evaluate_at_weight
from ghostcalc.modules import (T_g_action_check, build_kac_module, check_brackets, check_degree_shifts,
                               dominant_grid, expected_kac_trace, graded_constant_check,
                               highest_weight_irreducible, irreducible_quotient, is_irreducible,
                               twisted_trace_poly)
from ghostcalc.pbw import default_borel


def gl2_weyl_dimension(lam):
    return int(lam[0] - lam[1]) + 1


@pytest.mark.parametrize("lam", [(0, 0, 0), (1, 0, 0), (3, 0, 1), (2, -1, 5), (4, 4, -2)])
def test_kac_dimensions_and_brackets(lam):
    g = build_algebra("gl(2|1)")
    K = build_kac_module(g, lam)
    d0 = gl2_weyl_dimension(lam)
    assert K.dim == 4 * d0
    assert K.graded_dimensions() == {0: d0, -1: 2 * d0, -2: d0}
    assert check_brackets(K) == []
    assert check_degree_shifts(K) == []


def test_kac_typicality_matches_irreducibility():
    for name in ("gl(1|1)", "gl(2|1)"):
        g = build_algebra(name)
        borel = default_borel(g)
        for lam in dominant_grid(g, 2, borel):
            K = build_kac_module(g, lam, borel)
            assert is_irreducible(K) == (not atypicality_locus_test(lam, borel))


def _weights(M):
    return sorted(tuple(int(x) for x in w) for w in M.weights)


def test_trivial_natural_and_dual_modules():
    g = build_algebra("gl(2|1)")
    trivial = irreducible_quotient(build_kac_module(g, (0, 0, 0)))
    assert trivial.dim == 1
    natural = irreducible_quotient(build_kac_module(g, (1, 0, 0)))
    assert _weights(natural) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    assert natural.graded_dimensions() == {0: 2, -1: 1}
    dual = irreducible_quotient(build_kac_module(g, (0, 0, -1)))
    assert _weights(dual) == [(-1, 0, 0), (0, -1, 0), (0, 0, -1)]
    for M in (trivial, natural, dual):
        assert check_brackets(M) == []


def test_atypical_gl11_quotient_is_one_dimensional():
    g = build_algebra("gl(1|1)")
    L = irreducible_quotient(build_kac_module(g, (1, -1)))
    assert L.dim == 1
    assert T_g_action_check(L).classification == "zero"


@pytest.mark.parametrize("n", range(5))
def test_osp12_irreducibles(n):
    g = build_algebra("osp(1|2)")
    L = highest_weight_irreducible(g, (n,))
    assert L.dim == 2 * n + 1
    assert check_brackets(L) == []
    assert T_g_action_check(L).classification == "invertible"


def test_kac_needs_type_one_and_dominance():
    with pytest.raises(Unsupported):
        build_kac_module(build_algebra("osp(1|2)"), (1,))
    with pytest.raises(NotDominant):
        build_kac_module(build_algebra("gl(2|1)"), (0, 1, 0))


@pytest.mark.parametrize("lam", [(3, 0, 1), (2, 1, 0), (1, -1, 3)])
def test_twisted_trace_of_typical_kac(lam):
    g = build_algebra("gl(2|1)")
    K = build_kac_module(g, lam)
    p = twisted_trace_poly(K)
    d0 = gl2_weyl_dimension(lam)
    assert p == expected_kac_trace(d0, 2)
    assert p.evaluate(Q(1)) == 0
    assert p.evaluate(Q(-1)) == K.dim


def test_twisted_trace_of_natural():
    g = build_algebra("gl(2|1)")
    p = twisted_trace_poly(irreducible_quotient(build_kac_module(g, (1, 0, 0))))
    assert str(p) == "-c + 2"


def test_ghost_elements_act_by_graded_constants():
    g = build_algebra("gl(2|1)")
    borel = default_borel(g)
    lam = (3, 0, 1)
    K = build_kac_module(g, lam, borel)
    c = RatFun.c()
    for z in center_of_even_part(g, 1):
        for phi, s in ((GradedAutomorphism.delta(), Q(-1)), (GradedAutomorphism.scale(c), c)):
            a = a_phi_element(phi, z, borel=borel)
            res = graded_constant_check(a.element, K)
            assert res.ok
            value = evaluate_at_weight(a.hc_image, lam)
            for degree, scalar in res.scalars.items():
                j = int(-degree)
                assert scalar == value * (s.inverse() if hasattr(s, "inverse") else 1 / s) ** j


def test_central_element_acts_by_hc_value():
    g = build_algebra("gl(2|1)")
    z = central_subset_sum_element(g)
    for lam in [(3, 0, 1), (2, 1, 0), (1, 0, 0)]:
        K = build_kac_module(g, lam)
        res = graded_constant_check(z, K)
        assert res.ok
        assert set(res.scalars.values()) == {evaluate_at_weight(hc_image(z), lam)}


def test_tg_action_on_kac_modules():
    g = build_algebra("gl(2|1)")
    borel = default_borel(g)
    for lam in dominant_grid(g, 1, borel):
        K = build_kac_module(g, lam, borel)
        L = K if is_irreducible(K) else irreducible_quotient(K)
        report = T_g_action_check(L)
        assert report.consistent
        assert (report.classification == "invertible") == (not atypicality_locus_test(lam, borel))
