import random

import pytest
from hypothesis import given, strategies as st

from ghostcalc.automorphism import GradedAutomorphism
from ghostcalc.families import build_algebra, mat_add, mat_mul
from ghostcalc.fields import Q
from ghostcalc.pbw import default_uea, named_ordering, twisted_adjoint
from ghostcalc.verify import matrix_of_element, matrix_of_word, random_word

ALGEBRAS = ["gl(1|1)", "gl(2|1)", "osp(1|2)", "sl(2|1)"]


def words(name, max_length=5):
    g = build_algebra(name)
    return st.lists(st.integers(0, g.dim - 1), max_size=max_length).map(tuple)


def elements(name):
    g = build_algebra(name)
    U = default_uea(g)
    term = st.tuples(words(name, 4), st.integers(-3, 3))
    return st.lists(term, max_size=3).map(lambda ts: sum((U.word(w, Q(c)) for w, c in ts), U.zero()))


@pytest.mark.parametrize("name", ["gl(1|1)", "gl(2|1)", "gl(2|2)"])
def test_normal_form_matches_supermatrices(name):
    g = build_algebra(name)
    U = default_uea(g)
    rng = random.Random(7)
    for _ in range(500):
        w = random_word(g, rng, 6)
        assert matrix_of_word(g, w) == matrix_of_element(U.word(w))


@pytest.mark.parametrize("name", ALGEBRAS)
@given(data=st.data())
def test_associativity(name, data):
    a, b, c = (data.draw(elements(name)) for _ in range(3))
    assert (a * b) * c == a * (b * c)


@pytest.mark.parametrize("name", ALGEBRAS)
@given(data=st.data())
def test_reorder_round_trip(name, data):
    g = build_algebra(name)
    a = data.draw(elements(name))
    for other in ("coset", "basis"):
        if other == "coset" and not g.has_weights:
            continue
        b = a.reorder(named_ordering(g, other))
        assert b.reorder(a.ordering) == a
        assert b == a


@given(data=st.data())
def test_normal_form_is_a_homomorphism(data):
    g = build_algebra("gl(2|1)")
    U = default_uea(g)
    w1, w2 = data.draw(words("gl(2|1)")), data.draw(words("gl(2|1)"))
    assert U.word(w1 + w2) == U.word(w1) * U.word(w2)


def _phi_matrix(g, phi, i):
    out = {}
    for j, c in phi.image(g, i).items():
        out = mat_add(out, g.representation[2][j], scales=(1, c))
    return out


@pytest.mark.parametrize("phi", [GradedAutomorphism.identity(), GradedAutomorphism.delta(),
                                 GradedAutomorphism.scale(Q(3))])
@given(data=st.data())
def test_twisted_adjoint_against_matrices(phi, data):
    g = build_algebra("gl(2|1)")
    U = default_uea(g)
    u = data.draw(st.integers(0, g.dim - 1))
    w = data.draw(words("gl(2|1)", 3))
    v = U.word(w)
    lhs = matrix_of_element(twisted_adjoint(phi, u, v))
    mu, mv = g.representation[2][u], matrix_of_word(g, w)
    parity_v = sum(g.parity(i) for i in w) % 2
    sign = -1 if (g.parity(u) and parity_v) else 1
    rhs = mat_add(mat_mul(mu, mv), mat_mul(mv, _phi_matrix(g, phi, u)), scales=(1, -sign))
    assert lhs == {k: x for k, x in rhs.items() if x != 0}


def test_gl11_frozen_products():
    g = build_algebra("gl(1|1)")
    U = default_uea(g)
    x, y, h1, h2 = (U.gen(n) for n in ("x", "y", "h1", "h2"))
    assert str(x * y) == "-y*x + h1 + h2"
    assert (x * x).is_zero()
    assert str(x * h1) == "h1*x - x"
    assert str(twisted_adjoint(GradedAutomorphism.delta(), g.index("x"), y)) == "-2*y*x + h1 + h2"
    assert twisted_adjoint(GradedAutomorphism.identity(), g.index("h1"), x) == x
    assert twisted_adjoint(GradedAutomorphism.identity(), g.index("h1"), h2).is_zero()


def test_filtration_degree_and_parity():
    g = build_algebra("gl(1|1)")
    U = default_uea(g)
    a = U.word(("x", "y", "h1"))
    assert a.filtration_degree() == 4
    assert (h := U.gen("h1") * U.gen("h2")).filtration_degree() == 4
    assert h.parity() == 0
    assert a.parity() == 0
    assert U.gen("x").parity() == 1
