from hypothesis import given, strategies as st

from ghostcalc.automorphism import GradedAutomorphism
from ghostcalc.families import build_algebra
from ghostcalc.fields import Q
from ghostcalc.superpoly import SuperPolynomial

VARS = ("h1", "h2")
coeff = st.integers(-4, 4).map(Q)
exps = st.tuples(st.integers(0, 2), st.integers(0, 2))
polys = st.dictionaries(exps, coeff, max_size=4).map(
    lambda d: SuperPolynomial(VARS, (), {(e, ()): c for e, c in d.items() if c}))
points = st.tuples(st.integers(-5, 5), st.integers(-5, 5)).map(lambda t: [Q(x) for x in t])


@given(polys, polys, points)
def test_ring_operations_commute_with_evaluation(p, q, x):
    assert (p * q).evaluate(x) == p.evaluate(x) * q.evaluate(x)
    assert (p + q).evaluate(x) == p.evaluate(x) + q.evaluate(x)


@given(polys, polys)
def test_exact_division(p, q):
    if q.is_zero():
        return
    assert q.divides(p * q)
    quotient, remainder = (p * q).divmod(q)
    assert remainder.is_zero()
    assert quotient * q == p * q


@given(polys, coeff)
def test_proportionality(p, s):
    if p.is_zero() or s == 0:
        return
    assert p.scale(s).ratio_to(p) == s


def test_odd_variables_anticommute():
    x = SuperPolynomial.variable((), "x", ("x", "y"))
    y = SuperPolynomial.variable((), "y", ("x", "y"))
    assert x * y == -(y * x)
    assert (x * x).is_zero()


scalars = st.integers(-4, 4).filter(bool).map(Q)


@given(st.one_of(st.just(GradedAutomorphism.delta()), scalars.map(GradedAutomorphism.scale)),
       st.one_of(st.just(GradedAutomorphism.delta()), scalars.map(GradedAutomorphism.scale)))
def test_composition_matches_successive_application(a, b):
    g = build_algebra("gl(2|1)")
    ab = a.compose(b, g)
    for i in range(g.dim):
        assert ab.image(g, i) == a.apply(g, b.image(g, i))


def test_matrix_composition():
    g = build_algebra("abelian(0|2)")
    a = GradedAutomorphism.from_matrix([[1, 2], [0, 1]])
    b = GradedAutomorphism.from_matrix([[0, 1], [1, 0]])
    ab = a.compose(b, g)
    for i in g.odd_indices:
        assert ab.image(g, i) == a.apply(g, b.image(g, i))
