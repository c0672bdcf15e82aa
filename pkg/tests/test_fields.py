from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ghostcalc.errors import FieldMismatch
from ghostcalc.fields import Cyclotomic, Field, Q, RatFun, cyclotomic_polynomial, root_of_unity, scalar_sum

small = st.integers(-6, 6)
rationals = st.builds(lambda a, b: Q(a, b), small, st.integers(1, 5))


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (Q(-1), Q(1))
    assert cyclotomic_polynomial(3) == (Q(1), Q(1), Q(1))
    assert cyclotomic_polynomial(4) == (Q(1), Q(0), Q(1))


def test_zeta_has_the_right_order():
    for m in (3, 4, 5, 6):
        z = Cyclotomic.zeta(m)
        p = Cyclotomic(m, [1])
        for k in range(1, m):
            p = p * z
            assert p != 1
        assert p * z == 1


def test_small_roots_of_unity_are_rational():
    assert root_of_unity(1) == 1
    assert root_of_unity(2, 1) == -1
    assert isinstance(root_of_unity(3, 1), Cyclotomic)


def test_mixing_orders_is_rejected():
    with pytest.raises(FieldMismatch):
        Cyclotomic.zeta(3) + Cyclotomic.zeta(5)


@given(st.lists(rationals, min_size=1, max_size=4), st.lists(rationals, min_size=1, max_size=4))
def test_cyclotomic_inverse(a, b):
    x = Cyclotomic(5, a)
    if x == 0:
        return
    assert x * x.inverse() == 1
    y = Cyclotomic(5, b)
    assert (x * y) * x.inverse() == y


def test_ratfun_normal_form_and_text():
    c = RatFun.c()
    assert str(c / (c - 1) * -1) == "-c/(c - 1)"
    assert str((c + 1) / c) == "(c + 1)/c"
    assert (c * c - 1) / (c - 1) == c + 1


@given(st.lists(rationals, min_size=1, max_size=3), st.lists(rationals, min_size=1, max_size=3), rationals)
def test_ratfun_field_laws(n1, n2, point):
    a = RatFun(tuple(n1))
    b = RatFun(tuple(n2), (Q(1), Q(1)))
    if a == 0:
        return
    assert a * a.inverse() == 1
    assert (a + b) - b == a
    if point != -1:
        assert (a * b).evaluate(point) == a.evaluate(point) * b.evaluate(point)


def test_pole_raises():
    c = RatFun.c()
    with pytest.raises(ZeroDivisionError):
        (1 / (c - 1)).evaluate(1)


def test_scalar_sum_mixes_kinds():
    c = RatFun.c()
    total = scalar_sum([c / (c - 1), 1 / (c - 1) * -1, Q(2)])
    assert total == 3


def test_field_parsing():
    assert str(Field.parse("Q")) == "Q"
    assert Field.parse("cyclotomic:4").order == 4
    assert Field.parse("ratfun-c").has_parameter
    with pytest.raises(ValueError):
        Field.parse("reals")
    with pytest.raises(FieldMismatch):
        Field.parse("Q").parameter()


def test_interop_with_fraction():
    assert Q(1, 2) + Fraction(1, 2) == 1
