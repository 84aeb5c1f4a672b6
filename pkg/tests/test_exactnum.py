import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from artinlab.exactnum import QQ, CycloField, ExactReal, common_field, cyclo_sign, field_for_labels, minimal_polynomial_2cos

FIELDS = [CycloField(L) for L in (1, 4, 5, 6, 10, 12)]
fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def elements(field):
    return st.lists(fractions, min_size=0, max_size=field.degree).map(lambda cs: ExactReal(field, cs))


def test_zero_is_zero():
    assert cyclo_sign(QQ(0)) == 0
    assert CycloField(5).zero().sign() == 0


def test_sqrt_two_squared():
    F = CycloField(4)
    r2 = F.two_cos(4)
    assert r2 * r2 - 2 == F.zero()
    assert (r2 * r2 - 2).sign() == 0


def test_golden_ratio_minus_one_positive():
    F = CycloField(5)
    assert (F.two_cos(5) - 1).sign() == 1
    assert abs(float(F.two_cos(5) - 1) - 0.6180339887) < 1e-9


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7, 8, 10, 12, 14, 20])
def test_minimal_polynomial_vanishes_at_two_cos_of_2pi_over_n(n):
    p = minimal_polynomial_2cos(n)
    x = 2 * math.cos(2 * math.pi / n)
    assert abs(sum(float(c) * x**k for k, c in enumerate(p))) < 1e-9


@pytest.mark.parametrize("L", [4, 5, 6, 10, 12])
def test_two_cos_matches_float(L):
    F = CycloField(L)
    for m in (1, 2, 3, L) + tuple(k for k in range(4, L) if L % k == 0):
        assert abs(float(F.two_cos(m)) - 2 * math.cos(math.pi / m)) < 1e-12


def test_two_cos_outside_field_rejected():
    with pytest.raises(ValueError):
        CycloField(5).two_cos(4)


def test_field_for_labels_and_embedding():
    assert field_for_labels([3, 4, 5]).L == 20
    assert field_for_labels([2, 3, math.inf]).L == 1
    F5, F20 = CycloField(5), CycloField(20)
    x = F5.two_cos(5)
    assert abs(float(F20.embed(x)) - float(x)) < 1e-12
    assert common_field(F5, CycloField(4)).L == 20


def test_parse_roundtrip():
    F = CycloField(5)
    x = F.parse("1/2*t^2 - t + 3")
    assert F.parse(str(x)) == x


@pytest.mark.parametrize("field", FIELDS, ids=lambda f: f"L{f.L}")
@given(data=st.data())
def test_field_axioms(field, data):
    a, b, c = (data.draw(elements(field)) for _ in range(3))
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert a - a == field.zero()
    if a:
        assert a * a.inverse() == field.one()
        assert (b / a) * a == b


@pytest.mark.parametrize("field", FIELDS, ids=lambda f: f"L{f.L}")
@given(data=st.data())
def test_sign_agrees_with_float_oracle(field, data):
    a = data.draw(elements(field))
    f = float(a)
    if abs(f) > 1e-6:
        assert a.sign() == (1 if f > 0 else -1)
    assert (a * a).sign() >= 0
    assert (-a).sign() == -a.sign()


@given(fractions, fractions)
def test_rational_order_matches_fraction(x, y):
    assert (QQ(x) < QQ(y)) == (x < y)
    assert QQ(x).to_fraction() == Fraction(x)


def test_near_cancellation_decided_exactly():
    # theta^2 - theta - 1 = 0 in Q(2cos(pi/5)); perturb by a tiny rational
    F = CycloField(5)
    t = F.theta()
    eps = Fraction(1, 10**30)
    assert (t * t - t - 1).sign() == 0
    assert (t * t - t - 1 + eps).sign() == 1
    assert (t * t - t - 1 - eps).sign() == -1
