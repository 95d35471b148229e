import cmath
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfstar.errors import NotReal, ParseError, PrecisionExhausted
from hopfstar.scalar import (
    ONE,
    ZERO,
    Scalar,
    as_scalar,
    cyclotomic_polynomial,
    parse_scalar,
    scalar_conj,
    scalar_sign,
    scalar_text,
)

ORDERS = (1, 2, 3, 4, 8)
DEGREE = {1: 1, 2: 1, 3: 2, 4: 2, 8: 4}


def scalars(n):
    q = st.fractions(min_value=-20, max_value=20, max_denominator=12)
    return st.lists(q, min_size=DEGREE[n], max_size=DEGREE[n]).map(lambda c: Scalar(n, c))


any_order = st.sampled_from(ORDERS)


@st.composite
def pairs(draw):
    n = draw(any_order)
    return draw(scalars(n)), draw(scalars(n)), draw(scalars(n))


def test_cyclotomic_polynomials():
    # coefficient lists, constant term first
    assert list(cyclotomic_polynomial(1)) == [-1, 1]
    assert list(cyclotomic_polynomial(4)) == [1, 0, 1]
    assert list(cyclotomic_polynomial(8)) == [1, 0, 0, 0, 1]
    assert list(cyclotomic_polynomial(3)) == [1, 1, 1]


def test_conj_rational_fixed():
    s = as_scalar("3/2")
    assert scalar_conj(s) == s


def test_conj_i():
    assert scalar_conj(Scalar.i()) == -Scalar.i()


def test_conj_order8_reduction():
    # conj(x + x^3) = x^7 + x^21 = -x^3 - x modulo x^4 + 1
    s = Scalar(8, [0, 1, 0, 1])
    assert scalar_conj(s) == Scalar(8, [0, -1, 0, -1])


def test_zeta_powers_wrap():
    z = Scalar.zeta(3)
    assert z ** 3 == ONE
    assert z * z == Scalar.zeta(3, 2)
    assert 1 + z + z * z == ZERO


def test_mixed_orders_lift_to_lcm():
    s = Scalar.i() + Scalar.zeta(3)
    assert s.n == 12
    assert s - Scalar.zeta(3) == Scalar.i()


def test_equality_across_orders():
    assert Scalar.rational(2, 4) == Scalar.rational(2)
    assert Scalar.zeta(4, 2) == as_scalar(-1)
    assert hash(Scalar.rational(5, 8)) == hash(as_scalar(5))


def test_inverse_and_division():
    s = Scalar(8, [1, 2, 0, -1])
    assert s * s.inv() == ONE
    assert (ONE / s) * s == ONE
    with pytest.raises(ZeroDivisionError):
        ZERO.inv()


def test_to_complex():
    z = Scalar.zeta(8)
    assert abs(z.to_complex() - cmath.exp(2j * math.pi / 8)) < 1e-12


@settings(max_examples=60, deadline=None)
@given(pairs())
def test_field_axioms(t):
    a, b, c = t
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == ZERO
    if not a.is_zero():
        assert a * a.inv() == ONE


@settings(max_examples=60, deadline=None)
@given(pairs())
def test_conj_is_involutive_automorphism(t):
    a, b, _ = t
    assert a.conj().conj() == a
    assert (a * b).conj() == a.conj() * b.conj()
    assert (a + b).conj() == a.conj() + b.conj()


@settings(max_examples=40, deadline=None)
@given(pairs())
def test_complex_embedding_is_a_ring_map(t):
    a, b, _ = t
    assert abs((a * b).to_complex() - a.to_complex() * b.to_complex()) < 1e-6 * (1 + abs(a.to_complex() * b.to_complex()))
    assert abs(a.conj().to_complex() - a.to_complex().conjugate()) < 1e-9 * (1 + abs(a.to_complex()))


@settings(max_examples=60, deadline=None)
@given(any_order.flatmap(scalars))
def test_text_round_trip(s):
    assert parse_scalar(str(s)) == s
    assert parse_scalar(scalar_text(s)) == s
    assert scalar_text(parse_scalar(scalar_text(s))) == scalar_text(s)


def test_canonical_rational_text():
    assert scalar_text(as_scalar(Fraction(-6, 4))) == "-3/2"
    assert scalar_text(Scalar.rational(3, 4)) == "3"
    assert scalar_text(parse_scalar("4/-6")) == "-2/3"
    assert scalar_text(Scalar.i()) == "cyclo(4)[0, 1]"


@pytest.mark.parametrize("bad", ["cyclo(4)[1]", "cyclo(0)[]", "1/0", "abc", "cyclo(3)[1, x]", 7])
def test_parse_rejects_malformed(bad):
    with pytest.raises(ParseError):
        parse_scalar(bad)


def test_sign_examples():
    assert scalar_sign(ZERO) == "zero"
    assert scalar_sign(as_scalar("-5/3")) == "negative"
    # zeta_8 + zeta_8^7 = 2 cos(pi/4) = sqrt 2
    root2 = Scalar.zeta(8, 1) + Scalar.zeta(8, 7)
    assert root2 * root2 == as_scalar(2)
    assert scalar_sign(root2) == "positive"
    assert scalar_sign(-root2) == "negative"


def test_sign_rejects_non_real():
    with pytest.raises(NotReal):
        scalar_sign(Scalar.i())


def test_sign_near_zero_needs_rounds():
    # sqrt2 - p/q with a very close rational: separation needs extra precision
    root2 = Scalar.zeta(8, 1) + Scalar.zeta(8, 7)
    close = root2 - as_scalar(Fraction(1572584048032918633353217, 1111984844349868137938112))
    assert scalar_sign(close) in ("positive", "negative")
    with pytest.raises(PrecisionExhausted):
        scalar_sign(close, cap=1)


def test_sign_cap_from_environment(monkeypatch):
    root2 = Scalar.zeta(8, 1) + Scalar.zeta(8, 7)
    close = root2 - as_scalar(Fraction(1572584048032918633353217, 1111984844349868137938112))
    monkeypatch.setenv("HOPFSTAR_SIGN_CAP", "1")
    with pytest.raises(PrecisionExhausted):
        scalar_sign(close)


def test_sign_agrees_with_floats():
    rng = random.Random(7)
    checked = 0
    while checked < 100:
        n = rng.choice(ORDERS)
        s = Scalar(n, [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(DEGREE[n])])
        real = s + s.conj()
        value = real.to_complex().real
        if abs(value) <= 1e-6:
            continue
        expected = "positive" if value > 0 else "negative"
        assert scalar_sign(real) == expected
        checked += 1
