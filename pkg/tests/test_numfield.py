import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from folint.numfield import (
    QQ, FieldMismatchError, NumberField, find_roots_in_field, format_element,
    format_minpoly, poly_degree, poly_divmod, poly_eval, poly_gcd, poly_mul,
    sqrt_in_field,
)

GAUSS = NumberField((1, 0, 1))          # t^2 + 1
EISEN = NumberField((1, 1, 1))          # t^2 + t + 1
ROOT5 = NumberField((-5, 0, 1))         # t^2 - 5


def test_rational_arithmetic():
    a = QQ.element(Fraction(1, 2))
    b = QQ.element(Fraction(1, 3))
    assert (a + b).as_fraction() == Fraction(5, 6)
    assert (a * b).as_fraction() == Fraction(1, 6)
    assert QQ.element(Fraction(2, 3)).inverse().as_fraction() == Fraction(3, 2)


def test_generator_reduction():
    a = EISEN.gen()
    assert a * a == EISEN.element((-1, -1))      # a^2 = -a - 1
    s = ROOT5.gen()
    assert (1 + s) * (1 - s) == ROOT5.element(-4)


def test_inverse_in_extension():
    a = EISEN.gen()
    assert a.inverse() == EISEN.element((-1, -1))
    assert a * a.inverse() == EISEN.one()
    s = ROOT5.gen()
    assert s.inverse() == s / 5
    with pytest.raises(ZeroDivisionError):
        EISEN.zero().inverse()


def test_field_mismatch_rejected():
    with pytest.raises(FieldMismatchError):
        GAUSS.gen() + EISEN.gen()


def test_minimal_polynomial_validation():
    with pytest.raises(ValueError):
        NumberField((2, 0, 2))           # not monic
    with pytest.raises(ValueError):
        NumberField((-4, 0, 1))          # t^2 - 4 has rational roots
    with pytest.raises(ValueError):
        NumberField((1, -3, 3, -1, 0, 1) if False else (-8, 0, 0, 1))  # t^3 - 8
    quartic = NumberField((9, 0, -14, 0, 1))     # t^4 - 14 t^2 + 9
    assert not quartic.irreducibility_verified
    assert EISEN.irreducibility_verified


def test_parsing_and_formatting():
    e = GAUSS.parse("(8*a-1)")
    assert e == GAUSS.element((-1, 8))
    e2 = QQ.parse("-3/2+7")
    assert e2.as_fraction() == Fraction(11, 2)
    e3 = GAUSS.parse("-3/2*a+7")
    assert e3 == GAUSS.element((7, Fraction(-3, 2)))
    assert GAUSS.parse(format_element(e3)) == e3
    assert NumberField.from_string("t^2+t+1") == EISEN
    assert format_minpoly(ROOT5) == "t^2-5"


def test_roots_over_q():
    f = [QQ.element(-1), QQ.zero(), QQ.one()]          # t^2 - 1
    res = find_roots_in_field(f)
    assert {r.as_fraction() for r in res.roots} == {1, -1}
    assert res.remaining_degree == 0

    g = [QQ.element(-2), QQ.zero(), QQ.one()]          # t^2 - 2
    res = find_roots_in_field(g)
    assert res.roots == []
    assert res.remaining_degree == 2


def test_roots_in_extension():
    # t^2 + t + 1 splits over Q(a) with a^2 + a + 1 = 0
    f = [EISEN.one(), EISEN.one(), EISEN.one()]
    res = find_roots_in_field(f)
    assert res.remaining_degree == 0
    assert len(res.roots) == 2
    for r in res.roots:
        assert poly_eval(f, r).is_zero()
    assert EISEN.gen() in res.roots


def test_roots_cubic_over_eisenstein():
    # w^3 - 1 has all three roots in Q(j)
    f = [EISEN.element(-1), EISEN.zero(), EISEN.zero(), EISEN.one()]
    res = find_roots_in_field(f)
    assert res.remaining_degree == 0
    assert len(res.roots) == 3


def test_roots_mixed_cubic_over_gauss():
    # (t - a)(t^2 + t + 3): the only K-root is a, quadratic part stays
    a = GAUSS.gen()
    quad = [GAUSS.element(3), GAUSS.one(), GAUSS.one()]
    f = poly_mul([-a, GAUSS.one()], quad, GAUSS)
    res = find_roots_in_field(f)
    assert res.roots == [a]
    assert res.remaining_degree == 2


def test_sqrt_in_field():
    assert sqrt_in_field(ROOT5.element(Fraction(9, 4))) == ROOT5.element(Fraction(3, 2))
    # (3 - sqrt5)/2 = ((sqrt5 - 1)/2)^2
    val = ROOT5.element((Fraction(3, 2), Fraction(-1, 2)))
    root = sqrt_in_field(val)
    assert root is not None and root * root == val
    assert sqrt_in_field(ROOT5.element(2)) is None


def test_divides_after_roots():
    rng = random.Random(7)
    for _ in range(25):
        coeffs = [EISEN.element((rng.randint(-3, 3), rng.randint(-3, 3)))
                  for _ in range(4)]
        coeffs.append(EISEN.one())
        res = find_roots_in_field(coeffs)
        rebuilt = res.cofactor
        for r in res.roots:
            while True:
                quo, rem = poly_divmod(coeffs, [-r, EISEN.one()], EISEN)
                if rem:
                    break
                coeffs = quo
        assert poly_degree(coeffs) == poly_degree(rebuilt)


FIELDS = [QQ, GAUSS, EISEN, ROOT5, NumberField((9, 0, -14, 0, 1))]


def _random_element(field, rng):
    return field.element(tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 5))
                               for _ in range(field.degree)))


def test_field_axioms_bulk():
    """Acceptance 7(e): exact field axioms on >= 1000 random triples."""
    rng = random.Random(20240811)
    checked = 0
    while checked < 1050:
        field = FIELDS[checked % len(FIELDS)]
        a, b, c = (_random_element(field, rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
        if not a.is_zero():
            assert a * a.inverse() == field.one()
        checked += 1


@given(st.integers(-50, 50), st.integers(-50, 50),
       st.integers(-50, 50), st.integers(-50, 50))
def test_canonical_form_idempotent(p0, p1, q0, q1):
    e = EISEN.element((p0, p1))
    again = EISEN.element(e.coeffs)
    assert e == again and e.coeffs == again.coeffs
    f = GAUSS.element((q0, q1))
    assert (f - f).is_zero()


def test_poly_gcd_monic():
    one = QQ.one()
    f = poly_mul([QQ.element(-1), one], [QQ.element(-2), one], QQ)
    g = poly_mul([QQ.element(-1), one], [QQ.element(3), one], QQ)
    d = poly_gcd(f, g, QQ)
    assert d == [QQ.element(-1), one]
