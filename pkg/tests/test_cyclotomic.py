from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from invlat.cyclotomic import (
    CycNum,
    cyc_from_json,
    cyc_to_json,
    cyclotomic_polynomial,
    euler_phi,
    exact_sign,
    parse_scalar,
    sqrt_rational,
    zeta,
)
from invlat.errors import InvalidInputError

CONDUCTORS = [1, 3, 4, 5, 7, 8, 9, 12]

small_fractions = st.fractions(
    min_value=-4, max_value=4, max_denominator=6
)


def random_cyc(draw, conductor):
    coeffs = [draw(small_fractions) for _ in range(euler_phi(conductor))]
    return CycNum(conductor, coeffs)


cyc_elements = st.integers(0, len(CONDUCTORS) - 1).flatmap(
    lambda i: st.builds(
        CycNum,
        st.just(CONDUCTORS[i]),
        st.lists(
            small_fractions,
            min_size=euler_phi(CONDUCTORS[i]),
            max_size=euler_phi(CONDUCTORS[i]),
        ),
    )
)


def test_euler_phi_small():
    assert [euler_phi(n) for n in range(1, 13)] == [
        1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4,
    ]


def test_cyclotomic_polynomial_values():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_conductor_is_canonical():
    # 2 mod 4 conductors collapse: zeta(6) = -zeta(3)^2 lives at conductor 3
    z6 = zeta(6)
    assert z6.conductor == 3
    assert z6 == -(zeta(3) ** 2)
    # rationals always canonicalize to conductor 1
    assert (zeta(5) - zeta(5)).conductor == 1
    assert (zeta(8) ** 8).conductor == 1


def test_zeta_orders():
    for n in CONDUCTORS:
        z = zeta(n)
        assert z ** n == CycNum.rational(1)
        if n > 2:
            assert z ** (n - 1) != CycNum.rational(1)


@given(cyc_elements, cyc_elements)
def test_addition_commutes(x, y):
    assert x + y == y + x


@given(cyc_elements, cyc_elements)
def test_multiplication_commutes(x, y):
    assert x * y == y * x


@given(cyc_elements, cyc_elements, cyc_elements)
@settings(max_examples=60)
def test_distributive(x, y, z):
    assert x * (y + z) == x * y + x * z


@given(cyc_elements)
def test_additive_inverse(x):
    assert (x - x).is_zero()
    assert x + (-x) == CycNum.rational(0)


@given(cyc_elements)
def test_multiplicative_inverse(x):
    if x.is_zero():
        with pytest.raises(ZeroDivisionError):
            x.inverse()
    else:
        assert x * x.inverse() == CycNum.rational(1)


@given(cyc_elements, cyc_elements)
@settings(max_examples=60)
def test_conjugation_is_ring_map(x, y):
    assert (x + y).conjugate() == x.conjugate() + y.conjugate()
    assert (x * y).conjugate() == x.conjugate() * y.conjugate()
    assert x.conjugate().conjugate() == x


@given(cyc_elements)
def test_real_and_skew_parts(x):
    re = x.real_part()
    assert re.is_real()
    assert re + x.skew_part() == x
    assert (x * x.conjugate()).is_real()


@given(cyc_elements)
@settings(max_examples=60)
def test_numeric_embedding_respects_products(x):
    with mpmath.workprec(80):
        approx = x.numeric(80)
        square = (x * x).numeric(80)
        assert abs(approx * approx - square) < mpmath.mpf(2) ** -40


@given(cyc_elements)
@settings(max_examples=60)
def test_minimal_polynomial_annihilates(x):
    poly = x.minimal_polynomial()
    acc = CycNum.rational(0)
    power = CycNum.rational(1)
    for coeff in poly:
        acc = acc + power * CycNum.rational(coeff)
        power = power * x
    assert acc.is_zero()
    assert poly[-1] == 1


def test_minimal_polynomial_examples():
    assert zeta(4).minimal_polynomial() == (Fraction(1), Fraction(0), Fraction(1))
    assert zeta(3).minimal_polynomial() == (Fraction(1), Fraction(1), Fraction(1))
    half = CycNum.rational(Fraction(1, 2))
    assert half.minimal_polynomial() == (Fraction(-1, 2), Fraction(1))


@pytest.mark.parametrize(
    "value",
    [Fraction(2), Fraction(3), Fraction(5), Fraction(-1), Fraction(-3),
     Fraction(4, 9), Fraction(-7, 2), Fraction(6)],
)
def test_sqrt_rational_squares_back(value):
    root = sqrt_rational(value)
    assert root * root == CycNum.rational(value)


def test_sqrt_of_negative_is_not_real():
    assert not sqrt_rational(Fraction(-3)).is_real()
    assert sqrt_rational(Fraction(-1)) in (zeta(4), -zeta(4))


def test_exact_sign():
    assert exact_sign(CycNum.rational(0)) == 0
    assert exact_sign(CycNum.rational(Fraction(-3, 7))) == -1
    two_cos = zeta(5) + zeta(5).conjugate()  # 2cos(72 degrees) > 0
    assert exact_sign(two_cos) == 1
    assert exact_sign(sqrt_rational(2) - CycNum.rational(1)) == 1
    assert exact_sign(sqrt_rational(2) - CycNum.rational(2)) == -1
    with pytest.raises(ValueError):
        exact_sign(zeta(3))


@pytest.mark.parametrize(
    "text,expected",
    [
        ("z3", zeta(3)),
        ("-z4", -zeta(4)),
        ("1/2", CycNum.rational(Fraction(1, 2))),
        ("1 + z3", CycNum.rational(1) + zeta(3)),
        ("2/3*z8^3 - 1", zeta(8) ** 3 * CycNum.rational(Fraction(2, 3)) - 1),
    ],
)
def test_parse_scalar(text, expected):
    assert parse_scalar(text) == expected


def test_parse_scalar_rejects_junk():
    for bad in ["", "z", "q5", "1 +", "z3**2", "zeta(3)"]:
        with pytest.raises(InvalidInputError):
            parse_scalar(bad)


@given(cyc_elements)
@settings(max_examples=60)
def test_json_round_trip(x):
    assert cyc_from_json(cyc_to_json(x)) == x


def test_str_round_trip_examples():
    for x in [zeta(3), -zeta(4), CycNum.rational(Fraction(5, 3)),
              zeta(8) + zeta(8) ** 3, CycNum.rational(1) - zeta(7)]:
        assert parse_scalar(str(x)) == x
