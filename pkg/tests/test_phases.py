import cmath
import math
from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from tubetwist.phases import ONE, Phase, phase, principal_sqrt

exponents = st.fractions(min_value=-5, max_value=5, max_denominator=48)


@given(exponents, exponents, exponents)
def test_multiplication_is_associative_and_commutative(a, b, c):
    p, q, r = Phase(a), Phase(b), Phase(c)
    assert (p * q) * r == p * (q * r)
    assert p * q == q * p


@given(exponents)
def test_conjugate_is_inverse(a):
    p = Phase(a)
    assert p * p.conjugate() == ONE
    assert p / p == ONE


@given(exponents)
def test_to_complex_matches_exponential(a):
    p = Phase(a)
    assert abs(p.to_complex() - cmath.exp(2j * math.pi * float(a))) < 1e-12
    assert 0 <= p.num < p.den


@given(exponents)
def test_principal_sqrt_squares_back(a):
    p = Phase(a)
    r = principal_sqrt(p)
    assert r * r == p
    assert r.exponent < Fraction(1, 2)


def test_quarter_turns_are_exact():
    assert Phase(1, 4).to_complex() == 1j
    assert Phase(1, 2).to_complex() == -1
    assert Phase(3, 4).to_complex() == -1j


def test_parsing_and_reduction():
    assert phase("2/4") == Phase(1, 2)
    assert str(Phase(-1, 3)) == "2/3"
    assert phase(Fraction(5, 4)) == Phase(1, 4)
    assert Phase(1, 2) * 2 == -2
