import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from sympy import factorint, multiplicity

from alab.places import (INFINITE, Place, PlaceError, fmt_rational, normalized_abs,
                         product_formula, relevant_places, s_integer_window_test, valuation)

PRIMES = [2, 3, 5, 7, 11, 13]

nonzero_rationals = st.fractions().filter(lambda q: q != 0)


def oracle_abs(q: Fraction, p: int) -> Fraction:
    # p^-v straight from the factorizations of numerator and denominator
    v = factorint(abs(q.numerator)).get(p, 0) - factorint(q.denominator).get(p, 0)
    return Fraction(1, p ** v) if v >= 0 else Fraction(p ** -v)


@pytest.mark.parametrize("q,p,v", [("3/2", 2, -1), ("2000", 5, 3), ("1", 7, 0), ("-48/5", 2, 4)])
def test_valuation_examples(q, p, v):
    assert valuation(Fraction(q), p) == v


def test_valuation_errors():
    with pytest.raises(PlaceError, match="zero"):
        valuation(Fraction(0), 3)
    with pytest.raises(PlaceError):
        valuation(Fraction(3), 4)


def test_abs_examples():
    assert normalized_abs(Fraction(3, 2), 2) == 2
    assert normalized_abs(Fraction(3, 2), INFINITE) == Fraction(3, 2)
    assert normalized_abs(Fraction(3, 2), 3) == Fraction(1, 3)
    for s in [INFINITE] + PRIMES:
        assert normalized_abs(Fraction(1), s) == 1
    assert float(normalized_abs(Fraction(-7, 4), None)) == 1.75


def test_place_parsing():
    assert Place.parse("inf") == INFINITE
    assert Place.parse(" 5 ").prime == 5
    with pytest.raises(PlaceError):
        Place(9)


@pytest.mark.parametrize("q", ["3/2", "-1", "2250/77", "1", "-1024/3125"])
def test_product_formula_examples(q):
    assert product_formula(Fraction(q)) == 1


def test_product_formula_2250_77_by_hand():
    q = Fraction(2250, 77)
    # 2250 = 2 * 3^2 * 5^3, 77 = 7 * 11
    by_hand = q * Fraction(1, 2) * Fraction(1, 9) * Fraction(1, 125) * 7 * 11
    assert by_hand == 1
    assert [str(s) for s in relevant_places(q)] == ["inf", "2", "3", "5", "7", "11"]


def test_product_formula_fuzz():
    rng = random.Random(7)
    for _ in range(1000):
        num = rng.choice([-1, 1]) * rng.randint(1, 10 ** 12)
        q = Fraction(num, rng.randint(1, 10 ** 12))
        assert product_formula(q) == 1


def test_product_formula_zero():
    with pytest.raises(PlaceError):
        product_formula(Fraction(0))


@given(nonzero_rationals, st.sampled_from(PRIMES))
def test_abs_matches_factorization_oracle(q, p):
    assert normalized_abs(q, p) == oracle_abs(q, p)
    assert valuation(q, p) == multiplicity(p, abs(q.numerator)) - multiplicity(p, q.denominator)


@given(nonzero_rationals, nonzero_rationals, st.sampled_from([None] + PRIMES))
def test_multiplicativity(q, r, s):
    assert normalized_abs(q * r, s) == normalized_abs(q, s) * normalized_abs(r, s)


@given(nonzero_rationals, nonzero_rationals, st.sampled_from(PRIMES))
def test_ultrametric(q, r, p):
    if q + r == 0:
        return
    a, b, c = normalized_abs(q, p), normalized_abs(r, p), normalized_abs(q + r, p)
    assert c <= max(a, b)
    if a != b:
        assert c == max(a, b)


@pytest.mark.parametrize("q,S,c,expected", [
    ("1/5", {5}, 1, True), ("1/3", {5}, 1, False), ("7/25", {5}, 1, True),
    ("6/5", {5}, 1, False), ("6/5", {5}, 2, True), ("1/35", {5, 7}, 1, True),
])
def test_window_examples(q, S, c, expected):
    assert s_integer_window_test(Fraction(q), S, c) is expected


@given(st.fractions(), st.sets(st.sampled_from(PRIMES), min_size=1, max_size=3),
       st.fractions(min_value=1, max_value=100))
def test_window_symmetric_and_contains_0_1(q, S, c):
    assert s_integer_window_test(q, S, c) == s_integer_window_test(-q, S, c)
    assert s_integer_window_test(Fraction(0), S, c)
    assert s_integer_window_test(Fraction(1), S, c)


def test_window_errors():
    with pytest.raises(PlaceError):
        s_integer_window_test(Fraction(1), set(), 1)
    with pytest.raises(PlaceError):
        s_integer_window_test(Fraction(1), {5}, 0)


def test_fmt_rational():
    assert fmt_rational(Fraction(-6, 4)) == "-3/2"
    assert fmt_rational(Fraction(4)) == "4"
