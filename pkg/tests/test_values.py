"""Polynomial value type: ring laws, evaluation, mode checks."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dcrel.values import (Mode, P_SYMBOL, Poly, check_mode, is_one, is_zero, one,
                          value_str, value_to_json, zero)

fractions = st.fractions(min_value=-10, max_value=10, max_denominator=50)
polys = st.lists(fractions, min_size=0, max_size=6).map(Poly)


@given(polys, polys, polys)
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + Poly(()) == a
    assert a * Poly((1,)) == a


@given(polys, polys, fractions)
def test_evaluate_is_a_homomorphism(a, b, x):
    assert (a + b).evaluate(x) == a.evaluate(x) + b.evaluate(x)
    assert (a * b).evaluate(x) == a.evaluate(x) * b.evaluate(x)
    assert (1 - a).evaluate(x) == 1 - a.evaluate(x)


@given(polys, st.integers(min_value=0, max_value=4))
def test_pow_matches_repeated_product(a, k):
    expected = Poly((1,))
    for _ in range(k):
        expected = expected * a
    assert a ** k == expected


def test_symbol_basics():
    p = P_SYMBOL
    assert p.degree == 1
    assert (p * p + p).coeffs == (Fraction(0), Fraction(1), Fraction(1))
    assert str(p * p - p ** 6 + 1) == "1 + p^2 - p^6"
    assert p.evaluate(Fraction(1, 2)) == Fraction(1, 2)


def test_trailing_zeros_trimmed():
    assert Poly((1, 2, 0, 0)).coeffs == (Fraction(1), Fraction(2))
    assert Poly((0, 0)).coeffs == ()
    assert Poly((0, 0)).degree == -1  # zero polynomial
    assert Poly(()).is_constant


def test_constants_compare_and_hash_like_numbers():
    assert Poly((Fraction(3, 4),)) == Fraction(3, 4)
    assert hash(Poly((Fraction(3, 4),))) == hash(Fraction(3, 4))
    assert Poly(()) == 0
    assert Poly((1,)) == 1
    assert P_SYMBOL != Fraction(1, 2)


def test_int_and_fraction_coercion():
    assert 1 - P_SYMBOL == Poly((1, -1))
    assert Fraction(1, 2) * P_SYMBOL == Poly((0, Fraction(1, 2)))
    assert P_SYMBOL - 1 == Poly((-1, 1))
    with pytest.raises(TypeError):
        P_SYMBOL + 0.5


def test_constant_value_requires_constant():
    assert Poly((Fraction(2, 3),)).constant_value() == Fraction(2, 3)
    with pytest.raises(ValueError):
        P_SYMBOL.constant_value()


def test_zero_one_helpers():
    for mode in Mode:
        z, o = zero(mode), one(mode)
        assert is_zero(z) and not is_zero(o)
        assert is_one(o) and not is_one(z)
        check_mode(z, mode)
        check_mode(o, mode)


def test_check_mode_rejects_mismatches_and_out_of_range():
    with pytest.raises(TypeError):
        check_mode(0.5, Mode.RATIONAL)
    with pytest.raises(TypeError):
        check_mode(Fraction(1, 2), Mode.FLOAT)
    with pytest.raises(TypeError):
        check_mode(P_SYMBOL, Mode.RATIONAL)
    with pytest.raises(ValueError):
        check_mode(Fraction(3, 2), Mode.RATIONAL)
    with pytest.raises(ValueError):
        check_mode(-0.25, Mode.FLOAT)
    check_mode(P_SYMBOL, Mode.POLY)


def test_value_str_and_json_encodings():
    assert value_str(Fraction(17, 64)) == "17/64"
    assert value_str(0.5) == "0.5"
    assert value_str(P_SYMBOL ** 2) == "p^2"
    assert value_to_json(Fraction(17, 64)) == "17/64"
    assert value_to_json(0.25) == 0.25
    assert value_to_json(P_SYMBOL * Fraction(1, 2)) == [0, "1/2"]
    assert value_to_json(Poly((0, 0, 1, 0, 0, 1, -1))) == [0, 0, 1, 0, 0, 1, -1]
