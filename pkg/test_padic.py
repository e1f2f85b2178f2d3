#!/usr/bin/env python3
"""
Tame Langlands Workbench - p-adic arithmetic tests
"""

from fractions import Fraction

import pytest
from hypothesis import given, strategies

from app.algebra.padic import PadicNumber, sqrt_hensel, teichmuller, v_p
from app.exceptions import DomainError, PrecisionExhausted


def test_make_moves_p_factors_into_valuation():
    x = PadicNumber.make(3, 0, 9, 12)
    assert x.valuation == 2
    assert x.precision == 10
    assert x.unit == 1


def test_cancellation_reduces_precision():
    a = PadicNumber.from_int(1, 3, 12)
    b = PadicNumber.from_int(1 + 3 ** 5, 3, 12)
    diff = b - a
    assert diff.valuation == 5
    assert diff.precision == 7
    assert diff == 3 ** 5


def test_exhausted_precision_raises():
    with pytest.raises(PrecisionExhausted):
        PadicNumber.make(3, 0, 1, 0)


def test_equal_values_cancel_to_zero():
    a = PadicNumber.from_int(7, 5, 10)
    assert (a - a).is_zero


def test_fractions_and_digits():
    x = PadicNumber.from_fraction(Fraction(1, 3), 3, 12)
    assert x.valuation == -1
    assert x.unit == 1
    assert x.to_fraction() == Fraction(1, 3)
    assert PadicNumber.from_int(5, 3, 4).digits() == [2, 1, 0, 0]


def test_legendre_and_square_classes():
    assert PadicNumber.from_int(2, 3, 12).legendre() == -1
    assert PadicNumber.from_int(7, 3, 12).is_square()
    assert not PadicNumber.from_int(3, 3, 12).is_square()
    with pytest.raises(DomainError):
        PadicNumber.zero(3, 12).legendre()


def test_hensel_square_root():
    x = PadicNumber.from_int(7, 3, 12)
    root = sqrt_hensel(x)
    assert root * root == x
    assert root.residue() == 1


def test_square_root_of_nonsquare_raises():
    with pytest.raises(DomainError):
        sqrt_hensel(PadicNumber.from_int(2, 3, 12))


def test_teichmuller_is_a_root_of_unity():
    omega = teichmuller(2, 5, 10)
    assert omega ** 4 == 1
    assert omega.residue() == 2
    with pytest.raises(DomainError):
        teichmuller(0, 5, 10)


def test_valuation_of_integers():
    assert v_p(250, 5) == 3
    assert v_p(-12, 3) == 1


@given(strategies.integers(1, 10 ** 6), strategies.integers(1, 10 ** 6))
def test_division_undoes_multiplication(m, n):
    a = PadicNumber.from_int(m, 7, 10)
    b = PadicNumber.from_int(n, 7, 10)
    assert (a * b) / b == a


@given(strategies.integers(-10 ** 6, 10 ** 6), strategies.integers(-10 ** 6, 10 ** 6))
def test_addition_matches_integers(m, n):
    expected = PadicNumber.from_int(m + n, 5, 12) if m + n else PadicNumber.zero(5, 12)
    a = PadicNumber.from_int(m, 5, 12) if m else PadicNumber.zero(5, 12)
    b = PadicNumber.from_int(n, 5, 12) if n else PadicNumber.zero(5, 12)
    assert a + b == expected
