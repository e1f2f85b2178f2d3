#!/usr/bin/env python3
"""
Tame Langlands Workbench - Exact value tests

Cyclotomic integers in canonical form and q^(1/2)-graded exact values.
"""

import logging
from fractions import Fraction

import pytest
from hypothesis import given, strategies

from app.algebra.exact import CycInt, ExactValue
from app.exceptions import ConductorOverflow, DomainError

logger = logging.getLogger(__name__)


def test_fourth_root_squares_to_minus_one():
    i = CycInt.root_of_unity(4, 1)
    assert i * i == CycInt.from_int(-1)
    assert i.root_phase() == Fraction(1, 4)


def test_cube_roots_sum_to_zero():
    assert CycInt.from_terms(3, {0: 1, 1: 1, 2: 1}).is_zero()


def test_quadratic_gauss_sums():
    gauss3 = CycInt.from_terms(3, {0: 1, 1: 2})
    assert gauss3 * gauss3 == CycInt.from_int(-3)
    gauss5 = CycInt.from_terms(5, {0: 1, 1: 2, 4: 2})
    assert gauss5 * gauss5 == CycInt.from_int(5)


def test_conductor_two_mod_four_is_halved():
    zeta6 = CycInt.root_of_unity(6, 1)
    assert zeta6 == -CycInt.root_of_unity(3, 2)
    assert zeta6.conductor == 3


def test_minus_one_from_half_phase():
    assert CycInt.from_phase(Fraction(1, 2)) == CycInt.from_int(-1)
    assert CycInt.from_int(-1).sign() == -1


def test_non_root_has_no_phase():
    assert CycInt.from_terms(3, {0: 1, 1: 2}).root_phase() is None
    with pytest.raises(DomainError):
        CycInt.from_int(2).inverse()


def test_conductor_overflow():
    with pytest.raises(ConductorOverflow):
        CycInt.from_terms(40000, {1: 1})


@given(strategies.integers(1, 30), strategies.integers(0, 29), strategies.integers(1, 30), strategies.integers(0, 29))
def test_roots_multiply_by_adding_phases(m, k, n, j):
    a, b = Fraction(k, m), Fraction(j, n)
    assert CycInt.from_phase(a) * CycInt.from_phase(b) == CycInt.from_phase(a + b)


@given(strategies.integers(1, 24), strategies.integers(0, 23))
def test_conjugate_is_inverse_on_roots(m, k):
    zeta = CycInt.from_phase(Fraction(k, m))
    assert zeta * zeta.conj() == CycInt.one()
    assert zeta.inverse() == zeta.conj()


def test_integer_factors_of_q_move_into_exponent():
    logger.info("Testing canonical q-exponents...")
    assert ExactValue.make(3, 0, 3) == ExactValue.q_power(3, 2)
    assert ExactValue.q_power(3, 1) ** 2 == ExactValue.make(3, 0, 3)
    assert ExactValue.make(3, 0, 18).half_exp == 4


def test_gauss_sum_has_modulus_q_half():
    gauss = ExactValue.make(3, 0, CycInt.from_terms(3, {0: 1, 1: 2}))
    assert gauss * gauss == ExactValue.make(3, 2, -1)


def test_half_integer_offsets_do_not_add():
    with pytest.raises(DomainError):
        ExactValue.q_power(3, 1) + ExactValue.one(3)


def test_division_and_inverse():
    value = ExactValue.make(5, -3, CycInt.root_of_unity(8, 3))
    assert value / value == ExactValue.one(5)
    assert value * value.inverse() == ExactValue.one(5)
    with pytest.raises(DomainError):
        ExactValue.zero(5).inverse()


def test_values_over_different_q_do_not_mix():
    with pytest.raises(DomainError):
        ExactValue.one(3) * ExactValue.one(5)
