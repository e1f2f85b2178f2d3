#!/usr/bin/env python3
"""
Tame Langlands Workbench - Multiplicative character tests
"""

from fractions import Fraction

import numpy as np
import pytest

from app.algebra.exact import CycInt
from app.algebra.extensions import build_extension
from app.algebra.padic import PadicNumber
from app.exceptions import DomainError
from app.models.primes import ExtensionKind, build_prime_config
from app.services.character_service import character_service


def level_one(ext):
    """chi with alpha = x / p or x^-1, trivial on varpi and on Teichmuller units"""
    if ext.e == 1:
        alpha = ext.element([0, 1], k=-1)
    else:
        alpha = ext.gen().inverse()
    return character_service.character(ext, Fraction(0), 0, alpha)


def test_trivial_and_unramified_values(unram_quad):
    trivial = character_service.trivial(unram_quad)
    assert character_service.evaluate(trivial, unram_quad.element([1, 1])) == CycInt.one()
    nu = character_service.unramified_quadratic(unram_quad)
    assert character_service.evaluate(nu, unram_quad.scalar(3)) == CycInt.from_int(-1)
    assert character_service.evaluate(nu, unram_quad.gen()) == CycInt.one()
    with pytest.raises(DomainError):
        character_service.evaluate(nu, unram_quad.zero())


def test_level_and_alpha(unram_quad, ram_quad):
    assert level_one(unram_quad).level == 1
    assert level_one(ram_quad).level == 1
    chi = character_service.character(unram_quad, Fraction(0), 0, unram_quad.one())
    assert chi.alpha is None and chi.level == 0


def test_alpha_relation_holds(unram_quad):
    chi = level_one(unram_quad)
    alpha = character_service.alpha_of_chi(chi, np.random.default_rng(3), 10)
    assert alpha == chi.alpha


def test_group_operations(unram_quad):
    rng = np.random.default_rng(11)
    chi = character_service.random_character(unram_quad, rng, 2)
    product = character_service.product(chi, character_service.inverse(chi))
    assert character_service.is_trivial(product)
    assert character_service.same_character(character_service.power(chi, 2), character_service.product(chi, chi))


def test_classification_unramified(unram_quad):
    pair = character_service.classify(level_one(unram_quad))
    assert pair.regular and pair.admissible and pair.minimal
    assert pair.level == 1
    assert character_service.x_coefficient(pair.chi).valuation == -1
    base_alpha = unram_quad.scalar(Fraction(1, 3))
    flat = character_service.classify(character_service.character(unram_quad, Fraction(0), 0, base_alpha))
    assert not flat.regular
    assert not flat.minimal


def test_classification_ramified(ram_quad):
    pair = character_service.classify(level_one(ram_quad))
    assert pair.regular and pair.admissible and pair.minimal


def test_conjugate_twice_is_identity(unram_quad):
    chi = level_one(unram_quad)
    twice = character_service.conjugate(character_service.conjugate(chi, 1), 1)
    assert character_service.same_character(twice, chi)
    assert not character_service.same_character(character_service.conjugate(chi, 1), chi)


def test_aleph_for_unramified_quadratic(unram_quad):
    aleph = character_service.aleph_character(unram_quad)
    assert aleph.uniformizer_phase == Fraction(1, 2)
    assert aleph.tame_exponent == 0


def test_omega_choices(unram_quad, ram_quad):
    omegas = character_service.omega_characters(unram_quad)
    assert len(omegas) == 4
    aleph = character_service.aleph_character(unram_quad)
    for omega in omegas:
        assert character_service.same_character(character_service.restrict_to_base(omega), aleph)
    assert [o.uniformizer_phase for o in character_service.omega_characters(ram_quad)] == \
        [Fraction(1, 4), Fraction(3, 4)]
    with pytest.raises(DomainError):
        character_service.omega_characters(build_extension(build_prime_config(7, 8, 3), ExtensionKind.UNRAM_L))


def test_restriction_of_norm_inflation_squares(unram_quad, ram_quad):
    for ext in (unram_quad, ram_quad):
        base = character_service.base_of(ext)
        phi = character_service.character(base, Fraction(1, 3), 1)
        inflated = character_service.compose_with_norm(phi, ext)
        restricted = character_service.restrict_to_base(inflated)
        assert character_service.same_character(restricted, character_service.power(phi, 2))


def test_delta_twist_unramified_is_quadratic(unram_quad):
    pair = character_service.classify(level_one(unram_quad))
    delta = character_service.delta_twist(pair)
    assert character_service.same_character(delta, character_service.unramified_quadratic(unram_quad))


def test_delta_twist_needs_regular_pair(unram_quad):
    pair = character_service.classify(character_service.trivial(unram_quad))
    with pytest.raises(DomainError):
        character_service.delta_twist(pair)


def test_ramified_delta_is_quadratic_on_units(ram_quad):
    pair = character_service.classify(level_one(ram_quad))
    delta = character_service.delta_twist(pair)
    assert delta.tame_exponent == 1
    assert character_service.evaluate(delta, ram_quad.gen()) ** 4 == CycInt.one()


def test_delta_EF_is_the_discriminant_character(unram_quad, ram_quad):
    p3 = PadicNumber.from_int(3, 3, 12)
    two = PadicNumber.from_int(2, 3, 12)
    unram = character_service.delta_EF(unram_quad)
    assert character_service.evaluate_base(unram, p3) == CycInt.from_int(-1)
    assert character_service.evaluate_base(unram, two) == CycInt.one()
    ram = character_service.delta_EF(ram_quad)
    assert character_service.evaluate_base(ram, p3) == CycInt.from_int(-1)
    assert character_service.evaluate_base(ram, two) == CycInt.from_int(-1)


def test_zeta_root(unram_quad, ram_quad):
    x = ram_quad.gen()
    assert character_service.zeta_root(ram_quad, x).residue() == 1
    assert character_service.zeta_root(ram_quad, ram_quad.scalar(2) * x).residue() == 2
    with pytest.raises(DomainError):
        character_service.zeta_root(unram_quad, unram_quad.gen())
