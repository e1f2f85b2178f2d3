#!/usr/bin/env python3
"""
Tame Langlands Workbench - Tame extension tests

Construction rules, ring arithmetic, Galois action and the unit filtration.
"""

import logging
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies

from app.algebra.extensions import LevelTag, build_extension, smallest_nonresidue
from app.exceptions import ConfigError, DomainError
from app.models.primes import ExtensionKind, build_prime_config

logger = logging.getLogger(__name__)


def test_smallest_nonresidue():
    assert smallest_nonresidue(3) == 2
    assert smallest_nonresidue(5) == 2
    assert smallest_nonresidue(7) == 3


def test_invalid_prime_configs():
    with pytest.raises(ConfigError):
        build_prime_config(2)
    with pytest.raises(ConfigError):
        build_prime_config(9)
    with pytest.raises(ConfigError):
        build_prime_config(3, 4)
    with pytest.raises(ConfigError):
        build_prime_config(5, 12, 3)


def test_construction_domain_rules(prime3, prime7_cubic):
    logger.info("Testing extension construction rules...")
    with pytest.raises(ConfigError):
        build_extension(prime3, ExtensionKind.UNRAM_L)
    with pytest.raises(DomainError):
        build_extension(prime3, ExtensionKind.UNRAM_QUAD, 1)
    with pytest.raises(DomainError):
        build_extension(prime3, ExtensionKind.RAM_QUAD, 9)
    with pytest.raises(DomainError):
        build_extension(prime7_cubic, ExtensionKind.RAM_L)
    cubic = build_extension(prime7_cubic, ExtensionKind.RAM_GALOIS_L)
    assert cubic.is_galois and cubic.e == 3


def test_non_galois_cubic():
    prime = build_prime_config(11, 8, 3)
    ext = build_extension(prime, ExtensionKind.RAM_L)
    assert not ext.is_galois
    assert ext.galois_apply(3, ext.gen()) == ext.gen()
    with pytest.raises(DomainError):
        ext.galois_apply(1, ext.gen())
    with pytest.raises(DomainError):
        build_extension(prime, ExtensionKind.RAM_GALOIS_L)


def test_norms_and_traces(unram_quad, ram_quad, prime7_cubic):
    assert unram_quad.norm(unram_quad.gen()) == -2
    assert unram_quad.trace(unram_quad.gen()).is_zero
    assert ram_quad.norm(ram_quad.gen()) == -3
    cubic = build_extension(prime7_cubic, ExtensionKind.RAM_GALOIS_L)
    assert cubic.norm(cubic.gen()) == 7


def test_valuations(unram_quad, ram_quad):
    assert ram_quad.valuation(ram_quad.gen()) == 1
    assert ram_quad.valuation(ram_quad.scalar(3)) == 2
    assert unram_quad.valuation(unram_quad.scalar(3)) == 1
    assert unram_quad.valuation(unram_quad.gen()) == 0


def test_inverse(unram_quad):
    w = unram_quad.element([1, 1])
    assert w * w.inverse() == unram_quad.one()
    with pytest.raises(DomainError):
        unram_quad.zero().inverse()


def test_quadratic_conjugation(unram_quad, ram_quad):
    for ext in (unram_quad, ram_quad):
        x = ext.gen()
        assert ext.galois_apply(1, x) == -x
        w = ext.element([2, 5])
        assert ext.galois_apply(1, ext.galois_apply(1, w)) == w


def test_cubic_galois_generator_has_order_three(prime7_cubic):
    for kind in (ExtensionKind.UNRAM_L, ExtensionKind.RAM_GALOIS_L):
        ext = build_extension(prime7_cubic, kind)
        x = ext.gen()
        moved = ext.galois_apply(1, ext.galois_apply(1, ext.galois_apply(1, x)))
        assert moved == x
        assert ext.galois_apply(1, x) != x


def test_unit_levels_unramified(unram_quad):
    w = unram_quad.element([1, 9])
    assert unram_quad.unit_level_closed(w) == 2
    assert unram_quad.unit_level(w) == 2
    assert unram_quad.depth(2) == 2
    assert unram_quad.unit_level_closed(unram_quad.gen()) == 0
    assert unram_quad.unit_level(unram_quad.gen()) == 0


def test_unit_levels_ramified(ram_quad):
    w = ram_quad.element([1, 1])
    assert ram_quad.unit_level_closed(w) == 1
    assert ram_quad.unit_level(w) == 1
    assert ram_quad.depth(1) == Fraction(1, 2)
    assert ram_quad.unit_level_closed(ram_quad.gen()) == LevelTag.NOT_IN_FU
    assert ram_quad.depth(LevelTag.NOT_IN_FU) == 0


def test_base_elements_have_no_depth(ram_quad):
    level = ram_quad.unit_level_closed(ram_quad.scalar(5))
    assert level == LevelTag.IN_F
    with pytest.raises(DomainError):
        ram_quad.depth(level)


def test_torus_class_counts(unram_quad, ram_quad):
    assert len(list(unram_quad.torus_classes(1))) == 4
    assert len(list(unram_quad.torus_classes(2))) == 12
    assert len(list(ram_quad.torus_classes(3))) == 6


@settings(max_examples=25, deadline=None)
@given(strategies.integers(0, 2 ** 31))
def test_norm_is_multiplicative(seed):
    ext = build_extension(build_prime_config(3, 12, 2), ExtensionKind.UNRAM_QUAD)
    rng = np.random.default_rng(seed)
    a, b = ext.random_unit(rng), ext.random_unit(rng)
    assert ext.norm(a * b) == ext.norm(a) * ext.norm(b)


@settings(max_examples=25, deadline=None)
@given(strategies.integers(0, 2 ** 31))
def test_conjugation_is_a_ring_map(seed):
    ext = build_extension(build_prime_config(3, 12, 2), ExtensionKind.RAM_QUAD, 3)
    rng = np.random.default_rng(seed)
    a, b = ext.random_unit(rng), ext.random_unit(rng)
    assert ext.galois_apply(1, a * b) == ext.galois_apply(1, a) * ext.galois_apply(1, b)


def test_log_exp_domains(unram_quad):
    assert unram_quad.log(unram_quad.one()).is_zero
    with pytest.raises(DomainError):
        unram_quad.log(unram_quad.gen())
    with pytest.raises(DomainError):
        unram_quad.exp(unram_quad.one())
    assert unram_quad.exp(unram_quad.zero()) == unram_quad.one()


def test_given_delta_is_kept(prime3):
    ext = build_extension(prime3, ExtensionKind.RAM_QUAD, 12)
    assert ext.delta == 12
    assert ext.delta_padic() == 12
    assert ext.norm(ext.gen()) == -12
    assert build_extension(prime3, ExtensionKind.RAM_QUAD, -3).delta == -3
    assert build_extension(prime3, ExtensionKind.RAM_QUAD, 27).delta == 3
