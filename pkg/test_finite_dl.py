#!/usr/bin/env python3
"""
Tame Langlands Workbench - Deligne-Lusztig tests for GL(n, q)
"""

from fractions import Fraction

import pytest

from app.algebra.finite_fields import GLnq
from app.exceptions import ConfigError, DomainError
from app.models.reports import CheckStatus
from app.services.character_service import character_service
from app.services.dl_service import dl_service


def test_group_orders():
    for n, q in ((2, 3), (3, 2)):
        group = dl_service.group(n, q)
        assert group.order() == group.expected_order()
    assert dl_service.group(2, 3).order() == 48


def test_sizes_outside_the_allowed_list():
    with pytest.raises(ConfigError):
        GLnq(4, 3)


def test_signs():
    assert dl_service.sign(2) == -1
    assert dl_service.sign(3) == 1
    assert dl_service.split_rank(3) == 1
    assert dl_service.split_rank(3, elliptic=False) == 3


def test_regular_character_counts():
    assert len(dl_service.regular_characters(dl_service.group(2, 3).ext, 3, 2)) == 6
    assert len(dl_service.regular_characters(dl_service.group(3, 2).ext, 2, 3)) == 6


@pytest.mark.parametrize("n,q", [(2, 3), (3, 2)])
def test_carter_sum_matches_orbit_formula(n, q):
    group = dl_service.group(n, q)
    field = group.ext
    elements = [s for s in range(1, field.q) if group.is_regular_elliptic(s)]
    for theta in dl_service.regular_characters(field, q, n):
        for s in elements:
            value = dl_service.dl_value(field, q, n, s, theta)
            assert value == dl_service.dl_value_from_carter(group, s, theta)
            assert value == dl_service.dl_value(field, q, n, field.power(s, q), theta)
            assert dl_service.normalizer_identity(group, s, theta)


def test_non_elliptic_element_rejected():
    group = dl_service.group(2, 3)
    theta = dl_service.regular_characters(group.ext, 3, 2)[0]
    with pytest.raises(DomainError):
        dl_service.dl_value(group.ext, 3, 2, 1, theta)
    with pytest.raises(DomainError):
        dl_service.dl_value(group.ext, 3, 2, group.ext.generator, dl_service.character(group.ext, 0))


def test_depth_zero_crosscheck(unram_quad):
    pair = character_service.classify(character_service.character(unram_quad, Fraction(0), 1))
    assert pair.regular and pair.level == 0
    results = dl_service.depth_zero_crosscheck(pair)
    assert results
    assert all(r.status == CheckStatus.PASSED for r in results)
    assert len({r.check_id for r in results}) == len(results)


def test_crosscheck_needs_level_zero(unram_quad):
    alpha = unram_quad.element([0, 1], k=-1)
    pair = character_service.classify(character_service.character(unram_quad, Fraction(0), 0, alpha))
    with pytest.raises(DomainError):
        dl_service.depth_zero_crosscheck(pair)
