#!/usr/bin/env python3
"""
Tame Langlands Workbench - Character formula tests

Depth, the window, signs, the Q-form and the evaluated formula.
"""

from fractions import Fraction

import pytest
from sympy import Matrix

from app.algebra.exact import ExactValue
from app.algebra.extensions import LevelTag
from app.exceptions import DomainError
from app.services.character_service import character_service
from app.services.cover_service import cover_service
from app.services.formula_service import NormToken, formula_service
from app.services.symbols_service import symbols_service


def level_one_pair(ext):
    alpha = ext.element([0, 1], k=-1) if ext.e == 1 else ext.gen().inverse()
    return character_service.classify(character_service.character(ext, Fraction(0), 0, alpha))


def test_depth_closed_forms(unram_quad, ram_quad):
    assert formula_service.depth_closed_quadratic(unram_quad, unram_quad.element([1, 9])) == 2
    assert formula_service.depth_closed_quadratic(unram_quad, unram_quad.element([9, 1])) == 0
    assert formula_service.depth_closed_quadratic(unram_quad, unram_quad.gen()) == 0
    assert formula_service.depth_closed_quadratic(ram_quad, ram_quad.element([1, 1])) == Fraction(1, 2)
    with pytest.raises(DomainError):
        formula_service.depth_closed_quadratic(unram_quad, unram_quad.scalar(5))


def test_depth_decomposition(unram_quad):
    w = unram_quad.scale(unram_quad.element([1, 9]), 3)
    depth = formula_service.n_depth(unram_quad, w)
    assert depth.depth == 2
    assert depth.level == 2
    assert unram_quad.scale(depth.principal, depth.central) == w
    with pytest.raises(DomainError):
        formula_service.n_depth(unram_quad, unram_quad.scalar(2))


def test_window_membership(unram_quad, ram_quad):
    assert formula_service.in_window(unram_quad, unram_quad.gen())
    assert not formula_service.in_window(unram_quad, unram_quad.element([1, 9]))
    assert formula_service.in_window(ram_quad, ram_quad.gen())
    assert formula_service.in_base_times_principal(unram_quad, unram_quad.element([1, 9]))
    assert not formula_service.in_base_times_principal(unram_quad, unram_quad.gen())
    assert formula_service.n_depth(ram_quad, ram_quad.gen()).level == LevelTag.NOT_IN_FU


def test_signs(unram_quad, ram_quad):
    assert formula_service.weyl_length(1, 2) == 1
    assert formula_service.weyl_length(1, 3) == 2
    assert formula_service.weyl_length(3, 3) == 0
    assert formula_service.lambda_sigma(unram_quad, 1) == 1
    assert formula_service.lambda_sigma(unram_quad, 2) == -1
    assert formula_service.lambda_sigma(ram_quad, 2) == 1


def test_norm_tokens():
    assert NormToken.of(deg_pi=1) * NormToken.of(deg_pi=-1) == NormToken()
    assert NormToken.of(eta=Fraction(-1, 2)).as_dict() == {"eta": "-1/2"}
    with pytest.raises(DomainError):
        NormToken.of(volume=1)


def test_q_form_gram_matrix(unram_quad):
    alpha = unram_quad.element([0, 1], k=-1)
    y = unram_quad.gen()
    gram = formula_service.q_form_matrix(unram_quad, alpha, y)
    assert gram == formula_service.q_form_closed(unram_quad, alpha, y)
    assert gram == Matrix([[Fraction(8, 3), 0], [0, Fraction(-16, 3)]])


def test_gamma_factor_closed_form(unram_quad, ram_quad):
    for ext in (unram_quad, ram_quad):
        alpha = ext.element([1, 1], k=-1)
        y = ext.element([2, 1])
        assert formula_service.gamma_factor(ext, alpha, y) == formula_service.gamma_factor_closed(ext, alpha, y)
    with pytest.raises(DomainError):
        formula_service.gamma_factor_closed(unram_quad, unram_quad.scalar(1), unram_quad.gen())


def test_formula_is_weyl_invariant(unram_quad, ram_quad):
    for ext in (unram_quad, ram_quad):
        pair = level_one_pair(ext)
        for w in formula_service.window_points(ext, 2, Fraction(0)):
            value = formula_service.eval_pair(pair, w)
            assert formula_service.eval_pair(pair, ext.galois_apply(1, w)) == value


def test_formula_outside_window_rejected(unram_quad):
    pair = level_one_pair(unram_quad)
    with pytest.raises(DomainError):
        formula_service.eval_pair(pair, unram_quad.element([1, 9]))


def test_formula_needs_regular_character(unram_quad):
    flat = character_service.classify(character_service.trivial(unram_quad))
    with pytest.raises(DomainError):
        formula_service.eval_pair(flat, unram_quad.gen())


def test_conjugate_pairs_are_not_separated(unram_quad):
    pair = level_one_pair(unram_quad)
    conjugate = character_service.classify(character_service.conjugate(pair.chi, 1))
    assert formula_service.weyl_equivalent(pair, conjugate)
    assert formula_service.separation_test(pair, conjugate).verdict == "equivalent-by-Weyl"


def test_different_tori_never_report_equivalence(unram_quad, ram_quad):
    result = formula_service.separation_test(level_one_pair(unram_quad), level_one_pair(ram_quad))
    assert result.verdict == "separated"
    assert not symbols_service.cft_character(ram_quad, unram_quad.norm(result.witness)).is_one()
    assert not formula_service.eval_pair(level_one_pair(unram_quad), result.witness).exact.is_zero
    assert not formula_service.weyl_equivalent(level_one_pair(unram_quad), level_one_pair(ram_quad))


def test_epsilon_sign(unram_quad, ram_quad):
    assert formula_service.epsilon_sign(0, ram_quad.delta_padic(), 2) == 1
    assert formula_service.epsilon_sign(1, unram_quad.delta_padic(), 2) == 1
    assert formula_service.epsilon_sign(1, ram_quad.delta_padic(), 2) == -1
    assert formula_service.epsilon_sign(1, None, 3) == 1


def test_weyl_denominator_positive_systems(unram_quad):
    w = unram_quad.element([1, 1])
    tau = cover_service.default_tau(unram_quad)
    first, absolute = formula_service.weyl_denominator(unram_quad, w, 0, tau)
    second, _ = formula_service.weyl_denominator(unram_quad, w, 1, tau)
    assert second == first * character_service.evaluate(tau, unram_quad.scalar(-1))
    assert absolute == ExactValue.q_power(3, 0)
    with pytest.raises(DomainError):
        formula_service.weyl_denominator(unram_quad, unram_quad.scalar(2))
