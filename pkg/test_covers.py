#!/usr/bin/env python3
"""
Tame Langlands Workbench - Double cover tests

kappa, its inverse, the deck transformation, the Weyl action and PGL(2) splitting.
"""

from fractions import Fraction

import pytest

from app.algebra.exact import CycInt, ExactValue
from app.algebra.extensions import build_extension
from app.algebra.padic import PadicNumber
from app.exceptions import DomainError, ModelMismatch
from app.models.primes import CoverCase, ExtensionKind, build_prime_config
from app.services.character_service import MultCharacter, character_service
from app.services.cover_service import CoverElement, ModelElement, cover_service
from app.services.symbols_service import symbols_service


def test_cases_for_quadratic(unram_quad, ram_quad):
    assert cover_service.cases_for(unram_quad) == [CoverCase.PGL2, CoverCase.GL2]
    assert cover_service.default_case(ram_quad) == CoverCase.GL2
    with pytest.raises(ModelMismatch):
        cover_service.check_case(unram_quad, CoverCase.PGLL_SPLIT)


def test_fiber_generator_is_uniformizer_for_unramified(unram_quad):
    x0 = cover_service.fiber_generator(unram_quad, CoverCase.GL2)
    assert x0 == 3


@pytest.mark.parametrize("case", [CoverCase.GL2, CoverCase.PGL2])
def test_kappa_roundtrip_and_deck(unram_quad, ram_quad, case):
    for ext in (unram_quad, ram_quad):
        for w in list(ext.torus_classes(2))[:6]:
            lift = cover_service.trivial_lift(case, w)
            cover = cover_service.kappa(ext, lift)
            assert cover_service.lambda_squared_holds(ext, cover)
            assert cover_service.kappa_inv(ext, cover) == lift
            other = cover_service.kappa(ext, cover_service.deck(ext, lift))
            assert other.lam == -cover.lam


def test_kappa_inv_rejects_foreign_lambda(unram_quad):
    w = unram_quad.element([1, 1])
    foreign = CoverElement(CoverCase.GL2, w, ExactValue.make(3, 0, CycInt.root_of_unity(3, 1)))
    with pytest.raises(ModelMismatch):
        cover_service.kappa_inv(unram_quad, foreign)


def test_weyl_action_commutes_with_kappa(unram_quad, ram_quad):
    for ext in (unram_quad, ram_quad):
        for w in list(ext.torus_classes(2))[:6]:
            lift = ModelElement(CoverCase.GL2, w)
            acted = cover_service.weyl_act(ext, 1, cover_service.kappa(ext, lift))
            expected = cover_service.kappa(ext, cover_service.weyl_act_model(ext, 1, lift))
            assert acted.lam == expected.lam
            assert acted.base == expected.base


def test_split_cover_sign_fiber():
    prime = build_prime_config(7, 8, 3)
    ext = build_extension(prime, ExtensionKind.UNRAM_L)
    assert cover_service.cases_for(ext) == [CoverCase.PGLL_SPLIT, CoverCase.GLL_SPLIT]
    w = ext.element([1, 1, 0])
    lift = ModelElement(CoverCase.GLL_SPLIT, w)
    flipped = cover_service.deck(ext, lift)
    assert flipped.sign == -1
    assert cover_service.kappa(ext, flipped).lam == -cover_service.kappa(ext, lift).lam
    with pytest.raises(ModelMismatch):
        cover_service.kappa(ext, ModelElement(CoverCase.GLL_SPLIT, w, None, 2))


@pytest.mark.parametrize("p,kind,delta", [
    (3, ExtensionKind.UNRAM_QUAD, None),
    (3, ExtensionKind.RAM_QUAD, 3),
    (5, ExtensionKind.RAM_QUAD, 5),
    (7, ExtensionKind.RAM_QUAD, 21),
])
def test_pgl2_split_iff_minus_one_is_a_norm(p, kind, delta):
    ext = build_extension(build_prime_config(p, 10, 2), kind, delta)
    report = cover_service.check_split(ext)
    symbol = symbols_service.hilbert(PadicNumber.from_int(-1, p, 10), ext.delta_padic())
    assert report["hilbertMinus1Delta"] == symbol
    assert report["splits"] == (symbol == 1)


def test_genuine_from_pair(unram_quad):
    alpha = unram_quad.element([0, 1], k=-1)
    pair = character_service.classify(character_service.character(unram_quad, Fraction(0), 0, alpha))
    chi_tilde = cover_service.genuine_from_pair(pair, CoverCase.GL2)
    assert chi_tilde.case == CoverCase.GL2
    assert chi_tilde.chi is pair.chi
    assert cover_service.is_regular_genuine(chi_tilde)
    trivial = character_service.classify(character_service.trivial(unram_quad))
    with pytest.raises(DomainError):
        cover_service.genuine_from_pair(trivial, CoverCase.GL2)


def test_lambda_squared_on_non_galois_cubic():
    ext = build_extension(build_prime_config(11, 8, 3), ExtensionKind.RAM_L)
    tau = cover_service.default_tau(ext)
    assert character_service.is_trivial(tau)
    case = cover_service.default_case(ext)
    for w in list(ext.torus_classes(1))[:4]:
        lift = cover_service.trivial_lift(case, w)
        for point in (lift, cover_service.deck(ext, lift)):
            cover = cover_service.kappa(ext, point)
            assert cover_service.tau_two_rho(ext, w, tau).is_one()
            assert cover_service.lambda_squared_holds(ext, cover)
        twisted = CoverElement(case, w, ExactValue.make(11, 0, CycInt.root_of_unity(4, 1)))
        assert not cover_service.lambda_squared_holds(ext, twisted)
        nontrivial = MultCharacter(ext, Fraction(1, 2), 0)
        with pytest.raises(DomainError):
            cover_service.lambda_squared_holds(ext, cover, nontrivial)
