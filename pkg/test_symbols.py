#!/usr/bin/env python3
"""
Tame Langlands Workbench - Local symbol tests

Hilbert symbols, Weil indices, Hasse invariants and lambda_(E/F).
"""

from fractions import Fraction
from itertools import product

import pytest

from app.algebra.exact import CycInt
from app.algebra.extensions import build_extension
from app.algebra.padic import PadicNumber
from app.exceptions import DomainError
from app.models.primes import ExtensionKind, build_prime_config
from app.services.symbols_service import QuadForm, _positive_sqrt, fractional_part, symbols_service


def padic(n, p=3, precision=12):
    return PadicNumber.from_int(n, p, precision)


def test_hilbert_examples():
    assert symbols_service.hilbert(padic(3), padic(3)) == -1
    assert symbols_service.hilbert(padic(-1), padic(3)) == -1
    assert symbols_service.hilbert(padic(-1, 5), padic(5, 5)) == 1
    assert symbols_service.hilbert(padic(2), padic(5)) == 1
    with pytest.raises(DomainError):
        symbols_service.hilbert(PadicNumber.zero(3, 12), padic(3))


@pytest.mark.parametrize("p", [3, 5, 7])
def test_hilbert_closed_form_matches_solvability(p):
    values = [u * p ** v for u in range(1, p) for v in (0, 1, 2)]
    for a, b in product(values, values):
        x, y = padic(a, p), padic(b, p)
        assert symbols_service.hilbert(x, y) == symbols_service.hilbert_oracle(x, y)


def test_hilbert_is_bimultiplicative():
    units = [padic(n) for n in (1, 2, 3, 6, 9, 18)]
    for a, b, c in product(units, units, units):
        lhs = symbols_service.hilbert(a * b, c)
        assert lhs == symbols_service.hilbert(a, c) * symbols_service.hilbert(b, c)


def test_fractional_part_and_psi():
    assert fractional_part(PadicNumber.from_fraction(Fraction(5, 9), 3, 12)) == Fraction(5, 9)
    assert fractional_part(padic(7)) == 0
    psi = symbols_service.psi(3)
    assert psi.level == 1
    assert psi.phase(padic(1)) == Fraction(1, 3)
    assert psi(padic(3)) == CycInt.one()


def test_gamma_of_nonsquare_unit_tracks_level():
    eps = padic(2)
    assert symbols_service.weil_gamma_closed(eps, symbols_service.psi(3, 1)) == CycInt.from_int(-1)
    assert symbols_service.weil_gamma_closed(eps, symbols_service.psi(3, 2)) == CycInt.one()


@pytest.mark.parametrize("n", [1, 2, 3, 6, 9, 15])
def test_weil_gamma_closed_form_matches_gauss_sums(n):
    psi = symbols_service.psi(3)
    a = padic(n)
    assert symbols_service.weil_gamma(a, psi) == symbols_service.weil_gamma_closed(a, psi)


def test_hasse_invariant():
    psi = symbols_service.psi(3)
    for coeffs in ((3, 3), (1, 2), (2, 3, 6)):
        form = QuadForm(tuple(padic(c) for c in coeffs))
        assert symbols_service.hasse_invariant(form, psi) == symbols_service.hasse_closed(form)
    assert symbols_service.hasse_closed(QuadForm((padic(3), padic(3)))) == -1


def test_degenerate_form_rejected():
    with pytest.raises(DomainError):
        QuadForm((padic(1), PadicNumber.zero(3, 12)))


@pytest.mark.parametrize("kind,delta", [(ExtensionKind.UNRAM_QUAD, None), (ExtensionKind.RAM_QUAD, 3),
                                        (ExtensionKind.RAM_QUAD, 6)])
def test_langlands_lambda(kind, delta):
    ext = build_extension(build_prime_config(3, 12, 2), kind, delta)
    psi = symbols_service.psi(3)
    value = symbols_service.langlands_lambda(ext, psi)
    assert value == symbols_service.langlands_lambda_closed(ext, psi)
    square = symbols_service.hilbert(padic(-1), ext.delta_padic())
    assert value * value == CycInt.from_int(square)


def test_class_field_characters():
    prime = build_prime_config(3, 12, 2)
    ram = build_extension(prime, ExtensionKind.RAM_QUAD, 3)
    assert symbols_service.cft_character(ram, padic(3)) == CycInt.from_int(-1)
    assert symbols_service.norm_group_index(ram) == 2
    cubic_prime = build_prime_config(7, 8, 3)
    assert symbols_service.norm_group_index(build_extension(cubic_prime, ExtensionKind.RAM_GALOIS_L)) == 3
    unram = build_extension(cubic_prime, ExtensionKind.UNRAM_L)
    assert symbols_service.cft_character(unram, padic(7, 7, 8)) == CycInt.root_of_unity(3, 1)
    non_galois = build_extension(build_prime_config(11, 8, 3), ExtensionKind.RAM_L)
    assert symbols_service.norm_group_index(non_galois) == 1


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_positive_sqrt_squares_to_p(p):
    root = _positive_sqrt(p)
    assert root * root == CycInt.from_int(p)


def test_quotient_sums_depend_on_valuation():
    psi = symbols_service.psi(3)
    shallow = psi.twist(padic(2)).weight(12)
    deep = psi.twist(padic(2 * 3 ** 4)).weight(12)
    assert (shallow.valuation, deep.valuation) == (-1, 3)
    total, points, depth = symbols_service._quotient_sum(shallow, 0)
    assert (points, depth) == (1, 1)
    deep_total, deep_points, deep_depth = symbols_service._quotient_sum(deep, 2)
    assert (deep_points, deep_depth) == (4, 1)
    assert deep_total == total * CycInt.from_int(27)
    assert symbols_service._quotient_sum(shallow, 1)[1:] == (3, 3)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_weil_index_oracle_matches_closed_form_across_valuations(p):
    psi = symbols_service.psi(p)
    for v in range(6):
        for u in range(1, p):
            twisted = psi.twist(PadicNumber.make(p, v, u, 12))
            assert symbols_service.weil_index_oracle(twisted, 12) == symbols_service.weil_index(twisted, 12)
