"""
Tame Langlands Workbench - Deligne-Lusztig Service

Deligne-Lusztig character values on elliptic regular semisimple elements of GL(n, F_q):
Carter's conjugation sum by brute force over the group, the normalizer reduction, the sign
constants, and the depth-zero comparison with the character formula.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Tuple

import numpy as np

from ..algebra.exact import CycInt, ExactValue
from ..algebra.finite_fields import FqField, GLnq
from ..algebra.padic import PadicNumber
from ..config import DL_CONFIG
from ..exceptions import DomainError, VerificationError
from ..models.primes import UNRAMIFIED_KINDS
from ..models.reports import CheckResult, CheckStatus
from .character_service import CharPair, character_service
from .formula_service import formula_service

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FqMultChar:
    """theta(x) = zeta_(q^n - 1)^(k dlog x)"""

    field: FqField
    k: int

    def __call__(self, x: int) -> CycInt:
        return CycInt.root_of_unity(self.field.q - 1, self.k * self.field.dlog(x))

    def is_regular(self, q: int, n: int) -> bool:
        """k, kq, ..., kq^(n-1) distinct mod q^n - 1"""
        order = self.field.q - 1
        return len({self.k * q ** i % order for i in range(n)}) == n


@lru_cache(maxsize=None)
def group(n: int, q: int) -> GLnq:
    logger.info(f"Enumerating GL({n},{q})")
    return GLnq(n, q)


class DLService:
    """Service for Deligne-Lusztig characters of GL(n, q)"""

    def __init__(self):
        self.config = DL_CONFIG

    def group(self, n: int, q: int) -> GLnq:
        return group(n, q)

    def character(self, field: FqField, k: int) -> FqMultChar:
        return FqMultChar(field, k % (field.q - 1))

    def regular_characters(self, field: FqField, q: int, n: int) -> List[FqMultChar]:
        return [theta for theta in (self.character(field, k) for k in range(field.q - 1))
                if theta.is_regular(q, n)]

    def _check_element(self, field: FqField, q: int, n: int, s: int) -> None:
        if s == 0 or any(field.power(s, q ** d) == s for d in range(1, n) if n % d == 0):
            raise DomainError(f"s = {s} is not regular elliptic in GL({n},{q})")

    def orbit(self, field: FqField, q: int, n: int, s: int) -> List[int]:
        return [field.power(s, q ** i) for i in range(n)]

    def orbit_sum(self, field: FqField, q: int, n: int, s: int, theta: FqMultChar) -> CycInt:
        total = CycInt.zero()
        for x in self.orbit(field, q, n, s):
            total = total + theta(x)
        return total

    # -- signs ----------------------------------------------------------------

    def stated_signs(self, n: int) -> Tuple[int, int]:
        """(epsilon_T, epsilon_C0(s)) for the elliptic torus"""
        return -1, (1 if n == 2 else (-1) ** n)

    def split_rank(self, n: int, elliptic: bool = True) -> int:
        """F_q-rank: dimension of the Frobenius-fixed part of X*(T) (x) Q"""
        frobenius = np.roll(np.eye(n, dtype=np.int64), 1, axis=0) if elliptic else np.eye(n, dtype=np.int64)
        return n - int(np.linalg.matrix_rank(frobenius - np.eye(n, dtype=np.int64)))

    def sign(self, n: int) -> int:
        """(-1)^(n+1), checked against the rank definition (-1)^(rank G - rank T)"""
        eps_t, eps_c = self.stated_signs(n)
        from_ranks = (-1) ** (self.split_rank(n, elliptic=False) - self.split_rank(n))
        if eps_t * eps_c != from_ranks:
            raise VerificationError(f"sign constants disagree for GL({n}): {eps_t * eps_c} != {from_ranks}")
        return from_ranks

    # -- values ---------------------------------------------------------------

    def dl_value(self, field: FqField, q: int, n: int, s: int, theta: FqMultChar) -> CycInt:
        """R_(T, theta)(s) = (-1)^(n+1) sum_i theta(s^(q^i))"""
        self._check_element(field, q, n, s)
        if not theta.is_regular(q, n):
            raise DomainError(f"theta with exponent {theta.k} is not regular")
        return self.orbit_sum(field, q, n, s, theta) * self.sign(n)

    def carter_sum(self, g: GLnq, s: int, theta: FqMultChar) -> CycInt:
        """sum over g in GL(n,q) with g^-1 s g in T of theta(g^-1 s g)"""
        self._check_element(g.ext, g.q, g.n, s)
        mask, index = g.conjugates_in_torus(s)
        order = g.ext.q - 1
        logs = np.array([g.ext.dlog(int(x)) for x in index[mask]], dtype=np.int64)
        counts = np.bincount(logs * theta.k % order, minlength=order)
        return CycInt.from_exponent_counts(order, {e: int(c) for e, c in enumerate(counts) if c})

    def dl_value_from_carter(self, g: GLnq, s: int, theta: FqMultChar) -> CycInt:
        """carter_sum / |T| times the sign constants"""
        total = self.carter_sum(g, s, theta)
        torus_order = g.ext.q - 1
        coeffs = total.coeffs
        if any(c % torus_order for c in coeffs):
            raise VerificationError(f"Carter sum {total} is not divisible by |T| = {torus_order}")
        reduced = CycInt(total.conductor, tuple(c // torus_order for c in coeffs))
        return reduced * self.sign(g.n)

    def normalizer_identity(self, g: GLnq, s: int, theta: FqMultChar) -> bool:
        """|N(T)| = n |T| and the Carter sum equals |T| times the sum over N/T"""
        torus_order = g.ext.q - 1
        normalizer, _ = g.conjugates_in_torus(g.ext.generator)
        if int(normalizer.sum()) != g.n * torus_order:
            logger.error(f"|N(T)| = {int(normalizer.sum())} in GL({g.n},{g.q})")
            return False
        mask, index = g.conjugates_in_torus(s)
        if not np.array_equal(mask, normalizer):
            return False
        images = sorted({int(x) for x in index[normalizer]})
        if images != sorted(set(g.frobenius_orbit(s))):
            return False
        return self.carter_sum(g, s, theta) == self.orbit_sum(g.ext, g.q, g.n, s, theta) * torus_order

    # -- depth-zero comparison ---------------------------------------------------

    def depth_zero_crosscheck(self, pair: CharPair, anchor: str = "") -> List[CheckResult]:
        """F(chi~) on F*A against chi(c) Delta_chi(c) R_(T, theta)(s) for w = c a"""
        ext = pair.ext
        if ext.kind not in UNRAMIFIED_KINDS or pair.level != 0:
            raise DomainError("the depth-zero comparison needs a level-zero pair over unramified E")
        if not pair.admissible:
            raise DomainError(f"{pair.chi} is not admissible")
        field = ext.residue_field
        theta = self.character(field, pair.chi.tame_exponent)
        delta = character_service.delta_twist(pair)
        p = ext.p
        generator = character_service.base_of(ext).residue_field.generator
        multipliers = [PadicNumber.from_int(c, p, ext.precision) for c in (1, p, generator)]
        results = []
        for index, tau in enumerate(character_service.tau_characters(ext)):
            for a in ext.torus_classes(1):
                if ext.in_base(a) or not formula_service.in_window(ext, a):
                    continue
                s = ext.residue(a)
                expected_core = self.dl_value(field, p, ext.d, s, theta)
                for c in multipliers:
                    w = ext.scale(a, c)
                    value = formula_service.eval_pair(pair, w, tau=tau)
                    expected = character_service.evaluate_base(pair.chi, c) * \
                        character_service.evaluate_base(delta, c) * expected_core
                    passed = value.exact == ExactValue.make(p, 0, expected)
                    results.append(CheckResult(
                        check_id=(f"dl/crosscheck/{ext.kind.value}/phase={pair.chi.uniformizer_phase}"
                                  f"/t={pair.chi.tame_exponent}/tau{index}/s={s}/c={c.to_fraction()}"),
                        suite="dl", anchor=anchor,
                        inputs={"w": repr(w), "tau": repr(tau)},
                        lhs=repr(value.exact), rhs=repr(expected),
                        status=CheckStatus.PASSED if passed else CheckStatus.FAILED))
        return results


# Global instance
dl_service = DLService()
