"""
Tame Langlands Workbench - Formula Service

The character formula F(chi~) on elliptic tori: the depth n(w), Weyl denominators, the sign
epsilon(s), the Q-form and gamma-factor, positive factors kept as symbolic norm tokens, and
the separation test between two pairs.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Tuple, Union

from sympy import Matrix, Rational, zeros

from ..algebra.exact import CycInt, ExactValue
from ..algebra.extensions import ExtElement, LevelTag, TameExtension
from ..algebra.padic import PadicNumber
from ..config import SUITE_CONFIG
from ..exceptions import DomainError, VerificationError
from ..models.primes import ExtensionKind, QUADRATIC_KINDS
from .character_service import CharPair, MultCharacter, character_service
from .cover_service import GenuineCharacter, cover_service
from .symbols_service import AdditiveCharacter, QuadForm, symbols_service

logger = logging.getLogger(__name__)

NORM_TAGS = ("deg_pi", "deg_sigma", "c_psi_gprime", "c_psi_g", "eta", "D")


@dataclass(frozen=True)
class DepthClass:
    """n(w) with the decomposition w = z * b (z central, b principal) when n(w) > 0"""

    depth: Fraction
    level: Union[int, LevelTag]
    central: Optional[PadicNumber] = None
    principal: Optional[ExtElement] = None


@dataclass(frozen=True)
class NormToken:
    """Formal product of positive constants, stored as sorted (tag, exponent) pairs"""

    exponents: Tuple[Tuple[str, Fraction], ...] = ()

    @classmethod
    def of(cls, **factors) -> "NormToken":
        unknown = set(factors) - set(NORM_TAGS)
        if unknown:
            raise DomainError(f"unknown norm tags {sorted(unknown)}")
        return cls(tuple(sorted((k, Fraction(v)) for k, v in factors.items() if v)))

    def __mul__(self, other: "NormToken") -> "NormToken":
        merged: Dict[str, Fraction] = dict(self.exponents)
        for tag, exp in other.exponents:
            merged[tag] = merged.get(tag, Fraction(0)) + exp
        return NormToken.of(**merged)

    def as_dict(self) -> Dict[str, str]:
        return {tag: str(exp) for tag, exp in self.exponents}


POSITIVE_DEPTH_TOKEN = NormToken.of(deg_pi=1, c_psi_gprime=1, c_psi_g=-1, eta=Fraction(-1, 2))
DEPTH_ZERO_TOKEN = NormToken.of(deg_pi=1, deg_sigma=-1)


@dataclass(frozen=True)
class FormulaValue:
    exact: ExactValue
    norm: NormToken


@dataclass
class SeparationResult:
    verdict: str
    witness: Optional[ExtElement] = None
    checked: int = 0
    reason: str = ""
    values: List[Tuple[str, str]] = field(default_factory=list)


class FormulaService:
    """Service for the character formula and its ingredients"""

    def __init__(self):
        self.config = SUITE_CONFIG

    def psi(self, p: int) -> AdditiveCharacter:
        return symbols_service.psi(p)

    # -- depth ----------------------------------------------------------------

    def n_depth(self, ext: TameExtension, w: ExtElement) -> DepthClass:
        """Definitional n(w), cross-checked against the coefficient closed form"""
        if w.is_zero or ext.in_base(w):
            raise DomainError(f"{w} lies in F* and is not regular")
        level = ext.unit_level(w)
        closed = ext.unit_level_closed(w)
        if level != closed:
            logger.error(f"Unit level mismatch for {w}: search={level} closed={closed}")
            raise VerificationError(f"unit level of {w}: search gives {level}, closed form {closed}")
        depth = ext.depth(level)
        if depth == 0:
            return DepthClass(depth, level)
        scale, unit = ext.normalized_unit(w)
        c0 = ext.coefficient(unit, 0)
        return DepthClass(depth, level, scale * c0, unit / c0)

    def depth_closed_quadratic(self, ext: TameExtension, w: ExtElement) -> Fraction:
        """n(w) for w = c0 + c1 delta from n = v(c0), m = v(c1)"""
        if ext.kind not in QUADRATIC_KINDS:
            raise DomainError(f"the closed depth forms are stated for quadratic E, got {ext.kind.value}")
        c0, c1 = ext.coefficient(w, 0), ext.coefficient(w, 1)
        if c1.is_zero:
            raise DomainError(f"{w} lies in F*")
        m = c1.valuation
        if c0.is_zero:
            return Fraction(0)
        n = c0.valuation
        if ext.kind == ExtensionKind.UNRAM_QUAD:
            return Fraction(m - n) if n < m else Fraction(0)
        return Fraction(2 * m - 2 * n + 1, 2) if n <= m else Fraction(0)

    def in_window(self, ext: TameExtension, w: ExtElement) -> bool:
        """w in F*A: the normalized unit has residue outside F_p (or e does not divide v_E(w))"""
        split = ext.normalized_unit(w)
        if split is None:
            return True
        return not ext.residue_field.in_subfield(ext.residue(split[1]), 1)

    def in_base_times_principal(self, ext: TameExtension, w: ExtElement) -> bool:
        """w in F*(1 + p_E), by direct search over Teichmuller representatives"""
        split = ext.normalized_unit(w)
        if split is None:
            return False
        unit = split[1]
        one = ext.one(unit.precision)
        for r in range(1, ext.p):
            diff = unit / PadicNumber.from_int(r, ext.p, unit.precision) - one
            if diff.is_zero or ext.valuation(diff) >= 1:
                return True
        return False

    def character_depth(self, pair: CharPair) -> Fraction:
        """r = level / e"""
        return Fraction(pair.level, pair.ext.e)

    # -- signs and denominators ---------------------------------------------------

    def weyl_length(self, s: int, ell: int) -> int:
        """Length of the rotation i -> i + s in S_ell"""
        s %= ell
        return s * (ell - s)

    def epsilon_sign(self, s: int, delta: Optional[PadicNumber], ell: int) -> int:
        """(-1, Delta)^(length(s)(ell+1))"""
        exponent = self.weyl_length(s, ell) * (ell + 1)
        if exponent % 2 == 0:
            return 1
        return symbols_service.hilbert(PadicNumber.from_int(-1, delta.p, delta.precision), delta)

    def discriminant_valuation(self, ext: TameExtension, w: ExtElement) -> int:
        """v_F(D(w)) with D(w) = disc(charpoly w) / N(w)^(d-1)"""
        disc = ext.charpoly_discriminant(w)
        return disc.valuation - (ext.d - 1) * ext.norm(w).valuation

    def lambda_sigma(self, ext: TameExtension, level: int) -> int:
        """(-1)^((d-1)(r+1)) for unramified E, 1 for ramified E"""
        if ext.e > 1:
            return 1
        return -1 if ((ext.d - 1) * (level + 1)) % 2 else 1

    def _sum_k(self, ell: int) -> int:
        half = (ell - 1) // 2
        return half * (half + 1) // 2

    def _tau_of_sign(self, ext: TameExtension, tau: MultCharacter, exponent: int) -> CycInt:
        if exponent % 2 == 0:
            return CycInt.one()
        return character_service.evaluate(tau, ext.scalar(-1))

    def positive_system_sign(self, ext: TameExtension, s: int, tau: MultCharacter) -> CycInt:
        """epsilon(s Delta+) = tau_0((-1)^length(s))"""
        return self._tau_of_sign(ext, tau, self.weyl_length(s, ext.d))

    def weyl_denominator(self, ext: TameExtension, w: ExtElement, s: int = 0,
                         tau: Optional[MultCharacter] = None) -> Tuple[CycInt, ExactValue]:
        """(tau_0 of the Weyl denominator, |D(w)|^(1/2)) for the positive system s Delta+"""
        if ext.in_base(w):
            raise DomainError(f"{w} lies in F* and is not regular")
        tau = tau or cover_service.default_tau(ext)
        absolute = ExactValue.q_power(ext.p, -self.discriminant_valuation(ext, w))
        if ext.d == 2:
            diff = w - ext.galois_apply(1, w)
            if s % 2:
                diff = -diff
            return character_service.evaluate(tau, diff), absolute
        exponent = self._sum_k(ext.d) + self.weyl_length(s, ext.d)
        return self._tau_of_sign(ext, tau, exponent), absolute

    def numerator(self, ext: TameExtension, chi: MultCharacter, w: ExtElement) -> CycInt:
        """sum over W of epsilon(s) chi(s w); one term when Aut(E/F) = 1"""
        if not ext.is_galois:
            return character_service.evaluate(chi, w)
        delta = ext.delta_padic() if ext.d == 2 else None
        total = CycInt.zero()
        for s, conjugate in enumerate(ext.conjugates(w)):
            total = total + character_service.evaluate(chi, conjugate) * self.epsilon_sign(s, delta, ext.d)
        return total

    # -- Q-form and gamma-factor -----------------------------------------------

    def _embed(self, ext: TameExtension, a: Rational, d: Rational) -> Matrix:
        """a + d delta -> [[a, d], [d Delta, a]]"""
        return Matrix([[a, d], [d * ext.delta, a]])

    def _coordinates(self, ext: TameExtension, w: ExtElement) -> Tuple[Rational, Rational]:
        a, d = (ext.coefficient(w, i).to_fraction() for i in (0, 1))
        return Rational(a.numerator, a.denominator), Rational(d.numerator, d.denominator)

    def q_form_matrix(self, ext: TameExtension, alpha: ExtElement, y: ExtElement) -> Matrix:
        """Gram matrix of (V, W) -> trace([alpha, W][V, Y]) / 2 on the trace-orthogonal complement of E"""
        if ext.kind not in QUADRATIC_KINDS:
            raise DomainError(f"the Q-form is computed for GL(2) only, got {ext.kind.value}")
        a_mat = self._embed(ext, *self._coordinates(ext, alpha))
        y_mat = self._embed(ext, *self._coordinates(ext, y))
        basis = [Matrix([[1, 0], [0, -1]]), Matrix([[0, 1], [-ext.delta, 0]])]
        gram = zeros(2, 2)
        for i, v in enumerate(basis):
            for j, u in enumerate(basis):
                left = a_mat * u - u * a_mat
                right = v * y_mat - y_mat * v
                gram[i, j] = (left * right).trace() / 2
        return gram

    def q_form(self, ext: TameExtension, alpha: ExtElement, y: ExtElement) -> QuadForm:
        gram = self.q_form_matrix(ext, alpha, y)
        if gram[0, 1] != 0 or gram[1, 0] != 0:
            raise VerificationError(f"Q-form Gram matrix is not diagonal: {gram}")
        if gram[0, 0] == 0 or gram[1, 1] == 0:
            raise DomainError("degenerate Q-form: alpha or Y lies in F")
        coefficients = tuple(
            PadicNumber.from_fraction(Fraction(int(g.p), int(g.q)), ext.p, ext.precision)
            for g in (gram[0, 0], gram[1, 1])
        )
        return QuadForm(coefficients)

    def q_form_closed(self, ext: TameExtension, alpha: ExtElement, y: ExtElement) -> Matrix:
        """diag(4 x y Delta, -4 x y Delta^2)"""
        x, yy = self._coordinates(ext, alpha)[1], self._coordinates(ext, y)[1]
        delta = ext.delta
        return Matrix([[4 * x * yy * delta, 0], [0, -4 * x * yy * delta ** 2]])

    def gamma_factor(self, ext: TameExtension, alpha: ExtElement, y: ExtElement,
                     psi: Optional[AdditiveCharacter] = None) -> CycInt:
        """Weil index of psi o Q_(alpha, Y) from the Gauss-sum oracle"""
        psi = psi or self.psi(ext.p)
        return symbols_service.form_weil_index(self.q_form(ext, alpha, y), psi)

    def gamma_factor_closed(self, ext: TameExtension, alpha: ExtElement, y: ExtElement,
                            psi: Optional[AdditiveCharacter] = None) -> CycInt:
        """(x, Delta)(y, Delta) gamma_F(Delta, psi)"""
        psi = psi or self.psi(ext.p)
        delta = ext.delta_padic()
        x, yy = ext.coefficient(alpha, 1), ext.coefficient(y, 1)
        if x.is_zero or yy.is_zero:
            raise DomainError("degenerate Q-form: alpha or Y lies in F")
        return symbols_service.weil_gamma_closed(delta, psi) * \
            (symbols_service.hilbert(x, delta) * symbols_service.hilbert(yy, delta))

    # -- the formula -------------------------------------------------------------

    def _prefactor(self, ext: TameExtension, pair: CharPair, s: int, tau: MultCharacter) -> CycInt:
        """Unimodular part of epsilon(chi~, s Delta+, tau)"""
        sign = self.positive_system_sign(ext, s, tau)
        if ext.d == 2:
            two_delta = ext.scale(ext.gen(), 2)
            sign = sign * character_service.evaluate(tau, two_delta)
            if pair.level == 0:
                return -sign
            delta = ext.delta_padic()
            x_chi = character_service.x_coefficient(pair.chi)
            if x_chi.is_zero:
                raise DomainError("x_chi vanishes: alpha(chi) lies in F")
            gamma = symbols_service.weil_gamma_closed(delta, self.psi(ext.p))
            return sign * gamma * symbols_service.hilbert(x_chi, delta)
        sign = sign * self._tau_of_sign(ext, tau, self._sum_k(ext.d))
        if pair.level == 0:
            return sign * (-1 if (ext.d + 1) % 2 else 1)
        return sign * self.lambda_sigma(ext, pair.level)

    def eval_formula(self, chi_tilde: GenuineCharacter, w: ExtElement, positive_system: int = 0,
                     tau: Optional[MultCharacter] = None) -> FormulaValue:
        """F(chi~)(w) for 0 <= n(w) <= r/2"""
        chi = chi_tilde.chi
        ext = chi.ext
        pair = character_service.classify(chi)
        if not pair.regular:
            raise DomainError(f"{chi} is not regular")
        tau = tau or chi_tilde.tau
        depth = self.n_depth(ext, w).depth
        r = self.character_depth(pair)
        if depth > r / 2:
            raise DomainError(f"n(w) = {depth} lies outside the window [0, {r / 2}]")
        denominator, absolute = self.weyl_denominator(ext, w, positive_system, tau)
        value = self._prefactor(ext, pair, positive_system, tau) * self.numerator(ext, chi, w) \
            * denominator.inverse()
        exact = ExactValue.make(ext.p, 0, value) / absolute
        token = DEPTH_ZERO_TOKEN if pair.level == 0 else POSITIVE_DEPTH_TOKEN
        return FormulaValue(exact, token)

    def eval_pair(self, pair: CharPair, w: ExtElement, positive_system: int = 0,
                  tau: Optional[MultCharacter] = None) -> FormulaValue:
        chi_tilde = cover_service.genuine_from_pair(pair, cover_service.default_case(pair.ext), tau)
        return self.eval_formula(chi_tilde, w, positive_system, tau)

    # -- separation --------------------------------------------------------------

    def window_points(self, ext: TameExtension, cutoff: int, max_depth: Fraction) -> Iterator[ExtElement]:
        """Torus classes with n(w) <= max_depth, multiplied through generators of F*"""
        p = ext.p
        generator = character_service.base_of(ext).residue_field.generator
        multipliers = [None, PadicNumber.from_int(p, p, ext.precision),
                       PadicNumber.from_int(generator, p, ext.precision),
                       PadicNumber.from_int(1 + p, p, ext.precision)]
        for w in ext.torus_classes(cutoff):
            if ext.in_base(w) or self.n_depth(ext, w).depth > max_depth:
                continue
            for c in multipliers:
                yield w if c is None else ext.scale(w, c)

    def find_nonvanishing(self, pair: CharPair, cutoff: Optional[int] = None) -> Optional[ExtElement]:
        """A point w with n(w) = 0 where F(chi~)(w) != 0"""
        cutoff = cutoff or pair.level + 2
        for w in self.window_points(pair.ext, cutoff, Fraction(0)):
            if not self.eval_pair(pair, w).exact.is_zero:
                return w
        logger.warning(f"No nonvanishing point at n(w) = 0 for {pair.chi} mod U^{cutoff}")
        return None

    def separation_test(self, pair_a: CharPair, pair_b: CharPair, cutoff: Optional[int] = None) -> SeparationResult:
        if not (pair_a.regular and pair_b.regular):
            raise DomainError("separation needs two regular pairs")
        cutoff = cutoff or max(pair_a.level, pair_b.level) + 2
        if pair_a.ext is not pair_b.ext:
            return self._separate_tori(pair_a, pair_b, cutoff)
        ext = pair_a.ext
        max_depth = min(self.character_depth(pair_a), self.character_depth(pair_b)) / 2
        checked = 0
        for w in self.window_points(ext, cutoff, max_depth):
            checked += 1
            value_a, value_b = self.eval_pair(pair_a, w), self.eval_pair(pair_b, w)
            if value_a != value_b:
                return SeparationResult("separated", w, checked, "formulas differ",
                                        [("a", repr(value_a.exact)), ("b", repr(value_b.exact))])
        return SeparationResult("equivalent-by-Weyl", None, checked, "formulas agree on every tested class")

    def _separate_tori(self, pair_a: CharPair, pair_b: CharPair, cutoff: int) -> SeparationResult:
        """Different tori: a nonvanishing point of one formula whose determinant is no norm from the other.
        The cutoff is raised until such a point turns up."""
        checked = 0
        last = cutoff + SUITE_CONFIG["separation_widen_steps"]
        for level in range(cutoff, last + 1):
            for first, second in ((pair_a, pair_b), (pair_b, pair_a)):
                ext, other = first.ext, second.ext
                for w in self.window_points(ext, level, Fraction(0)):
                    checked += 1
                    det = ext.norm(w)
                    if symbols_service.cft_character(other, det).is_one():
                        continue
                    if not self.eval_pair(first, w).exact.is_zero:
                        return SeparationResult("separated", w, checked,
                                                f"det(w) is not a norm from {other.kind.value}")
            logger.info(f"No determinant witness mod U^{level} for {pair_a.chi} and {pair_b.chi}")
        raise VerificationError(f"no separating point for {pair_a.chi} and {pair_b.chi} up to U^{last}")

    def weyl_equivalent(self, pair_a: CharPair, pair_b: CharPair) -> bool:
        """Ground truth: chi_b = chi_a o sigma^i for some i"""
        if pair_a.ext is not pair_b.ext:
            return False
        ext = pair_a.ext
        return any(character_service.same_character(pair_a.chi, character_service.conjugate(pair_b.chi, i))
                   for i in range(ext.galois_order))


# Global instance
formula_service = FormulaService()
