"""
Tame Langlands Workbench - Cover Service

Double covers T(F)_(tau o rho) of elliptic tori: the concrete models for GL(2)/PGL(2) and
GL(ell)/PGL(ell), the kappa isomorphisms onto the pullback cover, the Weyl action, genuine
characters and the splitting test for the PGL(2) cover.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Optional

from ..algebra.exact import CycInt, ExactValue
from ..algebra.extensions import ExtElement, TameExtension
from ..algebra.padic import PadicNumber, teichmuller
from ..config import COVER_CONFIG
from ..exceptions import DomainError, ModelMismatch
from ..models.primes import CoverCase, ExtensionKind, QUADRATIC_KINDS
from .character_service import CharPair, MultCharacter, character_service
from .symbols_service import symbols_service

logger = logging.getLogger(__name__)

PGL_CASES = (CoverCase.PGL2, CoverCase.PGLL_DELTA, CoverCase.PGLL_SPLIT)
QUADRATIC_CASES = (CoverCase.PGL2, CoverCase.GL2)
DELTA_CASES = (CoverCase.PGLL_DELTA, CoverCase.GLL_DELTA)
SPLIT_CASES = (CoverCase.PGLL_SPLIT, CoverCase.GLL_SPLIT)


@dataclass(frozen=True)
class ModelElement:
    """A point of a concrete cover model: w in E* with a fiber coordinate.

    fiber is the F*-class c (GL2, GLl_delta), the sign epsilon (split cases) or
    absent (PGL2, PGLl_delta, where the fiber sits inside w itself)."""

    case: CoverCase
    w: ExtElement
    fiber: Optional[PadicNumber] = None
    sign: int = 1


@dataclass(frozen=True)
class CoverElement:
    """(base, lambda) with lambda^2 = tau(2 rho(base))"""

    case: CoverCase
    base: ExtElement
    lam: ExactValue


@dataclass(frozen=True)
class GenuineCharacter:
    case: CoverCase
    chi: MultCharacter
    tau: MultCharacter


class CoverService:
    """Service for double covers of elliptic tori"""

    def __init__(self):
        self.config = COVER_CONFIG

    # -- case bookkeeping --------------------------------------------------------

    def cases_for(self, ext: TameExtension) -> List[CoverCase]:
        if ext.kind in QUADRATIC_KINDS:
            return list(QUADRATIC_CASES)
        if ext.kind == ExtensionKind.BASE:
            return []
        if character_service.is_trivial(character_service.delta_EF(ext)):
            return list(SPLIT_CASES)
        return list(DELTA_CASES)

    def check_case(self, ext: TameExtension, case: CoverCase) -> None:
        if case not in self.cases_for(ext):
            logger.error(f"Cover case {case.value} does not fit {ext.kind.value}")
            raise ModelMismatch(f"cover case {case.value} does not fit {ext.kind.value}")

    def default_case(self, ext: TameExtension) -> CoverCase:
        """The GL-type model for ext: no condition on the central character"""
        cases = self.cases_for(ext)
        if not cases:
            raise ModelMismatch(f"{ext.kind.value} has no elliptic cover")
        return next(c for c in cases if c not in PGL_CASES)

    def fiber_character(self, ext: TameExtension, case: CoverCase) -> MultCharacter:
        """The character of F* cutting out the fiber: aleph for l=2, delta_(E/F) otherwise"""
        if case in QUADRATIC_CASES:
            return character_service.aleph_character(ext)
        return character_service.delta_EF(ext)

    def fiber_generator(self, ext: TameExtension, case: CoverCase) -> PadicNumber:
        """x0 in F* with fiber character -1"""
        phi = self.fiber_character(ext, case)
        p = ext.p
        generator = teichmuller(character_service.base_of(ext).residue_field.generator, p, ext.precision)
        uniformizer = PadicNumber.from_int(p, p, ext.precision)
        for x in (uniformizer, generator, uniformizer * generator):
            if character_service.evaluate_base(phi, x) == CycInt.from_int(-1):
                return x
        raise ModelMismatch(f"the fiber character of {case.value} is trivial on {ext.kind.value}")

    def default_tau(self, ext: TameExtension) -> MultCharacter:
        return character_service.tau_characters(ext)[0]

    # -- rho and 2 rho -----------------------------------------------------------

    def two_rho(self, ext: TameExtension, w: ExtElement) -> ExtElement:
        """2 rho(w): w / wbar for l = 2, prod sigma^i(w)^(l-1-2i) for odd Galois kinds"""
        if not ext.is_galois:
            raise DomainError(f"2 rho is not an element of E for {ext.kind.value}")
        if ext.d == 2:
            return w / ext.galois_apply(1, w)
        return self.rho(ext, w) ** 2

    def rho(self, ext: TameExtension, w: ExtElement) -> ExtElement:
        """rho(w) = prod sigma^i(w)^((l-1)/2 - i) for odd l"""
        if ext.d % 2 == 0 or not ext.is_galois:
            raise DomainError(f"rho is not an element of E for {ext.kind.value}")
        half = (ext.d - 1) // 2
        out = ext.one(w.precision)
        for i, conjugate in enumerate(ext.conjugates(w)):
            if i != half:
                out = out * conjugate ** (half - i)
        return out

    def rho_tau(self, ext: TameExtension, w: ExtElement, tau: MultCharacter) -> CycInt:
        """tau_0(rho(w)); trivial when tau_0 is"""
        if character_service.is_trivial(tau):
            return CycInt.one()
        return character_service.evaluate(tau, self.rho(ext, w))

    def tau_two_rho(self, ext: TameExtension, w: ExtElement, tau: MultCharacter) -> CycInt:
        """tau_0(2 rho(w)); a nontrivial tau_0 needs 2 rho(w) in E, so E/F Galois"""
        if character_service.is_trivial(tau):
            return CycInt.one()
        return character_service.evaluate(tau, self.two_rho(ext, w))

    # -- kappa ---------------------------------------------------------------

    def _lam(self, ext: TameExtension, value: CycInt) -> ExactValue:
        return ExactValue.make(ext.p, 0, value)

    def kappa(self, ext: TameExtension, element: ModelElement, tau: Optional[MultCharacter] = None) -> CoverElement:
        """Concrete model -> T(F)_(tau o rho)"""
        case = element.case
        self.check_case(ext, case)
        tau = tau or self.default_tau(ext)
        w = element.w
        if w.is_zero:
            raise ModelMismatch("model elements must be invertible")
        if case == CoverCase.PGL2:
            value = character_service.evaluate(tau, w)
        elif case == CoverCase.GL2:
            value = self._fiber_value(ext, case, element) * character_service.evaluate(tau, w)
        elif case == CoverCase.GLL_DELTA:
            value = self._fiber_value(ext, case, element) * self.rho_tau(ext, w, tau)
        elif case == CoverCase.PGLL_DELTA:
            parity = character_service.evaluate(character_service.unramified_quadratic(ext), w)
            value = parity * self.rho_tau(ext, w, tau)
        else:
            if element.sign not in (1, -1):
                raise ModelMismatch(f"split-cover sign must be +-1, got {element.sign}")
            value = self.rho_tau(ext, w, tau) * element.sign
        return CoverElement(case, w, self._lam(ext, value))

    def _fiber_value(self, ext: TameExtension, case: CoverCase, element: ModelElement) -> CycInt:
        if element.fiber is None:
            return CycInt.one()
        if element.fiber.is_zero:
            raise ModelMismatch("the fiber coordinate must lie in F*")
        return character_service.evaluate_base(self.fiber_character(ext, case), element.fiber)

    def kappa_inv(self, ext: TameExtension, element: CoverElement, tau: Optional[MultCharacter] = None) -> ModelElement:
        """T(F)_(tau o rho) -> concrete model, choosing 1 or x0 as the fiber representative"""
        case = element.case
        trivial = self.kappa(ext, self.trivial_lift(case, element.base), tau)
        if element.lam == trivial.lam:
            return self.trivial_lift(case, element.base)
        if element.lam != -trivial.lam:
            raise ModelMismatch(f"{element} does not lie over {element.base}")
        return self.deck(ext, self.trivial_lift(case, element.base))

    def trivial_lift(self, case: CoverCase, w: ExtElement) -> ModelElement:
        return ModelElement(case, w)

    def deck(self, ext: TameExtension, element: ModelElement) -> ModelElement:
        """The other model point over the same torus point"""
        case = element.case
        if case in SPLIT_CASES:
            return ModelElement(case, element.w, None, -element.sign)
        x0 = self.fiber_generator(ext, case)
        if case in (CoverCase.PGL2, CoverCase.PGLL_DELTA):
            return ModelElement(case, ext.scale(element.w, x0))
        fiber = x0 if element.fiber is None else element.fiber * x0
        return ModelElement(case, element.w, fiber)

    def lambda_squared_holds(self, ext: TameExtension, element: CoverElement, tau: Optional[MultCharacter] = None) -> bool:
        """lambda^2 = tau(2 rho(base)); for Aut(E/F) = 1 only the trivial tau_0 is realized on E*"""
        tau = tau or self.default_tau(ext)
        return element.lam ** 2 == self._lam(ext, self.tau_two_rho(ext, element.base, tau))

    def model_key(self, ext: TameExtension, element: CoverElement) -> tuple:
        return (element.base, element.lam)

    # -- Weyl action ---------------------------------------------------------

    def weyl_act(self, ext: TameExtension, s: int, element: CoverElement, tau: Optional[MultCharacter] = None) -> CoverElement:
        """s(w, lambda) = (s w, lambda tau((s^-1 rho - rho)(w)))"""
        if s % ext.d == 0:
            return element
        if not ext.is_galois:
            raise DomainError(f"W(G, T) is trivial for {ext.kind.value}")
        tau = tau or self.default_tau(ext)
        w = element.base
        moved = ext.galois_apply(s, w)
        if ext.d == 2:
            factor = character_service.evaluate(tau, moved / w)
        else:
            factor = self.rho_tau(ext, moved, tau) * self.rho_tau(ext, w, tau).inverse()
        return CoverElement(element.case, moved, element.lam * factor)

    def weyl_act_model(self, ext: TameExtension, s: int, element: ModelElement) -> ModelElement:
        """The Weyl action on concrete models: plain conjugation of w, fiber unchanged"""
        if s % ext.d and not ext.is_galois:
            raise DomainError(f"W(G, T) is trivial for {ext.kind.value}")
        return ModelElement(element.case, ext.galois_apply(s, element.w), element.fiber, element.sign)

    # -- genuine characters --------------------------------------------------------

    def genuine_from_pair(self, pair: CharPair, case: CoverCase, tau: Optional[MultCharacter] = None) -> GenuineCharacter:
        ext = pair.ext
        if not pair.regular:
            raise DomainError(f"{pair.chi} is not regular")
        self.check_case(ext, case)
        if case in PGL_CASES:
            restricted = character_service.restrict_to_base(pair.chi)
            required = self.fiber_character(ext, case) if case != CoverCase.PGLL_SPLIT \
                else character_service.trivial(character_service.base_of(ext))
            if not character_service.same_character(restricted, required):
                logger.error(f"Central character of {pair.chi} does not fit {case.value}")
                raise ModelMismatch(f"chi restricted to F* does not match the {case.value} cover")
        return GenuineCharacter(case, pair.chi, tau or self.default_tau(ext))

    def evaluate_genuine(self, ext: TameExtension, chi_tilde: GenuineCharacter, element: ModelElement) -> CycInt:
        value = character_service.evaluate(chi_tilde.chi, element.w)
        if element.case in SPLIT_CASES:
            return value * element.sign
        return value * self._fiber_value(ext, element.case, element)

    def evaluate_on_cover(self, ext: TameExtension, chi_tilde: GenuineCharacter, element: CoverElement) -> CycInt:
        return self.evaluate_genuine(ext, chi_tilde, self.kappa_inv(ext, element, chi_tilde.tau))

    def recover_character(self, ext: TameExtension, chi_tilde: GenuineCharacter, w: ExtElement) -> CycInt:
        """eta(w) := chi_tilde(w, [z]) fiber(z/w)^-1, read at the trivial lift"""
        return self.evaluate_genuine(ext, chi_tilde, self.trivial_lift(chi_tilde.case, w))

    def is_regular_genuine(self, chi_tilde: GenuineCharacter) -> bool:
        return character_service.classify(chi_tilde.chi).regular

    # -- enumeration and splitting ---------------------------------------------------

    def model_points(self, ext: TameExtension, case: CoverCase, cutoff: int) -> Iterator[ModelElement]:
        """Both fiber points over every torus class mod F* U_E^cutoff"""
        for w in ext.torus_classes(cutoff):
            lift = self.trivial_lift(case, w)
            yield lift
            yield self.deck(ext, lift)

    def quadratic_characters(self, ext: TameExtension) -> List[MultCharacter]:
        half = (ext.q_E - 1) // 2
        return [character_service.character(ext, Fraction(a, 2), t) for a in (0, 1) for t in (0, half)]

    def check_split(self, ext: TameExtension) -> Dict[str, object]:
        """Whether 1 -> F*/N(E*) -> E*/N(E*) -> E*/F* -> 1 splits, by searching for a
        quadratic character of E* restricting to aleph_(E/F)"""
        if ext.kind not in QUADRATIC_KINDS:
            raise DomainError(f"the PGL(2) cover needs a quadratic E, got {ext.kind.value}")
        aleph = character_service.aleph_character(ext)
        splits = any(character_service.same_character(character_service.restrict_to_base(nu), aleph)
                     for nu in self.quadratic_characters(ext))
        minus_one = PadicNumber.from_int(-1, ext.p, ext.precision)
        symbol = symbols_service.hilbert(minus_one, ext.delta_padic())
        logger.info(f"PGL(2) cover over {ext.kind.value}: splits={splits}, (-1, Delta)={symbol}")
        return {"splits": splits, "hilbertMinus1Delta": symbol}


# Global instance
cover_service = CoverService()
