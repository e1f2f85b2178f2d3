"""
Tame Langlands Workbench - Character Service

Finite-order characters of E*, given by their value on the uniformizer, a tame exponent
on Teichmuller units and a wild element alpha acting through psi_E(alpha * log u).
Covers levels, alpha(chi), minimality, regular/admissible pairs, zeta(beta, varpi),
the twists Delta_chi and delta_(E/F), restriction to F* and inflation through the norm.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import List, Optional

import numpy as np

from ..algebra.exact import CycInt
from ..algebra.extensions import ExtElement, TameExtension, build_extension
from ..algebra.padic import PadicNumber, teichmuller
from ..config import CHARACTER_CONFIG
from ..exceptions import DomainError, VerificationError
from ..models.primes import ExtensionKind, QUADRATIC_KINDS
from .symbols_service import AdditiveCharacter, symbols_service

logger = logging.getLogger(__name__)


def _is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


@dataclass(frozen=True, eq=False)
class MultCharacter:
    """chi(varpi^v * omega * u1) = e(v * uniformizer_phase) zeta_(q_E-1)^(t dlog omega) psi_E(alpha log u1)"""

    ext: TameExtension
    uniformizer_phase: Fraction = Fraction(0)
    tame_exponent: int = 0
    alpha: Optional[ExtElement] = None

    def __post_init__(self):
        object.__setattr__(self, "uniformizer_phase", Fraction(self.uniformizer_phase) % 1)
        object.__setattr__(self, "tame_exponent", int(self.tame_exponent) % (self.ext.q_E - 1))
        alpha = self.alpha
        if alpha is not None and (alpha.is_zero or self.ext.valuation(alpha) >= 0):
            object.__setattr__(self, "alpha", None)

    @property
    def level(self) -> int:
        return 0 if self.alpha is None else -self.ext.valuation(self.alpha)

    @property
    def uniformizer_value(self) -> CycInt:
        return CycInt.from_phase(self.uniformizer_phase)

    def __repr__(self) -> str:
        return (f"MultCharacter({self.ext.kind.value}, phase={self.uniformizer_phase}, "
                f"t={self.tame_exponent}, alpha={self.alpha!r})")


@dataclass(frozen=True)
class CharPair:
    """(E/F, chi) with its classification computed once"""

    ext: TameExtension
    chi: MultCharacter
    regular: bool
    admissible: bool
    minimal: bool
    level: int


class CharacterService:
    """Service for multiplicative characters of tame extensions"""

    def __init__(self):
        self.config = CHARACTER_CONFIG

    def psi(self, p: int) -> AdditiveCharacter:
        return symbols_service.psi(p)

    def base_of(self, ext: TameExtension) -> TameExtension:
        return build_extension(ext.config, ExtensionKind.BASE)

    # -- construction ---------------------------------------------------------

    def character(self, ext: TameExtension, phase: Fraction = Fraction(0), tame_exponent: int = 0,
                  alpha: Optional[ExtElement] = None) -> MultCharacter:
        return MultCharacter(ext, Fraction(phase), tame_exponent, alpha)

    def trivial(self, ext: TameExtension) -> MultCharacter:
        return MultCharacter(ext)

    def unramified_quadratic(self, ext: TameExtension) -> MultCharacter:
        return MultCharacter(ext, Fraction(1, 2))

    def random_character(self, ext: TameExtension, rng: np.random.Generator, level: int,
                         phase_denominator: int = 4) -> MultCharacter:
        """Random character of exact level (alpha of valuation -level)"""
        alpha = None
        if level > 0:
            alpha = ext.random_unit(rng) * ext.uniformizer_power(-level)
        phase = Fraction(int(rng.integers(0, phase_denominator)), phase_denominator)
        return MultCharacter(ext, phase, int(rng.integers(0, ext.q_E - 1)), alpha)

    def _residue_lift(self, ext: TameExtension, r: int) -> ExtElement:
        """A unit of E with residue r"""
        if ext.e == 1:
            return ext.element(ext.residue_field.decode(r))
        return ext.scalar(r)

    # -- evaluation -----------------------------------------------------------

    def phase_at(self, chi: MultCharacter, w: ExtElement) -> Fraction:
        """chi(w) = exp(2 pi i * phase)"""
        ext = chi.ext
        if w.is_zero:
            raise DomainError("characters are not defined at zero")
        v, u = ext.unit_decompose(w)
        phase = v * chi.uniformizer_phase
        if chi.tame_exponent:
            phase += Fraction(chi.tame_exponent * ext.residue_field.dlog(ext.residue(u)), ext.q_E - 1)
        if chi.alpha is not None:
            phase += self.psi(ext.p).phase(ext.trace(chi.alpha * ext.log_unit(u)))
        return phase % 1

    def evaluate(self, chi: MultCharacter, w: ExtElement) -> CycInt:
        return CycInt.from_phase(self.phase_at(chi, w))

    def evaluate_base(self, chi: MultCharacter, x: PadicNumber) -> CycInt:
        """chi at an element of F"""
        return self.evaluate(chi, chi.ext.scalar(x))

    def psi_E(self, ext: TameExtension, y: ExtElement) -> CycInt:
        """psi(Tr_(E/F) y)"""
        if y.is_zero:
            return CycInt.one()
        return self.psi(ext.p)(ext.trace(y))

    # -- group operations ---------------------------------------------------------

    def _add_alpha(self, a: Optional[ExtElement], b: Optional[ExtElement]) -> Optional[ExtElement]:
        if a is None:
            return b
        if b is None:
            return a
        return a + b

    def product(self, a: MultCharacter, b: MultCharacter) -> MultCharacter:
        if a.ext is not b.ext:
            raise DomainError("characters of different extensions")
        return MultCharacter(a.ext, a.uniformizer_phase + b.uniformizer_phase,
                             a.tame_exponent + b.tame_exponent, self._add_alpha(a.alpha, b.alpha))

    def inverse(self, chi: MultCharacter) -> MultCharacter:
        return MultCharacter(chi.ext, -chi.uniformizer_phase, -chi.tame_exponent,
                             None if chi.alpha is None else -chi.alpha)

    def power(self, chi: MultCharacter, n: int) -> MultCharacter:
        return MultCharacter(chi.ext, n * chi.uniformizer_phase, n * chi.tame_exponent,
                             None if chi.alpha is None else chi.alpha * n)

    def conjugate(self, chi: MultCharacter, index: int = 1) -> MultCharacter:
        """chi o sigma^index"""
        ext = chi.ext
        if index % ext.d == 0:
            return chi
        phase = self.phase_at(chi, ext.galois_apply(index, ext.uniformizer()))
        field = ext.residue_field
        moved = ext.residue(ext.galois_apply(index, self._residue_lift(ext, field.generator)))
        tame = chi.tame_exponent * field.dlog(moved)
        alpha = None if chi.alpha is None else ext.galois_apply(-index, chi.alpha)
        return MultCharacter(ext, phase, tame, alpha)

    def same_character(self, a: MultCharacter, b: MultCharacter) -> bool:
        """Equality on all of E*: same phase, same tame exponent, alpha_a - alpha_b integral"""
        if a.ext is not b.ext:
            return False
        if a.uniformizer_phase != b.uniformizer_phase or a.tame_exponent != b.tame_exponent:
            return False
        if a.alpha is None or b.alpha is None:
            return a.alpha is None and b.alpha is None
        diff = a.alpha - b.alpha
        return diff.is_zero or a.ext.valuation(diff) >= 0

    # -- F* and the norm ----------------------------------------------------------

    def restrict_to_base(self, chi: MultCharacter) -> MultCharacter:
        """chi restricted to F*, as a character of the base field"""
        ext = chi.ext
        base = self.base_of(ext)
        p = ext.p
        phase = self.phase_at(chi, ext.scalar(p))
        g_F = base.residue_field.generator
        index = ext.residue_field.dlog(ext.residue(ext.scalar(g_F)))
        numerator = chi.tame_exponent * index * (p - 1)
        if numerator % (ext.q_E - 1):
            raise VerificationError(f"tame exponent {chi.tame_exponent} does not restrict to F*")
        alpha = None
        if chi.alpha is not None:
            trace = ext.trace(chi.alpha)
            alpha = None if trace.is_zero else base.scalar(trace)
        return MultCharacter(base, phase, numerator // (ext.q_E - 1), alpha)

    def compose_with_norm(self, phi: MultCharacter, ext: TameExtension) -> MultCharacter:
        """phi o N_(E/F) for a character phi of F*"""
        base = phi.ext
        if base.kind != ExtensionKind.BASE:
            raise DomainError("compose_with_norm needs a character of F*")
        p = ext.p
        phase = self.phase_at(phi, base.scalar(ext.norm(ext.uniformizer())))
        generator_norm = ext.norm(self._residue_lift(ext, ext.residue_field.generator)).residue()
        tame = phi.tame_exponent * base.residue_field.dlog(generator_norm) * ((ext.q_E - 1) // (p - 1))
        alpha = None if phi.alpha is None else ext.scalar(base.base_value(phi.alpha))
        return MultCharacter(ext, phase, tame, alpha)

    def hilbert_character(self, base: TameExtension, d: PadicNumber) -> MultCharacter:
        """x -> (x, d)_F as a character of F*"""
        p = base.p
        at_p = symbols_service.hilbert(PadicNumber.from_int(p, p, base.precision), d)
        generator = teichmuller(base.residue_field.generator, p, base.precision)
        at_units = symbols_service.hilbert(generator, d)
        return MultCharacter(base, Fraction(0 if at_p == 1 else 1, 2), 0 if at_units == 1 else (p - 1) // 2)

    def aleph_character(self, ext: TameExtension) -> MultCharacter:
        """aleph_(E/F) as a character of F*, read off its values on p and a Teichmuller generator"""
        base = self.base_of(ext)
        p = ext.p
        at_p = symbols_service.cft_character(ext, PadicNumber.from_int(p, p, ext.precision)).root_phase()
        generator = teichmuller(base.residue_field.generator, p, ext.precision)
        at_units = symbols_service.cft_character(ext, generator).root_phase()
        return MultCharacter(base, at_p, int(at_units * (p - 1)))

    def delta_EF(self, ext: TameExtension) -> MultCharacter:
        """delta_(E/F) = det Ind 1 as (., disc g)_F"""
        base = self.base_of(ext)
        if ext.kind == ExtensionKind.BASE:
            return self.trivial(base)
        disc = PadicNumber.from_int(ext.poly_discriminant(), ext.p, ext.precision)
        return self.hilbert_character(base, disc)

    def is_trivial(self, chi: MultCharacter) -> bool:
        return chi.uniformizer_phase == 0 and chi.tame_exponent == 0 and chi.alpha is None

    # -- alpha, minimality, classification ----------------------------------------

    def alpha_of_chi(self, chi: MultCharacter, rng: Optional[np.random.Generator] = None,
                     samples: Optional[int] = None) -> ExtElement:
        """alpha(chi), checked against chi(1 + x) = psi_E(alpha x) on p_E^(floor(n/2)+1)"""
        n = chi.level
        if n < 1:
            raise DomainError("alpha(chi) is defined for positive level only")
        ext = chi.ext
        rng = rng or np.random.default_rng(0)
        samples = samples or self.config["alpha_samples"]
        depth = n // 2 + 1
        for _ in range(samples):
            unit = ext.random_principal_unit(rng, depth)
            x = unit - ext.one()
            if x.is_zero:
                continue
            if self.evaluate(chi, unit) != self.psi_E(ext, chi.alpha * x):
                logger.error(f"alpha(chi) relation failed at x = {x}")
                raise VerificationError(f"chi(1 + x) != psi_E(alpha x) for x = {x}")
        return chi.alpha

    def is_minimal(self, chi: MultCharacter) -> bool:
        """(alpha + p_E^(-n+1)) meets F in the empty set"""
        n = chi.level
        if n < 1:
            raise DomainError("minimality is defined for positive level only")
        ext = chi.ext
        if n % ext.e:
            return True
        base = PadicNumber(ext.p, -(n // ext.e), 1, chi.alpha.precision)
        for r in range(1, ext.p):
            diff = chi.alpha - ext.scalar(base * r)
            if diff.is_zero or ext.valuation(diff) >= -n + 1:
                return False
        return True

    def x_coefficient(self, chi: MultCharacter) -> PadicNumber:
        """x_chi: the delta-coefficient of alpha(chi)"""
        if chi.alpha is None:
            raise DomainError("x_chi needs positive level")
        return chi.ext.coefficient(chi.alpha, 1)

    def _factors_through_norm(self, chi: MultCharacter) -> bool:
        ext = chi.ext
        if ext.kind == ExtensionKind.BASE:
            return True
        if ext.is_galois:
            return self.same_character(chi, self.conjugate(chi, 1))
        # Aut(E/F) = 1: ker N lies in U^1 and is exp of the traceless part of p_E
        if chi.alpha is None:
            return True
        x = ext.gen()
        for i in range(1, ext.d):
            trace = ext.trace(chi.alpha * x ** i)
            if not trace.is_zero and trace.valuation < 1:
                return False
        return True

    def _wild_part_factors(self, chi: MultCharacter) -> bool:
        """chi restricted to U^1 factors through the norm"""
        if chi.alpha is None:
            return True
        diff = chi.ext.galois_apply(1, chi.alpha) - chi.alpha
        return diff.is_zero or chi.ext.valuation(diff) >= 0

    def classify(self, chi: MultCharacter) -> CharPair:
        ext = chi.ext
        regular = not self._factors_through_norm(chi)
        if ext.kind == ExtensionKind.RAM_L:
            admissible = regular
        else:
            admissible = regular and (ext.e == 1 or not self._wild_part_factors(chi))
        minimal = chi.level >= 1 and self.is_minimal(chi)
        logger.debug(f"Classified {chi}: regular={regular} admissible={admissible} minimal={minimal}")
        return CharPair(ext, chi, regular, admissible, minimal, chi.level)

    # -- zeta(beta, varpi) and Delta_chi -------------------------------------------

    def zeta_root(self, ext: TameExtension, beta: ExtElement) -> PadicNumber:
        """The root of unity congruent to beta * varpi^(-v_E(beta)) mod U_E^1"""
        if ext.e == 1 or ext.f != 1:
            raise DomainError("zeta(beta, varpi) is defined for totally ramified E")
        _, unit = ext.unit_decompose(beta)
        return teichmuller(ext.residue(unit), ext.p, ext.precision)

    def strip_base_part(self, chi: MultCharacter) -> Optional[ExtElement]:
        """alpha with its F-component removed: the wild element of chi' in chi = chi' (phi o N)"""
        if chi.alpha is None:
            return None
        ext = chi.ext
        stripped = chi.alpha - ext.scalar(ext.coefficient(chi.alpha, 0))
        if stripped.is_zero or ext.valuation(stripped) >= 0:
            return None
        return stripped

    def delta_twist(self, pair: CharPair) -> MultCharacter:
        """Delta_chi"""
        if not pair.regular:
            raise DomainError(f"Delta_chi needs a regular pair, got {pair.chi}")
        ext = pair.ext
        if ext.kind == ExtensionKind.UNRAM_QUAD:
            return self.unramified_quadratic(ext)
        if ext.kind == ExtensionKind.RAM_QUAD:
            alpha = self.strip_base_part(pair.chi)
            if alpha is None:
                raise DomainError("Delta_chi for ramified E needs a wild part outside F")
            return self.ramified_delta(ext, alpha)
        if self.is_trivial(self.delta_EF(ext)):
            return self.trivial(ext)
        return self.unramified_quadratic(ext)

    def ramified_delta(self, ext: TameExtension, alpha: ExtElement) -> MultCharacter:
        """Delta(varpi) = aleph(zeta(alpha, varpi)) lambda^n, Delta = aleph on units"""
        n = -ext.valuation(alpha)
        zeta = self.zeta_root(ext, alpha)
        value = symbols_service.cft_character(ext, zeta) * \
            symbols_service.langlands_lambda(ext, self.psi(ext.p)) ** n
        phase = value.root_phase()
        if phase is None:
            raise VerificationError(f"Delta(varpi) = {value} is not a root of unity")
        return MultCharacter(ext, phase, (ext.p - 1) // 2)

    # -- tau_0 choices ----------------------------------------------------------

    def omega_characters(self, ext: TameExtension) -> List[MultCharacter]:
        """Characters of 2-power order, trivial on U^1, restricting to aleph_(E/F) on F*"""
        p = ext.p
        if ext.kind == ExtensionKind.UNRAM_QUAD:
            order = ext.q_E - 1
            found = [MultCharacter(ext, Fraction(1, 2), k * (p - 1)) for k in range(p + 1)
                     if _is_power_of_two(order // gcd(k * (p - 1), order))]
        elif ext.kind == ExtensionKind.RAM_QUAD:
            phases = (Fraction(0), Fraction(1, 2)) if p % 4 == 1 else (Fraction(1, 4), Fraction(3, 4))
            found = [MultCharacter(ext, phase, (p - 1) // 2) for phase in phases]
        else:
            raise DomainError(f"Omega-type characters are defined for quadratic E, got {ext.kind.value}")
        aleph = self.aleph_character(ext)
        for omega in found:
            if not self.same_character(self.restrict_to_base(omega), aleph):
                raise VerificationError(f"{omega} does not restrict to aleph_(E/F)")
        return found

    def tau_characters(self, ext: TameExtension) -> List[MultCharacter]:
        """Admissible tau_0 choices realized on E*"""
        if ext.kind in QUADRATIC_KINDS:
            return self.omega_characters(ext)
        if ext.kind == ExtensionKind.RAM_L:
            return [self.trivial(ext)]
        aleph = self.aleph_character(ext)
        ell = ext.d
        if ext.e == 1:
            tau = MultCharacter(ext, aleph.uniformizer_phase * (ell - 1), 0)
        else:
            tau = MultCharacter(ext, Fraction(0), aleph.tame_exponent * (ell - 1))
        if not self.same_character(self.restrict_to_base(tau), self.power(aleph, ell - 1)):
            raise VerificationError(f"{tau} does not restrict to aleph^(ell-1)")
        return [tau]

    def omega(self, ext: TameExtension) -> MultCharacter:
        """The unramified Omega for UnramQuad, the first choice otherwise"""
        return self.omega_characters(ext)[0]


# Global instance
character_service = CharacterService()
