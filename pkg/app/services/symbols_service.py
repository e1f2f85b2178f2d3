"""
Tame Langlands Workbench - Symbols Service

Additive characters, Hilbert symbols, Weil indices (closed form and Gauss-sum oracle),
Hasse invariants, Langlands constants and the class field theory characters of F*.
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Tuple

import numpy as np
from sympy import legendre_symbol

from ..algebra.exact import CycInt, ExactValue
from ..algebra.extensions import TameExtension
from ..algebra.finite_fields import residue_field
from ..algebra.padic import PadicNumber
from ..config import EXACT_CONFIG, SYMBOLS_CONFIG
from ..exceptions import DomainError, PrecisionExhausted, VerificationError
from ..models.primes import ExtensionKind, QUADRATIC_KINDS

logger = logging.getLogger(__name__)

_I = CycInt.root_of_unity(4, 1)


@lru_cache(maxsize=32)
def _positive_sqrt(p: int) -> CycInt:
    """sqrt(p) > 0 in Z[zeta_4p]: the quadratic Gauss sum g divided by its sign, 1 or i"""
    g = CycInt.from_exponent_counts(p, {a: int(legendre_symbol(a, p)) for a in range(1, p)})
    return g if p % 4 == 1 else g * -_I


def fractional_part(x: PadicNumber) -> Fraction:
    """{x} in [0, 1) for x in Q_p"""
    if x.is_zero or x.valuation >= 0:
        return Fraction(0)
    depth = -x.valuation
    if depth > x.precision:
        raise PrecisionExhausted(f"fractional part of {x} needs {depth} digits")
    return Fraction(x.unit % x.p ** depth, x.p ** depth)


@dataclass(frozen=True)
class AdditiveCharacter:
    """psi(y) = exp(2 pi i {scale * y * p^-level}); level n means trivial on p^n, not on p^(n-1)"""

    p: int
    level: int = 1
    scale: Optional[PadicNumber] = None

    def weight(self, precision: int) -> PadicNumber:
        """The element c with psi(y) = psi_0(c y)"""
        base = PadicNumber(self.p, -self.level, 1, precision)
        return base if self.scale is None else base * self.scale

    def twist(self, a: PadicNumber) -> "AdditiveCharacter":
        """a*psi : y -> psi(a y)"""
        scale = a if self.scale is None else self.scale * a
        return AdditiveCharacter(self.p, self.level, scale)

    def phase(self, y: PadicNumber) -> Fraction:
        if y.is_zero:
            return Fraction(0)
        return fractional_part(y * self.weight(y.precision))

    def __call__(self, y: PadicNumber) -> CycInt:
        return CycInt.from_phase(self.phase(y))


@dataclass(frozen=True)
class QuadForm:
    """Diagonal nondegenerate quadratic form a_1 x_1^2 + ... + a_n x_n^2"""

    coefficients: Tuple[PadicNumber, ...]

    def __post_init__(self):
        if not self.coefficients:
            raise DomainError("a quadratic form needs at least one coefficient")
        if any(a.is_zero for a in self.coefficients):
            raise DomainError("degenerate quadratic form")

    @property
    def rank(self) -> int:
        return len(self.coefficients)

    def det(self) -> PadicNumber:
        out = self.coefficients[0]
        for a in self.coefficients[1:]:
            out = out * a
        return out


@lru_cache(maxsize=SYMBOLS_CONFIG["hilbert_oracle_cache"])
def _isotropic_mod_p(coeffs: Tuple[int, ...], p: int) -> bool:
    """sum c_i x_i^2 = 0 has a solution in F_p^k other than zero"""
    if len(coeffs) < 2:
        return False
    squares = [x * x % p for x in range(p)]
    for xs in itertools.product(range(p), repeat=len(coeffs)):
        if any(xs) and sum(c * squares[x] for c, x in zip(coeffs, xs)) % p == 0:
            return True
    return False


class SymbolsService:
    """Service for local symbols and Weil indices"""

    def __init__(self):
        self.config = SYMBOLS_CONFIG

    def psi(self, p: int, level: Optional[int] = None) -> AdditiveCharacter:
        return AdditiveCharacter(p, self.config["default_psi_level"] if level is None else level)

    # -- Hilbert symbol -------------------------------------------------------

    def hilbert(self, a: PadicNumber, b: PadicNumber) -> int:
        """(a, b)_F for p odd from valuations and Legendre symbols"""
        if a.is_zero or b.is_zero:
            raise DomainError("Hilbert symbol of zero")
        p = a.p
        alpha, beta = a.valuation, b.valuation
        sign = -1 if (alpha * beta * (p - 1) // 2) % 2 else 1
        u, v = a.legendre(), b.legendre()
        return sign * (u ** (beta % 2)) * (v ** (alpha % 2))

    def hilbert_oracle(self, a: PadicNumber, b: PadicNumber) -> int:
        """Solvability of a x^2 + b y^2 = z^2: split the form into its unit and p-parts and
        search each residue form for a nontrivial zero (Hensel lifts any such zero)"""
        if a.is_zero or b.is_zero:
            raise DomainError("Hilbert symbol of zero")
        p = a.p
        unit_part, p_part = [p - 1], []
        for c in (a, b):
            (p_part if c.valuation % 2 else unit_part).append(c.unit % p)
        isotropic = _isotropic_mod_p(tuple(unit_part), p) or _isotropic_mod_p(tuple(p_part), p)
        return 1 if isotropic else -1

    # -- Weil indices ---------------------------------------------------------

    def _eighth_root(self, p: int) -> CycInt:
        """The normalized Gauss sum of x -> psi_0(x^2 / p)"""
        return CycInt.one() if p % 4 == 1 else _I

    def weil_index(self, psi: AdditiveCharacter, precision: int = 12) -> CycInt:
        """Unnormalized gamma(psi) from the closed form"""
        c = psi.weight(precision)
        if c.valuation % 2 == 0:
            return CycInt.one()
        return self._eighth_root(c.p) * c.legendre()

    def _quotient_sum(self, c: PadicNumber, m: int) -> Tuple[CycInt, int, int]:
        """sum of psi_0(c x^2) over x in p^-m O / p^k O with k the least exponent making the
        summand well defined; returns (sum, log_p of the number of points, conductor exponent)"""
        p, v = c.p, c.valuation
        k = max(m, m - v)
        points = m + k
        depth = 2 * m - v
        if depth <= 0:
            return CycInt.from_int(p ** points), points, 0
        if c.precision < depth:
            raise PrecisionExhausted(f"Gauss sum over p^-{m} needs {depth} digits of {c}")
        modulus = p ** depth
        # the summand only depends on x mod p^(depth - m); fold larger quotients into multiplicities
        span = points if p ** points <= self.config["oracle_max_points"] else depth
        y = np.arange(p ** span, dtype=np.int64)
        exponents = (y * y % modulus) * (c.unit % modulus) % modulus
        counts = np.bincount(exponents, minlength=modulus) * p ** (points - span)
        total = CycInt.from_exponent_counts(modulus, {int(e): int(n) for e, n in enumerate(counts) if n})
        return total, points, depth

    def _normalized_sum(self, c: PadicNumber, m: int) -> CycInt:
        """S_m / |S_m| decided exactly against the positive square root of p"""
        p = c.p
        total, points, depth = self._quotient_sum(c, m)
        value = ExactValue.make(p, 0, total)
        expected = 2 * (points - depth) + (depth if depth % 2 == 0 else depth - 1)
        if value.half_exp != expected:
            raise VerificationError(f"Gauss sum over p^-{m} for {c} has modulus q^{value.half_exp}/2")
        if depth % 2 == 0:
            if not value.cyc.is_one():
                raise VerificationError(f"Gauss sum of even depth for {c} is {value}")
            return value.cyc
        root = _positive_sqrt(p)
        for candidate in (CycInt.one(), CycInt.from_int(-1), _I, -_I):
            if value.cyc == candidate * root:
                return candidate
        raise VerificationError(f"Gauss sum over p^-{m} for {c} is not a unit times sqrt({p})")

    def weil_index_oracle(self, psi: AdditiveCharacter, precision: int = 12) -> CycInt:
        """Unnormalized gamma(psi) from S_m = sum psi(x^2) over p^-m O / p^m O, taking the least m
        with a nontrivial summand and confirming the value at the next levels"""
        c = psi.weight(precision)
        m = max(0, (c.valuation + 2) // 2)
        value = self._normalized_sum(c, m)
        for step in range(1, self.config["gauss_stabilization_steps"] + 1):
            deeper = m + step
            if c.p ** (2 * deeper - c.valuation) > EXACT_CONFIG["max_conductor"]:
                logger.warning(f"Skipping Gauss-sum stabilization over p^-{deeper} for {c}")
                break
            if self._normalized_sum(c, deeper) != value:
                raise PrecisionExhausted(f"Gauss sums for {c} did not stabilize over p^-{deeper}")
        return value

    def weil_gamma(self, a: PadicNumber, psi: AdditiveCharacter) -> CycInt:
        """Normalized gamma_F(a, psi) = gamma(a psi) / gamma(psi) from the oracle"""
        if a.is_zero:
            raise DomainError("Weil index of zero")
        value = self.weil_index_oracle(psi.twist(a), a.precision) * \
            self.weil_index_oracle(psi, a.precision).inverse()
        return value

    def weil_gamma_closed(self, a: PadicNumber, psi: AdditiveCharacter) -> CycInt:
        if a.is_zero:
            raise DomainError("Weil index of zero")
        return self.weil_index(psi.twist(a), a.precision) * self.weil_index(psi, a.precision).inverse()

    def form_weil_index(self, form: QuadForm, psi: AdditiveCharacter) -> CycInt:
        """gamma(psi o Q) = prod gamma(a_i psi) for a diagonal form"""
        out = CycInt.one()
        for a in form.coefficients:
            out = out * self.weil_index_oracle(psi.twist(a), a.precision)
        return out

    def hasse_invariant(self, form: QuadForm, psi: AdditiveCharacter) -> int:
        """h(Q) = gamma(psi o Q) gamma(psi)^-n gamma_F(det Q, psi)^-1"""
        precision = min(a.precision for a in form.coefficients)
        value = self.form_weil_index(form, psi) \
            * self.weil_index_oracle(psi, precision) ** (-form.rank) \
            * self.weil_gamma(form.det(), psi).inverse()
        return value.sign()

    def hasse_closed(self, form: QuadForm) -> int:
        out = 1
        for a, b in itertools.combinations(form.coefficients, 2):
            out *= self.hilbert(a, b)
        return out

    # -- Langlands constant and class field theory ----------------------------

    def langlands_lambda(self, ext: TameExtension, psi: AdditiveCharacter) -> CycInt:
        """Weil index of psi o N on the norm form diag(1, -Delta)"""
        if ext.kind not in QUADRATIC_KINDS:
            raise DomainError(f"lambda_(E/F) is computed for quadratic E only, got {ext.kind.value}")
        delta = ext.delta_padic()
        form = QuadForm((PadicNumber.from_int(1, ext.p, ext.precision), -delta))
        return self.form_weil_index(form, psi)

    def langlands_lambda_closed(self, ext: TameExtension, psi: AdditiveCharacter) -> CycInt:
        delta = ext.delta_padic()
        minus_one = PadicNumber.from_int(-1, ext.p, ext.precision)
        return self.weil_gamma_closed(delta, psi) * self.hilbert(minus_one, delta)

    @lru_cache(maxsize=64)
    def _norm_residues(self, ext: TameExtension) -> Tuple[int, Tuple[int, ...]]:
        """(index of N(E*) in F*, residues of norms of Teichmuller units)"""
        field = residue_field(ext.p, 1)
        residues = sorted({ext.norm(ext.scalar(r)).residue() for r in range(1, ext.p)})
        index = (ext.p - 1) // len(residues)
        if index * len(residues) != ext.p - 1 or any(field.dlog(r) % index for r in residues):
            raise VerificationError(f"norm residues of {ext.kind.value} do not form a subgroup")
        return index, tuple(residues)

    def cft_character(self, ext: TameExtension, x: PadicNumber) -> CycInt:
        """aleph_(E/F)(x), with kernel N(E*)"""
        if x.is_zero:
            raise DomainError("aleph of zero")
        if ext.kind == ExtensionKind.BASE:
            return CycInt.one()
        if ext.kind in QUADRATIC_KINDS:
            return CycInt.from_int(self.hilbert(x, ext.delta_padic()))
        if ext.kind == ExtensionKind.UNRAM_L:
            return CycInt.root_of_unity(ext.d, x.valuation)
        # totally ramified of degree ell: v_F(N(varpi)) = 1
        index, _ = self._norm_residues(ext)
        norm_uniformizer = ext.norm(ext.uniformizer())
        unit = x / norm_uniformizer ** x.valuation
        return CycInt.root_of_unity(index, residue_field(ext.p, 1).dlog(unit.residue()) % index)

    def norm_group_index(self, ext: TameExtension) -> int:
        """[F* : N(E*)] from the enumerated norm residues"""
        if ext.kind == ExtensionKind.BASE:
            return 1
        if ext.e == 1:
            return ext.d
        if ext.kind in QUADRATIC_KINDS:
            return 2
        return self._norm_residues(ext)[0]


# Global instance
symbols_service = SymbolsService()
