"""
Tame Langlands Workbench - Tame Extensions

Tame extensions E/F of F = Q_p as quotient rings F[x]/(g): elements are p^k times a
coefficient vector, with valuation, norm, trace, stored Galois generators, the unit
filtration F*U_E^k, and log/exp on principal units.
"""

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import log
from typing import Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import Matrix, Poly, discriminant, primitive_root, symbols
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p

from ..exceptions import ConfigError, DomainError, PrecisionExhausted, VerificationError
from ..models.primes import ExtensionKind, PrimeConfig
from .finite_fields import FqField, first_irreducible, residue_field
from .padic import PadicNumber, teichmuller_int, v_p

logger = logging.getLogger(__name__)

_X = symbols("x")

Scalar = Union[int, Fraction, PadicNumber]


class LevelTag(str, Enum):
    """Special outcomes of the unit filtration search"""
    NOT_IN_FU = "not-in-F*U"
    IN_F = "in-F*"


@dataclass(frozen=True, eq=False)
class ExtElement:
    """p^k * sum_i coeffs[i] x^i, coefficients known mod p^precision"""

    ext: "TameExtension"
    k: int
    coeffs: Tuple[int, ...]
    precision: int
    is_zero: bool = False

    def _other(self, other) -> "ExtElement":
        if isinstance(other, ExtElement):
            if other.ext is not self.ext:
                raise DomainError("elements of different extensions")
            return other
        if isinstance(other, (int, Fraction, PadicNumber)):
            return self.ext.scalar(other, self.precision)
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        if other.is_zero:
            return self
        if self.is_zero:
            return other
        p = self.ext.p
        k = min(self.k, other.k)
        absolute = min(self.k + self.precision, other.k + other.precision)
        modulus = p ** (absolute - k)
        sa, sb = p ** (self.k - k), p ** (other.k - k)
        coeffs = [(a * sa + b * sb) % modulus for a, b in zip(self.coeffs, other.coeffs)]
        return self.ext._make(k, coeffs, absolute - k)

    __radd__ = __add__

    def __neg__(self) -> "ExtElement":
        if self.is_zero:
            return self
        modulus = self.ext.p ** self.precision
        return ExtElement(self.ext, self.k, tuple((-c) % modulus for c in self.coeffs), self.precision)

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, PadicNumber)):
            return self.ext.scale(self, other)
        other = self._other(other)
        if other is NotImplemented:
            return other
        precision = min(self.precision, other.precision)
        if self.is_zero or other.is_zero:
            return self.ext.zero(precision)
        coeffs = self.ext._poly_mul(self.coeffs, other.coeffs)
        return self.ext._make(self.k + other.k, coeffs, precision)

    __rmul__ = __mul__

    def inverse(self) -> "ExtElement":
        return self.ext.inverse(self)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, PadicNumber)):
            return self.ext.scale(self, 1 / PadicNumber.from_fraction(other, self.ext.p, self.precision)
                                  if not isinstance(other, PadicNumber) else other.inverse())
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int) -> "ExtElement":
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.ext.one(self.precision), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, PadicNumber)):
            other = self.ext.scalar(other, self.precision)
        if not isinstance(other, ExtElement) or other.ext is not self.ext:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        if self.k != other.k:
            return False
        modulus = self.ext.p ** min(self.precision, other.precision)
        return all((a - b) % modulus == 0 for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self) -> int:
        if self.is_zero:
            return hash("zero")
        return hash((self.k, tuple(c % self.ext.p for c in self.coeffs)))

    def valuation(self) -> int:
        return self.ext.valuation(self)

    def conj(self) -> "ExtElement":
        """Image under the stored Galois generator"""
        return self.ext.galois_apply(1, self)

    def __repr__(self) -> str:
        if self.is_zero:
            return "ExtElement(0)"
        return f"ExtElement(p^{self.k} * {list(self.coeffs)} mod p^{self.precision})"


class TameExtension:
    """E = F[x]/(g) with its Galois generator, uniformizer and residue field"""

    def __init__(self, config: PrimeConfig, kind: ExtensionKind, poly: Sequence[int],
                 e: int, delta: Optional[int] = None):
        self.config = config
        self.kind = kind
        self.p = config.p
        self.precision = config.precision
        self.poly = tuple(int(c) for c in poly)
        self.d = len(self.poly) - 1
        self.e = e
        self.f = self.d // e
        self.q_E = self.p ** self.f
        self.delta = delta
        if self.f > 1:
            residue_modulus = tuple(int(c) % self.p for c in reversed(self.poly))
            self.residue_field: FqField = residue_field(self.p, self.f, residue_modulus)
        else:
            self.residue_field = residue_field(self.p, 1)
        self.galois_order = self.d if kind not in (ExtensionKind.RAM_L,) else 1
        self._images: List[ExtElement] = []
        if self.d > 1 and self.galois_order > 1:
            self._images = self._build_galois_images()

    # -- construction helpers -------------------------------------------------

    def _make(self, k: int, coeffs: Sequence[int], precision: int) -> ExtElement:
        if precision < 1:
            raise PrecisionExhausted(f"relative precision {precision} < 1 in {self.kind.value}")
        p = self.p
        modulus = p ** precision
        coeffs = [int(c) % modulus for c in coeffs]
        nonzero = [c for c in coeffs if c]
        if not nonzero:
            return self.zero(precision)
        shift = min(v_p(c, p) for c in nonzero)
        if shift:
            precision -= shift
            if precision < 1:
                raise PrecisionExhausted("cancellation consumed every stored digit")
            coeffs = [c // p ** shift for c in coeffs]
        return ExtElement(self, k + shift, tuple(coeffs), precision)

    def element(self, coeffs: Sequence[Scalar], k: int = 0, precision: Optional[int] = None) -> ExtElement:
        """p^k * sum coeffs[i] x^i; coefficients may be integers, fractions or p-adics"""
        precision = precision or self.precision
        coeffs = list(coeffs) + [0] * (self.d - len(coeffs))
        if len(coeffs) != self.d:
            raise DomainError(f"expected {self.d} coefficients, got {len(coeffs)}")
        result = self.zero(precision)
        for i, c in enumerate(coeffs):
            if isinstance(c, int):
                if c == 0:
                    continue
                basis = [0] * self.d
                basis[i] = c
                result = result + self._make(k, basis, precision)
            else:
                c = c if isinstance(c, PadicNumber) else PadicNumber.from_fraction(c, self.p, precision)
                if c.is_zero:
                    continue
                basis = [0] * self.d
                basis[i] = c.unit
                result = result + self._make(k + c.valuation, basis, c.precision)
        return result

    def zero(self, precision: Optional[int] = None) -> ExtElement:
        return ExtElement(self, 0, (0,) * self.d, precision or self.precision, True)

    def one(self, precision: Optional[int] = None) -> ExtElement:
        return self._make(0, [1] + [0] * (self.d - 1), precision or self.precision)

    def scalar(self, c: Scalar, precision: Optional[int] = None) -> ExtElement:
        """Embedding F -> E"""
        precision = precision or self.precision
        if not isinstance(c, PadicNumber):
            c = PadicNumber.from_fraction(c, self.p, precision)
        if c.is_zero:
            return self.zero(precision)
        return self._make(c.valuation, [c.unit] + [0] * (self.d - 1), c.precision)

    def scale(self, w: ExtElement, c: Scalar) -> ExtElement:
        """w * c for c in F"""
        if not isinstance(c, PadicNumber):
            c = PadicNumber.from_fraction(c, self.p, w.precision)
        if w.is_zero or c.is_zero:
            return self.zero(min(w.precision, c.precision))
        precision = min(w.precision, c.precision)
        modulus = self.p ** precision
        return self._make(w.k + c.valuation, [a * c.unit % modulus for a in w.coeffs], precision)

    def gen(self) -> ExtElement:
        """The adjoined root x (delta for quadratic kinds)"""
        if self.d == 1:
            raise DomainError("the base field has no adjoined root")
        return self._make(0, [0, 1] + [0] * (self.d - 2), self.precision)

    def delta(self) -> ExtElement:
        return self.gen()

    def uniformizer(self) -> ExtElement:
        return self.uniformizer_power(1)

    def uniformizer_power(self, v: int) -> ExtElement:
        """varpi^v with varpi = x for ramified kinds and p otherwise"""
        if self.e == 1:
            return self._make(v, [1] + [0] * (self.d - 1), self.precision)
        a, r = divmod(v, self.e)
        u0 = self.delta_unit
        modulus = self.p ** self.precision
        coeffs = [0] * self.d
        coeffs[r] = pow(u0, a, modulus)
        return self._make(a, coeffs, self.precision)

    @property
    def delta_unit(self) -> int:
        """u0 with Delta = p * u0 for ramified kinds"""
        if self.e == 1:
            raise DomainError("unramified extensions have no Eisenstein constant")
        return (self.delta // self.p) % self.p ** self.precision

    @property
    def is_galois(self) -> bool:
        return self.galois_order == self.d

    @property
    def is_ramified(self) -> bool:
        return self.e > 1

    @property
    def is_quadratic(self) -> bool:
        return self.d == 2

    def delta_padic(self) -> PadicNumber:
        """Delta as an element of F (the nonsquare unit for UnramQuad)"""
        if self.delta is None:
            raise DomainError(f"{self.kind.value} has no Delta")
        return PadicNumber.from_int(self.delta, self.p, self.precision)

    # -- ring arithmetic ------------------------------------------------------

    def _poly_mul(self, a: Sequence[int], b: Sequence[int]) -> List[int]:
        d = self.d
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        g = self.poly
        for i in range(2 * d - 2, d - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j in range(d):
                    if g[j]:
                        prod[i - d + j] -= c * g[j]
        return prod[:d]

    def mult_matrix(self, coeffs: Sequence[int]) -> Matrix:
        """Matrix of multiplication by sum coeffs[i] x^i on the basis 1, x, ..., x^{d-1}"""
        cols = []
        for j in range(self.d):
            basis = [0] * self.d
            basis[j] = 1
            cols.append(self._poly_mul(coeffs, basis))
        return Matrix(self.d, self.d, lambda i, j: cols[j][i])

    def inverse(self, w: ExtElement) -> ExtElement:
        if w.is_zero:
            raise DomainError("division by zero in E")
        if self.d == 1:
            return self.scalar(self.base_value(w).inverse(), w.precision)
        m = self.mult_matrix(w.coeffs)
        det = int(m.det())
        adj_col = [int(c) for c in m.adjugate()[:, 0]]
        dv = v_p(det, self.p)
        precision = w.precision - dv
        if precision < 1:
            raise PrecisionExhausted("inverse lost every stored digit")
        modulus = self.p ** precision
        unit_inv = pow((det // self.p ** dv) % modulus, -1, modulus)
        return self._make(-w.k - dv, [c * unit_inv for c in adj_col], precision)

    def norm(self, w: ExtElement) -> PadicNumber:
        """Determinant of multiplication by w"""
        if w.is_zero:
            return PadicNumber.zero(self.p, w.precision)
        det = int(self.mult_matrix(w.coeffs).det())
        return PadicNumber.make(self.p, self.d * w.k, det, w.precision)

    def trace(self, w: ExtElement) -> PadicNumber:
        if w.is_zero:
            return PadicNumber.zero(self.p, w.precision)
        tr = int(self.mult_matrix(w.coeffs).trace())
        if tr % self.p ** w.precision == 0:
            return PadicNumber.zero(self.p, w.precision)
        return PadicNumber.make(self.p, w.k, tr, w.precision)

    def charpoly_discriminant(self, w: ExtElement) -> PadicNumber:
        """Discriminant of the characteristic polynomial of w over F"""
        m = self.mult_matrix(w.coeffs)
        disc = int(discriminant(m.charpoly(_X).as_expr(), _X))
        if disc == 0:
            raise DomainError(f"{w} is not regular")
        return PadicNumber.make(self.p, w.k * self.d * (self.d - 1), disc, w.precision)

    def poly_discriminant(self) -> int:
        return int(discriminant(Poly(list(reversed(self.poly)), _X).as_expr(), _X))

    # -- valuation, residues, base field ------------------------------------

    def valuation(self, w: ExtElement) -> int:
        """v_E normalized so v_E(varpi) = 1"""
        if w.is_zero:
            raise DomainError("valuation of zero")
        if self.e == 1:
            return w.k
        modulus = self.p ** w.precision
        inner = min(self.e * v_p(c, self.p) + i for i, c in enumerate(w.coeffs) if c % modulus)
        return self.e * w.k + inner

    def residue(self, w: ExtElement) -> int:
        """Image of a unit in the residue field F_{q_E}"""
        if w.is_zero or self.valuation(w) != 0:
            raise DomainError(f"{w} is not a unit")
        if self.e == 1:
            return self.residue_field.encode(w.coeffs)
        return self.residue_field.encode([w.coeffs[0]])

    def unit_decompose(self, w: ExtElement) -> Tuple[int, ExtElement]:
        """(v, u) with w = varpi^v * u and u a unit"""
        v = self.valuation(w)
        return v, w * self.uniformizer_power(-v)

    def in_base(self, w: ExtElement) -> bool:
        if w.is_zero:
            return True
        modulus = self.p ** w.precision
        return all(c % modulus == 0 for c in w.coeffs[1:])

    def base_value(self, w: ExtElement) -> PadicNumber:
        """w as an element of F"""
        if not self.in_base(w):
            raise DomainError(f"{w} is not in F")
        if w.is_zero:
            return PadicNumber.zero(self.p, w.precision)
        return PadicNumber.make(self.p, w.k, w.coeffs[0], w.precision)

    def coefficient(self, w: ExtElement, i: int) -> PadicNumber:
        """p^k * coeffs[i] as an element of F"""
        if w.is_zero or w.coeffs[i] % self.p ** w.precision == 0:
            return PadicNumber.zero(self.p, w.precision)
        return PadicNumber.make(self.p, w.k, w.coeffs[i], w.precision)

    # -- Galois action --------------------------------------------------------

    def _evaluate_at(self, w: ExtElement, image: ExtElement) -> ExtElement:
        """sum c_i image^i scaled by p^k (Horner)"""
        result = self.zero(w.precision)
        for c in reversed(w.coeffs):
            result = result * image + self._make(0, [c] + [0] * (self.d - 1), w.precision) if c else result * image
        return self.scale(result, PadicNumber(self.p, w.k, 1, w.precision))

    def _build_galois_images(self) -> List[ExtElement]:
        x = self.gen()
        if self.kind == ExtensionKind.UNRAM_QUAD or self.kind == ExtensionKind.RAM_QUAD:
            first = -x
        elif self.kind == ExtensionKind.RAM_GALOIS_L:
            root = pow(int(primitive_root(self.p)), (self.p - 1) // self.d, self.p)
            first = self.scale(x, PadicNumber(self.p, 0, teichmuller_int(root, self.p, self.precision), self.precision))
        else:
            first = self._frobenius_lift()
        images = [x, first]
        for _ in range(self.d - 2):
            images.append(self._evaluate_at(images[-1], first))
        back = self._evaluate_at(images[-1], first)
        if not self._is_root(first) or back != x:
            raise VerificationError(f"Galois generator of {self.kind.value} failed verification")
        return images

    def _poly_value(self, y: ExtElement, coeffs: Sequence[int]) -> ExtElement:
        result = self.zero(y.precision)
        for c in reversed(coeffs):
            result = result * y + self.scalar(c, y.precision) if c else result * y
        return result

    def _is_root(self, y: ExtElement) -> bool:
        return self._poly_value(y, self.poly).is_zero

    def _frobenius_lift(self) -> ExtElement:
        """Root of g congruent to x^p (Newton iteration)"""
        derivative = [i * c for i, c in enumerate(self.poly)][1:]
        y = self.gen() ** self.p
        for _ in range(self.precision.bit_length() + 2):
            y = y - self._poly_value(y, self.poly) / self._poly_value(y, derivative)
        return y

    def galois_apply(self, index: int, w: ExtElement) -> ExtElement:
        """sigma^index (w) for the stored generator sigma"""
        if not self.is_galois:
            if index % self.d and self.d > 1:
                raise DomainError(f"{self.kind.value} has no nontrivial automorphisms")
            return w
        index %= self.d
        if index == 0 or w.is_zero:
            return w
        return self._evaluate_at(w, self._images[index])

    def conjugates(self, w: ExtElement) -> List[ExtElement]:
        return [self.galois_apply(i, w) for i in range(self.galois_order)]

    # -- unit filtration ------------------------------------------------------

    def normalized_unit(self, w: ExtElement) -> Optional[Tuple[PadicNumber, ExtElement]]:
        """(p^j, U) with w = p^j U and U a unit, or None when e does not divide v_E(w)"""
        v = self.valuation(w)
        if v % self.e:
            return None
        base = PadicNumber(self.p, v // self.e, 1, w.precision)
        return base, w / base

    def unit_level_closed(self, w: ExtElement) -> Union[int, LevelTag]:
        """Level read off the coefficients of the normalized unit"""
        split = self.normalized_unit(w)
        if split is None:
            return LevelTag.NOT_IN_FU
        _, unit = split
        modulus = self.p ** unit.precision
        if unit.coeffs[0] % self.p == 0:
            return 0
        step = 1 if self.e > 1 else 0
        tail = [self.e * v_p(c, self.p) + i * step for i, c in enumerate(unit.coeffs) if i and c % modulus]
        return min(tail) if tail else LevelTag.IN_F

    def unit_level(self, w: ExtElement) -> Union[int, LevelTag]:
        """Largest k with w in F* U_E^k, found by searching F-representatives digit by digit"""
        split = self.normalized_unit(w)
        if split is None:
            return LevelTag.NOT_IN_FU
        _, unit = split
        cap = self.e * unit.precision
        one = self.one(unit.precision)

        def level_for(r: int) -> int:
            diff = unit / PadicNumber.from_int(r, self.p, unit.precision) - one
            return cap if diff.is_zero else min(self.valuation(diff), cap)

        candidates = list(range(1, self.p))
        s = 1
        while True:
            scored = [(level_for(r), r) for r in candidates]
            top = max(level for level, _ in scored)
            if top >= cap:
                return LevelTag.IN_F
            if top < self.e * s:
                return top
            winners = [r for level, r in scored if level == top]
            candidates = [r + digit * self.p ** s for r in winners for digit in range(self.p)]
            s += 1

    def depth(self, level: Union[int, LevelTag]) -> Fraction:
        """n(w) from the unit level"""
        if level == LevelTag.IN_F:
            raise DomainError("elements of F* have no depth")
        if level == LevelTag.NOT_IN_FU or level == 0:
            return Fraction(0)
        return Fraction(level, self.e)

    # -- log / exp ------------------------------------------------------------

    def _divide_by_int(self, w: ExtElement, n: int) -> ExtElement:
        return self.scale(w, PadicNumber.from_fraction(Fraction(1, n), self.p, w.precision))

    def log(self, w: ExtElement) -> ExtElement:
        """log on U_E^1 as a truncated series"""
        if w.is_zero or self.valuation(w) != 0 or self.residue(w) != 1:
            raise DomainError(f"log is defined on principal units only, got {w}")
        y = w - self.one(w.precision)
        if y.is_zero:
            return self.zero(w.precision)
        vy = self.valuation(y)
        target = self.e * w.precision
        total = self.zero(w.precision)
        power = y
        n = 1
        while n * vy - self.e * (log(n) / log(self.p)) <= target + self.e:
            term = self._divide_by_int(power, n)
            total = total + term if n % 2 else total - term
            power = power * y
            n += 1
        return total

    def exp(self, y: ExtElement) -> ExtElement:
        """exp on p_E as a truncated series"""
        if y.is_zero:
            return self.one(y.precision)
        vy = self.valuation(y)
        if vy < 1:
            raise DomainError(f"exp needs v_E >= 1, got {vy}")
        target = self.e * (y.k + y.precision)
        total = self.one(y.precision)
        term = self.one(y.precision)
        n = 1
        while n * vy - self.e * (n - 1) / (self.p - 1) <= target + self.e:
            term = self._divide_by_int(term * y, n)
            total = total + term
            n += 1
        return total

    def log_unit(self, u: ExtElement) -> ExtElement:
        """log of the principal-unit part of a unit: log(u^{q_E-1}) / (q_E-1)"""
        return self._divide_by_int(self.log(u ** (self.q_E - 1)), self.q_E - 1)

    # -- enumeration ----------------------------------------------------------

    def unit_classes(self, cutoff: int) -> Iterator[ExtElement]:
        """Representatives of O_E* / Z_p* U_E^cutoff"""
        p, d = self.p, self.d
        if self.e == 1:
            modulus = p ** cutoff
            for lead in range(d):
                ranges = []
                for i in range(d):
                    if i < lead:
                        ranges.append(range(0, modulus, p))
                    elif i == lead:
                        ranges.append((1,))
                    else:
                        ranges.append(range(modulus))
                for coeffs in itertools.product(*ranges):
                    yield self._make(0, coeffs, self.precision)
        else:
            ranges = [(1,)]
            for i in range(1, d):
                digits = max(0, -(-(cutoff - i) // self.e))
                ranges.append(range(p ** digits))
            for coeffs in itertools.product(*ranges):
                yield self._make(0, coeffs, self.precision)

    def torus_classes(self, cutoff: int) -> Iterator[ExtElement]:
        """Representatives of E* / F* U_E^cutoff"""
        if self.d == 1:
            raise DomainError("the base field has no elliptic torus")
        for j in range(self.e):
            shift = self.uniformizer_power(j)
            for unit in self.unit_classes(cutoff):
                yield unit * shift if j else unit

    def random_element(self, rng: np.random.Generator, kmin: int = -1, kmax: int = 2) -> ExtElement:
        """Random nonzero element with p-power in [kmin, kmax]"""
        modulus = self.p ** self.precision
        while True:
            coeffs = [int(rng.integers(0, modulus)) for _ in range(self.d)]
            if any(c % self.p for c in coeffs):
                return self._make(int(rng.integers(kmin, kmax + 1)), coeffs, self.precision)

    def random_unit(self, rng: np.random.Generator) -> ExtElement:
        while True:
            w = self.random_element(rng, 0, 0)
            if self.valuation(w) == 0:
                return w

    def random_principal_unit(self, rng: np.random.Generator, level: int = 1) -> ExtElement:
        """Random element of U_E^level"""
        modulus = self.p ** self.precision
        coeffs = [int(rng.integers(0, modulus)) for _ in range(self.d)]
        body = self._make(0, coeffs, self.precision) if any(coeffs) else self.one()
        return self.one() + body * self.uniformizer_power(level)

    def descriptor(self) -> dict:
        return {"kind": self.kind.value, "p": self.p, "ell": self.config.ell, "Delta": self.delta}

    def __repr__(self) -> str:
        return f"TameExtension({self.kind.value}, p={self.p}, g={list(self.poly)})"


def smallest_nonresidue(p: int) -> int:
    return next(u for u in range(2, p) if pow(u, (p - 1) // 2, p) == p - 1)


def _eisenstein_delta(p: int, delta: Optional[int], degree: int) -> int:
    delta = p if delta is None else int(delta)
    if delta == 0:
        raise DomainError("Delta must be nonzero")
    v = v_p(delta, p)
    if v % degree == 0:
        raise DomainError(f"Delta = {delta} has valuation {v}: the extension would be unramified")
    if degree == 2 and v > 1:
        reduced = delta // p ** (v - 1)
        logger.info(f"Delta = {delta} replaced by {reduced}: same quadratic extension, valuation 1")
        return reduced
    if v != 1:
        raise DomainError(f"Delta must have valuation 1 for degree {degree}, got {v}")
    return delta


@lru_cache(maxsize=64)
def build_extension(config: PrimeConfig, kind: ExtensionKind, delta: Optional[int] = None) -> TameExtension:
    """Construct and verify a tame extension of Q_p"""
    p, ell = config.p, config.ell
    logger.info(f"Building {kind.value} over Q_{p} (ell={ell}, Delta={delta})")
    if kind == ExtensionKind.BASE:
        return TameExtension(config, kind, (0, 1), 1)
    if kind == ExtensionKind.UNRAM_QUAD:
        eps = smallest_nonresidue(p) if delta is None else int(delta)
        if v_p(eps, p) or pow(eps % p, (p - 1) // 2, p) != p - 1:
            raise DomainError(f"UnramQuad needs a nonsquare unit, got {eps}")
        eps = eps % p
        return TameExtension(config, kind, (-eps, 0, 1), 1, eps)
    if kind == ExtensionKind.RAM_QUAD:
        d = _eisenstein_delta(p, delta, 2)
        return TameExtension(config, kind, (-d, 0, 1), 2, d)
    if ell == 2:
        raise ConfigError(f"{kind.value} needs an odd ell")
    if kind == ExtensionKind.UNRAM_L:
        residue_poly = first_irreducible(p, ell, prefer_binomial=True)
        if not gf_irreducible_p(list(residue_poly), p, ZZ):
            raise VerificationError("residue polynomial is reducible")
        return TameExtension(config, kind, tuple(reversed(residue_poly)), 1)
    if kind == ExtensionKind.RAM_GALOIS_L:
        if (p - 1) % ell:
            raise DomainError(f"RamGaloisL needs ell | p-1, got p={p}, ell={ell}")
        d = _eisenstein_delta(p, delta, ell)
        return TameExtension(config, kind, (-d,) + (0,) * (ell - 1) + (1,), ell, d)
    if kind == ExtensionKind.RAM_L:
        if (p - 1) % ell == 0:
            raise DomainError(f"RamL needs ell not dividing p-1, got p={p}, ell={ell}")
        d = _eisenstein_delta(p, delta, ell)
        return TameExtension(config, kind, (-d,) + (0,) * (ell - 1) + (1,), ell, d)
    raise DomainError(f"unknown extension kind {kind}")
