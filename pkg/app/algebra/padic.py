"""
Tame Langlands Workbench - p-adic Numbers

Elements of Q_p as valuation + unit digits at a tracked relative precision,
with square classes, Hensel square roots and Teichmuller representatives.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Union

from sympy import legendre_symbol, multiplicity, sqrt_mod

from ..exceptions import DomainError, PrecisionExhausted

logger = logging.getLogger(__name__)

Rational = Union[int, Fraction]


def v_p(n: int, p: int) -> int:
    """Valuation of a nonzero integer"""
    return int(multiplicity(p, abs(n)))


@dataclass(frozen=True, eq=False)
class PadicNumber:
    """p^valuation * unit, unit known mod p^precision; is_zero marks an exact zero"""

    p: int
    valuation: int = 0
    unit: int = 0
    precision: int = 0
    is_zero: bool = False

    @classmethod
    def make(cls, p: int, valuation: int, unit: int, precision: int) -> "PadicNumber":
        """Normalize an integer 'unit' known mod p^precision"""
        if precision < 1:
            raise PrecisionExhausted(f"relative precision {precision} < 1")
        unit %= p ** precision
        if unit == 0:
            return cls.zero(p, precision)
        shift = v_p(unit, p)
        if shift:
            precision -= shift
            if precision < 1:
                raise PrecisionExhausted("cancellation consumed every stored digit")
            unit //= p ** shift
        return cls(p, valuation + shift, unit % p ** precision, precision)

    @classmethod
    def zero(cls, p: int, precision: int = 1) -> "PadicNumber":
        return cls(p, 0, 0, precision, True)

    @classmethod
    def from_int(cls, n: int, p: int, precision: int) -> "PadicNumber":
        if n == 0:
            return cls.zero(p, precision)
        v = v_p(n, p)
        return cls(p, v, (n // p ** v) % p ** precision, precision)

    @classmethod
    def from_fraction(cls, x: Rational, p: int, precision: int) -> "PadicNumber":
        x = Fraction(x)
        if x == 0:
            return cls.zero(p, precision)
        num, den = x.numerator, x.denominator
        vn, vd = v_p(num, p), v_p(den, p)
        modulus = p ** precision
        unit = (num // p ** vn) * pow(den // p ** vd, -1, modulus) % modulus
        return cls(p, vn - vd, unit, precision)

    @property
    def modulus(self) -> int:
        return self.p ** self.precision

    def residue(self) -> int:
        """Unit residue in F_p (0 for an exact zero)"""
        return 0 if self.is_zero else self.unit % self.p

    def digits(self) -> List[int]:
        """Base-p digits d0..d_{N-1} of the unit"""
        u, out = self.unit, []
        for _ in range(self.precision):
            out.append(u % self.p)
            u //= self.p
        return out

    def to_fraction(self) -> Fraction:
        if self.is_zero:
            return Fraction(0)
        return Fraction(self.p) ** self.valuation * self.unit

    def is_unit(self) -> bool:
        return not self.is_zero and self.valuation == 0

    def is_integral(self) -> bool:
        return self.is_zero or self.valuation >= 0

    def absolute_precision(self) -> float:
        return float("inf") if self.is_zero else self.valuation + self.precision

    def with_precision(self, precision: int) -> "PadicNumber":
        if self.is_zero:
            return PadicNumber.zero(self.p, precision)
        precision = min(precision, self.precision)
        return PadicNumber(self.p, self.valuation, self.unit % self.p ** precision, precision)

    def _coerce(self, other) -> "PadicNumber":
        if isinstance(other, PadicNumber):
            if other.p != self.p:
                raise DomainError(f"mixing Q_{self.p} and Q_{other.p}")
            return other
        if isinstance(other, (int, Fraction)):
            return PadicNumber.from_fraction(other, self.p, self.precision)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero:
            return self
        if self.is_zero:
            return other
        v = min(self.valuation, other.valuation)
        absolute = min(self.valuation + self.precision, other.valuation + other.precision)
        modulus = self.p ** (absolute - v)
        total = (self.unit * self.p ** (self.valuation - v) + other.unit * self.p ** (other.valuation - v)) % modulus
        if total == 0:
            return PadicNumber.zero(self.p, absolute - v)
        return PadicNumber.make(self.p, v, total, absolute - v)

    __radd__ = __add__

    def __neg__(self) -> "PadicNumber":
        if self.is_zero:
            return self
        return PadicNumber(self.p, self.valuation, (-self.unit) % self.modulus, self.precision)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero or other.is_zero:
            return PadicNumber.zero(self.p, min(self.precision, other.precision))
        precision = min(self.precision, other.precision)
        modulus = self.p ** precision
        return PadicNumber(self.p, self.valuation + other.valuation, self.unit * other.unit % modulus, precision)

    __rmul__ = __mul__

    def inverse(self) -> "PadicNumber":
        if self.is_zero:
            raise DomainError("division by zero in Q_p")
        return PadicNumber(self.p, -self.valuation, pow(self.unit, -1, self.modulus), self.precision)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int) -> "PadicNumber":
        if n < 0:
            return self.inverse() ** (-n)
        if self.is_zero:
            return PadicNumber.from_int(1, self.p, self.precision) if n == 0 else self
        return PadicNumber(self.p, self.valuation * n, pow(self.unit, n, self.modulus), self.precision)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = PadicNumber.from_fraction(other, self.p, self.precision)
        if not isinstance(other, PadicNumber) or other.p != self.p:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        if self.valuation != other.valuation:
            return False
        modulus = self.p ** min(self.precision, other.precision)
        return (self.unit - other.unit) % modulus == 0

    def __hash__(self) -> int:
        if self.is_zero:
            return hash((self.p, "zero"))
        return hash((self.p, self.valuation, self.unit % self.p))

    def legendre(self) -> int:
        """Legendre symbol of the unit residue"""
        if self.is_zero:
            raise DomainError("Legendre symbol of zero")
        return int(legendre_symbol(self.residue(), self.p))

    def is_square(self) -> bool:
        if self.is_zero:
            raise DomainError("square class of zero")
        return self.valuation % 2 == 0 and self.legendre() == 1

    def sqrt(self) -> "PadicNumber":
        return sqrt_hensel(self)

    def __repr__(self) -> str:
        if self.is_zero:
            return f"Padic({self.p}: 0)"
        return f"Padic({self.p}: p^{self.valuation} * {self.unit} mod p^{self.precision})"


def sqrt_hensel(x: PadicNumber) -> PadicNumber:
    """Square root whose unit residue lies in {1, ..., (p-1)/2}, Newton-lifted"""
    if not x.is_square():
        raise DomainError(f"{x} is not a square")
    p, modulus = x.p, x.modulus
    roots = sqrt_mod(x.residue(), p, all_roots=True)
    y = min(int(r) for r in roots)
    for _ in range(x.precision.bit_length() + 1):
        y = (y - (y * y - x.unit) * pow(2 * y, -1, modulus)) % modulus
    if (y * y - x.unit) % modulus:
        raise PrecisionExhausted(f"Hensel lift of sqrt({x}) did not converge")
    return PadicNumber(p, x.valuation // 2, y, x.precision)


@lru_cache(maxsize=4096)
def teichmuller_int(r: int, p: int, precision: int) -> int:
    """The (p-1)-th root of unity congruent to r, as an integer mod p^precision"""
    if r % p == 0:
        raise DomainError("Teichmuller lift of zero")
    modulus = p ** precision
    x = r % p
    for _ in range(precision):
        nxt = pow(x, p, modulus)
        if nxt == x:
            break
        x = nxt
    return x


def teichmuller(r: int, p: int, precision: int) -> PadicNumber:
    """Teichmuller representative of the residue class r"""
    return PadicNumber(p, 0, teichmuller_int(r, p, precision), precision)
