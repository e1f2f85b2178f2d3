"""
Tame Langlands Workbench - Exact Values

Cyclotomic integers in a canonical power basis and values q^{r/2}*z built on them.
Every character value, symbol and formula value in the package lives here.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, prod
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

import numpy as np
from sympy import Poly, cyclotomic_poly, factorint, symbols, totient

from ..config import EXACT_CONFIG
from ..exceptions import ConductorOverflow, DomainError

logger = logging.getLogger(__name__)

_X = symbols("x")


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@lru_cache(maxsize=None)
def _primes_of(m: int) -> Tuple[int, ...]:
    return tuple(sorted(factorint(m)))


@lru_cache(maxsize=None)
def _phi(m: int) -> int:
    return int(totient(m))


@lru_cache(maxsize=None)
def _radical_data(m: int) -> Tuple[int, int, Tuple[int, ...]]:
    """(phi(rad m), m / rad m, low-to-high coefficients of Phi_{rad m})"""
    r = prod(_primes_of(m)) if m > 1 else 1
    coeffs = tuple(int(c) for c in reversed(Poly(cyclotomic_poly(r, _X), _X).all_coeffs()))
    return len(coeffs) - 1, m // r, coeffs


def _reduce(m: int, terms: Mapping[int, int]) -> List[int]:
    """Reduce sum c_e zeta_m^e to the power basis mod Phi_m (Phi_m(x) = Phi_r(x^{m/r}))"""
    vec = [0] * m
    for e, c in terms.items():
        vec[e % m] += c
    phi_r, step, coeffs = _radical_data(m)
    top = phi_r * step
    for i in range(m - 1, top - 1, -1):
        c = vec[i]
        if not c:
            continue
        vec[i] = 0
        base = i - top
        for k in range(phi_r):
            if coeffs[k]:
                vec[base + k * step] -= c * coeffs[k]
    return vec[:_phi(m)]


def _halve(m: int, vec: Iterable[int]) -> Tuple[int, List[int]]:
    """Rewrite an element of conductor m = 2k (k odd) over zeta_k"""
    k = m // 2
    terms: Dict[int, int] = {}
    for i, c in enumerate(vec):
        if c:
            e = (i * (k + 1) // 2) % k if k > 1 else 0
            terms[e] = terms.get(e, 0) + (-c if i % 2 else c)
    return k, _reduce(k, terms)


def _split_prime(m: int, q: int, vec: List[int]) -> Optional[List[int]]:
    """Coordinates over zeta_{m/q} when q exactly divides m and the element lies there"""
    rest = m // q
    s = pow(q, -1, rest) if rest > 1 else 0
    t = pow(rest, -1, q)
    comps: List[Dict[int, int]] = [dict() for _ in range(q)]
    for i, c in enumerate(vec):
        if c:
            a, b = (i * s) % rest if rest > 1 else 0, (i * t) % q
            comps[b][a] = comps[b].get(a, 0) + c
    # zeta_q^{q-1} = -(1 + zeta_q + ... + zeta_q^{q-2})
    for a, c in comps[q - 1].items():
        for b in range(q - 1):
            comps[b][a] = comps[b].get(a, 0) - c
    for b in range(1, q - 1):
        if any(_reduce(rest, comps[b])):
            return None
    return _reduce(rest, comps[0])


def _minimize(m: int, vec: List[int]) -> Tuple[int, Tuple[int, ...]]:
    """Descend to the smallest conductor whose field contains the element"""
    changed = True
    while changed and m > 1:
        changed = False
        for q in _primes_of(m):
            if m % (q * q) == 0:
                if all(c == 0 for i, c in enumerate(vec) if i % q):
                    m, vec = m // q, vec[::q]
                    if m % 4 == 2:
                        m, vec = _halve(m, vec)
                    changed = True
                    break
            else:
                split = _split_prime(m, q, vec)
                if split is not None:
                    m, vec = m // q, split
                    changed = True
                    break
    if not any(vec):
        return 1, (0,)
    return m, tuple(vec)


@dataclass(frozen=True)
class CycInt:
    """Element of Z[zeta_m] stored at its minimal conductor in the reduced power basis"""

    conductor: int = 1
    coeffs: Tuple[int, ...] = (0,)

    @classmethod
    def from_terms(cls, m: int, terms: Mapping[int, int]) -> "CycInt":
        """Canonical form of sum_e c_e zeta_m^e"""
        if m < 1:
            raise DomainError(f"conductor must be positive, got {m}")
        if m > EXACT_CONFIG["max_conductor"]:
            raise ConductorOverflow(f"conductor {m} exceeds {EXACT_CONFIG['max_conductor']}")
        if m % 4 == 2:
            half = m // 2
            flipped: Dict[int, int] = {}
            for e, c in terms.items():
                e %= m
                target = (e * (half + 1) // 2) % half if half > 1 else 0
                flipped[target] = flipped.get(target, 0) + (-c if e % 2 else c)
            m, terms = half, flipped
        conductor, coeffs = _minimize(m, _reduce(m, terms))
        return cls(conductor, coeffs)

    @classmethod
    def zero(cls) -> "CycInt":
        return cls(1, (0,))

    @classmethod
    def one(cls) -> "CycInt":
        return cls(1, (1,))

    @classmethod
    def from_int(cls, n: int) -> "CycInt":
        return cls(1, (int(n),))

    @classmethod
    def root_of_unity(cls, m: int, k: int = 1) -> "CycInt":
        """zeta_m^k in canonical form"""
        return _root(m, k % m)

    @classmethod
    def from_phase(cls, phase: Fraction) -> "CycInt":
        """exp(2 pi i * phase) for a rational phase"""
        phase = Fraction(phase) % 1
        return _root(phase.denominator, phase.numerator)

    @classmethod
    def from_exponent_counts(cls, m: int, counts: Mapping[int, int]) -> "CycInt":
        """sum over e of counts[e] * zeta_m^e (Gauss sums, character sums)"""
        return cls.from_terms(m, counts)

    def _terms_at(self, m: int) -> Dict[int, int]:
        step = m // self.conductor
        return {i * step: c for i, c in enumerate(self.coeffs) if c}

    def _coerce(self, other: Union["CycInt", int]) -> "CycInt":
        if isinstance(other, CycInt):
            return other
        if isinstance(other, int):
            return CycInt.from_int(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.conductor == other.conductor == 1:
            return CycInt(1, (self.coeffs[0] + other.coeffs[0],))
        m = _lcm(self.conductor, other.conductor)
        terms = self._terms_at(m)
        for e, c in other._terms_at(m).items():
            terms[e] = terms.get(e, 0) + c
        return CycInt.from_terms(m, terms)

    __radd__ = __add__

    def __neg__(self) -> "CycInt":
        return CycInt(self.conductor, tuple(-c for c in self.coeffs))

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
        if other.conductor == 1:
            return CycInt(self.conductor, tuple(c * other.coeffs[0] for c in self.coeffs)) if other.coeffs[0] else CycInt.zero()
        if self.conductor == 1:
            return other * self
        m = _lcm(self.conductor, other.conductor)
        a, b = self._terms_at(m), other._terms_at(m)
        terms: Dict[int, int] = {}
        for i, c in a.items():
            for j, d in b.items():
                e = (i + j) % m
                terms[e] = terms.get(e, 0) + c * d
        return CycInt.from_terms(m, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "CycInt":
        if n < 0:
            return self.inverse() ** (-n)
        result, base = CycInt.one(), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self) -> "CycInt":
        """Complex conjugation zeta -> zeta^{-1}"""
        if self.conductor == 1:
            return self
        m = self.conductor
        return CycInt.from_terms(m, {(-e) % m: c for e, c in self._terms_at(m).items()})

    def is_zero(self) -> bool:
        return self.conductor == 1 and self.coeffs[0] == 0

    def is_one(self) -> bool:
        return self.conductor == 1 and self.coeffs[0] == 1

    def as_integer(self) -> Optional[int]:
        return self.coeffs[0] if self.conductor == 1 else None

    def to_complex(self) -> complex:
        """Floating embedding, used only to pick candidates that are then checked exactly"""
        angles = 2j * np.pi * np.arange(len(self.coeffs)) / self.conductor
        return complex(np.sum(np.array(self.coeffs, dtype=float) * np.exp(angles)))

    def root_phase(self) -> Optional[Fraction]:
        """Phase k/M in [0, 1) if the value is a root of unity, else None"""
        if self.conductor == 1:
            return {1: Fraction(0), -1: Fraction(1, 2)}.get(self.coeffs[0])
        z = self.to_complex()
        if abs(abs(z) - 1.0) > EXACT_CONFIG["root_tolerance"]:
            return None
        order = self.conductor if self.conductor % 2 == 0 else 2 * self.conductor
        k = int(round(np.angle(z) / (2 * np.pi) * order)) % order
        phase = Fraction(k, order)
        return phase if CycInt.from_phase(phase) == self else None

    def is_root_of_unity(self) -> bool:
        return self.root_phase() is not None

    def order(self) -> int:
        phase = self.root_phase()
        if phase is None:
            raise DomainError(f"{self} is not a root of unity")
        return phase.denominator

    def inverse(self) -> "CycInt":
        """Inverse of a unit of the form +-zeta"""
        phase = self.root_phase()
        if phase is None:
            raise DomainError(f"only roots of unity are invertible here, got {self}")
        return CycInt.from_phase(-phase)

    def sign(self) -> int:
        """The value as +1/-1, for symbols known to be real units"""
        if self.conductor != 1 or self.coeffs[0] not in (1, -1):
            raise DomainError(f"{self} is not a sign")
        return self.coeffs[0]

    def __repr__(self) -> str:
        if self.conductor == 1:
            return f"CycInt({self.coeffs[0]})"
        return f"CycInt(m={self.conductor}, {list(self.coeffs)})"


@lru_cache(maxsize=65536)
def _root(m: int, k: int) -> CycInt:
    g = gcd(m, k) if k else m
    m, k = m // g, k // g
    return CycInt.from_terms(m, {k: 1})


@dataclass(frozen=True)
class ExactValue:
    """q^{half_exp/2} * cyc with q^{1/2} kept as a formal symbol"""

    q: int
    half_exp: int = 0
    cyc: CycInt = CycInt(1, (1,))

    @classmethod
    def make(cls, q: int, half_exp: int, cyc: Union[CycInt, int]) -> "ExactValue":
        """Canonical form: integer factors of q moved into the exponent"""
        if isinstance(cyc, int):
            cyc = CycInt.from_int(cyc)
        if cyc.is_zero():
            return cls(q, 0, CycInt.zero())
        coeffs = cyc.coeffs
        while all(c % q == 0 for c in coeffs):
            coeffs = tuple(c // q for c in coeffs)
            half_exp += 2
        return cls(q, half_exp, CycInt(cyc.conductor, coeffs))

    @classmethod
    def zero(cls, q: int) -> "ExactValue":
        return cls(q, 0, CycInt.zero())

    @classmethod
    def one(cls, q: int) -> "ExactValue":
        return cls(q, 0, CycInt.one())

    @classmethod
    def q_power(cls, q: int, half_exp: int) -> "ExactValue":
        return cls(q, half_exp, CycInt.one())

    @property
    def is_zero(self) -> bool:
        return self.cyc.is_zero()

    def _check_q(self, other: "ExactValue") -> None:
        if self.q != other.q:
            raise DomainError(f"cannot combine values over q={self.q} and q={other.q}")

    def _lift(self, other):
        if isinstance(other, ExactValue):
            self._check_q(other)
            return other
        if isinstance(other, (CycInt, int)):
            return ExactValue.make(self.q, 0, other)
        return NotImplemented

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if self.is_zero or other.is_zero:
            return ExactValue.zero(self.q)
        return ExactValue.make(self.q, self.half_exp + other.half_exp, self.cyc * other.cyc)

    __rmul__ = __mul__

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if other.is_zero:
            return self
        if self.is_zero:
            return other
        diff = self.half_exp - other.half_exp
        if diff % 2:
            raise DomainError("sum of values whose q-exponents differ by a half-integer")
        low, high = (self, other) if diff < 0 else (other, self)
        scaled = high.cyc * (self.q ** (abs(diff) // 2))
        return ExactValue.make(self.q, low.half_exp, low.cyc + scaled)

    __radd__ = __add__

    def __neg__(self) -> "ExactValue":
        return ExactValue(self.q, self.half_exp, -self.cyc)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def inverse(self) -> "ExactValue":
        if self.is_zero:
            raise DomainError("division by the zero value")
        return ExactValue(self.q, -self.half_exp, self.cyc.inverse())

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __pow__(self, n: int) -> "ExactValue":
        if n < 0:
            return self.inverse() ** (-n)
        if self.is_zero:
            return ExactValue.one(self.q) if n == 0 else self
        return ExactValue.make(self.q, self.half_exp * n, self.cyc ** n)

    def conj(self) -> "ExactValue":
        return ExactValue(self.q, self.half_exp, self.cyc.conj())

    def unimodular_part(self) -> CycInt:
        return self.cyc

    def __repr__(self) -> str:
        return f"ExactValue(q^({self.half_exp}/2) * {self.cyc!r})"
