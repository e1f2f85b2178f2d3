"""
Tame Langlands Workbench - Finite Fields

F_q as F_p[x]/(g) with discrete-log tables, and GL(n, p) with the elliptic torus
F_{p^n}* embedded through the regular representation.
"""

import itertools
import logging
from functools import cached_property, lru_cache
from typing import List, Optional, Sequence, Tuple

import numpy as np
from sympy import factorint
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p, gf_mul, gf_rem, gf_strip

from ..config import DL_CONFIG
from ..exceptions import ConfigError, DomainError

logger = logging.getLogger(__name__)


def first_irreducible(p: int, degree: int, prefer_binomial: bool = False) -> Tuple[int, ...]:
    """Lexicographically first monic irreducible of the given degree over F_p (high-to-low)"""
    if degree == 1:
        return (1, 0)
    if prefer_binomial:
        for u in range(2, p):
            poly = [1] + [0] * (degree - 1) + [(-u) % p]
            if gf_irreducible_p(poly, p, ZZ):
                return tuple(poly)
    for tail in itertools.product(range(p), repeat=degree):
        poly = [1] + list(tail)
        if poly[-1] and gf_irreducible_p(poly, p, ZZ):
            return tuple(poly)
    raise DomainError(f"no irreducible polynomial of degree {degree} over F_{p}")


class FqField:
    """F_q with q = p^f; elements are integers sum c_i p^i encoding coefficient vectors"""

    def __init__(self, p: int, f: int = 1, modulus: Optional[Sequence[int]] = None):
        self.p = p
        self.f = f
        self.q = p ** f
        if self.q > DL_CONFIG["dlog_bound"]:
            raise ConfigError(f"F_{self.q} exceeds the discrete-log table bound {DL_CONFIG['dlog_bound']}")
        self.modulus = [int(c) % p for c in (modulus or first_irreducible(p, f))]
        if len(self.modulus) != f + 1 or not gf_irreducible_p(self.modulus, p, ZZ):
            raise DomainError(f"modulus {self.modulus} is not irreducible of degree {f} over F_{p}")
        self._build_tables()

    def _to_poly(self, a: int) -> List[int]:
        coeffs = []
        for _ in range(self.f):
            coeffs.append(a % self.p)
            a //= self.p
        return gf_strip(list(reversed(coeffs)))

    def _from_poly(self, poly: Sequence[int]) -> int:
        value = 0
        for c in poly:
            value = value * self.p + int(c) % self.p
        return value

    def encode(self, coeffs_low_to_high: Sequence[int]) -> int:
        """Element from a coefficient vector, reduced mod p and the modulus"""
        poly = gf_strip([int(c) % self.p for c in reversed(list(coeffs_low_to_high))])
        return self._from_poly(gf_rem(poly, self.modulus, self.p, ZZ))

    def decode(self, a: int) -> List[int]:
        out = []
        for _ in range(self.f):
            out.append(a % self.p)
            a //= self.p
        return out

    def add(self, a: int, b: int) -> int:
        return self.encode([x + y for x, y in zip(self.decode(a), self.decode(b))])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp_table[(self.log_table[a] + self.log_table[b]) % (self.q - 1)]

    def _slow_mul(self, a: int, b: int) -> int:
        prod_poly = gf_mul(self._to_poly(a), self._to_poly(b), self.p, ZZ)
        return self._from_poly(gf_rem(prod_poly, self.modulus, self.p, ZZ))

    def _build_tables(self) -> None:
        order = self.q - 1
        for g in range(1, self.q):
            powers = [1]
            for _ in range(order - 1):
                powers.append(self._slow_mul(powers[-1], g))
            if len(set(powers)) == order:
                self.generator = g
                self.exp_table = powers
                self.log_table = {x: k for k, x in enumerate(powers)}
                return
        raise DomainError(f"no generator found for F_{self.q}*")

    def dlog(self, a: int) -> int:
        if a == 0:
            raise DomainError("discrete log of zero")
        return self.log_table[a]

    def power(self, a: int, n: int) -> int:
        if a == 0:
            return 0
        return self.exp_table[(self.log_table[a] * n) % (self.q - 1)]

    def inverse(self, a: int) -> int:
        return self.power(a, -1)

    def frobenius(self, a: int, times: int = 1) -> int:
        return self.power(a, self.p ** times)

    def in_subfield(self, a: int, degree: int) -> bool:
        """a lies in F_{p^degree}"""
        return a == 0 or self.power(a, self.p ** degree) == a

    def elements(self) -> range:
        return range(self.q)

    def __repr__(self) -> str:
        return f"FqField(q={self.q}, modulus={self.modulus})"


@lru_cache(maxsize=None)
def residue_field(p: int, f: int, modulus: Optional[Tuple[int, ...]] = None) -> FqField:
    return FqField(p, f, modulus)


class GLnq:
    """GL(n, p) enumerated as a numpy stack, with T = F_{p^n}* in the regular representation"""

    def __init__(self, n: int, q: int):
        if (n, q) not in [tuple(pair) for pair in DL_CONFIG["allowed"]]:
            raise ConfigError(f"GL({n},{q}) is outside the configured desk-scale sizes {DL_CONFIG['allowed']}")
        if len(factorint(q)) != 1 or list(factorint(q).values())[0] != 1:
            raise ConfigError("GLnq is implemented over prime fields")
        self.n = n
        self.q = q
        self.base = residue_field(q, 1)
        self.ext = residue_field(q, n)

    @cached_property
    def elements(self) -> np.ndarray:
        """All invertible n x n matrices over F_q, shape (|G|, n, n)"""
        n, q = self.n, self.q
        entries = np.array(list(itertools.product(range(q), repeat=n * n)), dtype=np.int64).reshape(-1, n, n)
        dets = np.rint(np.linalg.det(entries)).astype(np.int64) % q
        return entries[dets != 0]

    @cached_property
    def _inverses(self) -> np.ndarray:
        mats = self.elements
        dets = np.rint(np.linalg.det(mats)).astype(np.int64)
        adj = np.rint(np.linalg.inv(mats) * dets[:, None, None]).astype(np.int64)
        det_inv = np.array([pow(int(d) % self.q, -1, self.q) for d in dets], dtype=np.int64)
        return (adj * det_inv[:, None, None]) % self.q

    def order(self) -> int:
        return len(self.elements)

    def expected_order(self) -> int:
        out = 1
        for i in range(self.n):
            out *= self.q ** self.n - self.q ** i
        return out

    def torus_matrix(self, y: int) -> np.ndarray:
        """Matrix of multiplication by y on the basis 1, x, ..., x^{n-1} of F_{q^n}"""
        cols = []
        for j in range(self.n):
            basis = self.ext.encode([0] * j + [1])
            cols.append(self.ext.decode(self.ext._slow_mul(y, basis)))
        return np.array(cols, dtype=np.int64).T

    @cached_property
    def _torus_table(self) -> np.ndarray:
        """Index = encoded first column; value = the torus matrix with that first column"""
        table = np.zeros((self.ext.q, self.n, self.n), dtype=np.int64)
        for y in range(1, self.ext.q):
            table[y] = self.torus_matrix(y)
        return table

    def _encode_columns(self, cols: np.ndarray) -> np.ndarray:
        weights = np.array([self.q ** i for i in range(self.n)], dtype=np.int64)
        return cols @ weights

    def conjugates_in_torus(self, s: int) -> Tuple[np.ndarray, np.ndarray]:
        """(mask over G of g with g^{-1} s g in T, encoded torus element for each g)"""
        s_mat = self.torus_matrix(s)
        conj = np.einsum("gij,jk,gkl->gil", self._inverses, s_mat, self.elements) % self.q
        index = self._encode_columns(conj[:, :, 0])
        mask = np.all(conj == self._torus_table[index], axis=(1, 2)) & (index != 0)
        return mask, index

    def is_regular_elliptic(self, s: int) -> bool:
        """s generates F_{q^n} over F_q, so its characteristic polynomial is irreducible and squarefree"""
        return s != 0 and all(not self.ext.in_subfield(s, d) for d in range(1, self.n) if self.n % d == 0)

    def frobenius_orbit(self, s: int) -> List[int]:
        return [self.ext.frobenius(s, i) for i in range(self.n)]
