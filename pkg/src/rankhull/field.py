"""Two-level finite field towers F_p < F_q < F_{q^m}.

Elements are plain integers. An element of a level of degree d over F_p is the
integer whose base-p digits (least significant first) are its coordinates in
the power basis; a top element is therefore ``sum(c_j * q**j)`` where ``c_j``
are its mid-level coordinates. Under this encoding the inclusion
F_q -> F_{q^m} is the identity on integers.

Multiplication is defined by polynomial arithmetic modulo the level's modulus
(see :meth:`FiniteField.mul_poly`). Exp/log tables are derived from that
reference path once per field and used for the vectorised operations.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

__all__ = [
    "FieldTower",
    "FiniteField",
    "PrimeField",
    "is_prime",
    "make_tower",
    "smallest_irreducible",
    "is_irreducible",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class PrimeField:
    """Scalar arithmetic in F_p; only used as the coefficient ring of the mid level."""

    def __init__(self, p: int):
        self.p = p
        self.order = p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p


# Polynomials are tuples of coefficients, lowest degree first.


def _poly_rem_monic(a: list[int], f: Sequence[int], ring) -> list[int]:
    """Remainder of ``a`` modulo the monic polynomial ``f``."""
    a = list(a)
    d = len(f) - 1
    for top in range(len(a) - 1, d - 1, -1):
        c = a[top]
        if c == 0:
            continue
        shift = top - d
        for i in range(d + 1):
            a[shift + i] = ring.sub(a[shift + i], ring.mul(c, f[i]))
    del a[d:]
    while len(a) < d:
        a.append(0)
    return a


def _poly_mul(a: Sequence[int], b: Sequence[int], ring) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = ring.add(out[i + j], ring.mul(x, y))
    return out


def is_irreducible(f: Sequence[int], ring) -> bool:
    """Trial division of the monic polynomial ``f`` by every monic polynomial of degree <= deg(f)/2."""
    d = len(f) - 1
    if d < 1 or f[-1] != 1:
        return False
    for deg in range(1, d // 2 + 1):
        for low in itertools.product(range(ring.order), repeat=deg):
            g = list(low) + [1]
            if not any(_poly_rem_monic(f, g, ring)):
                return False
    return True


def smallest_irreducible(degree: int, ring) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of the given degree.

    Coefficients are compared as integer tuples, constant term first. A zero
    constant term is never selected (this only matters in degree one, where it
    would make the adjoined element zero).
    """
    for low in itertools.product(range(ring.order), repeat=degree):
        if low[0] == 0:
            continue
        f = tuple(low) + (1,)
        if is_irreducible(f, ring):
            return f
    raise ValueError(f"no irreducible polynomial of degree {degree}")  # pragma: no cover


class FiniteField:
    """One level of a tower: F_{b^d} = base[x] / (modulus), with base of order b."""

    def __init__(self, p: int, base, modulus: Sequence[int], level: str):
        self.p = p
        self.base = base
        self.modulus = tuple(int(c) for c in modulus)
        self.level = level
        self.degree = len(self.modulus) - 1
        self.base_order = base.order
        self.order = self.base_order**self.degree
        ndigits = 0
        while p**ndigits < self.order:
            ndigits += 1
        self.ndigits = ndigits
        self._place = p ** np.arange(ndigits, dtype=np.int64)
        everything = np.arange(self.order, dtype=np.int64)
        self._digits = (everything[:, None] // self._place[None, :]) % p
        self._build_tables()

    def __repr__(self) -> str:
        return f"FiniteField(order={self.order}, level={self.level!r})"

    # reference arithmetic on coefficient vectors

    def coeffs(self, x: int) -> list[int]:
        """Coordinates of ``x`` over the base ring in the power basis."""
        b = self.base_order
        return [(int(x) // b**j) % b for j in range(self.degree)]

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) != self.degree:
            raise ValueError(f"expected {self.degree} coefficients, got {len(coeffs)}")
        b = self.base_order
        for c in coeffs:
            if not 0 <= int(c) < b:
                raise ValueError(f"coefficient {c} out of range for base of order {b}")
        return sum(int(c) * b**j for j, c in enumerate(coeffs))

    def mul_poly(self, a: int, b: int) -> int:
        prod = _poly_mul(self.coeffs(a), self.coeffs(b), self.base)
        return self.from_coeffs(_poly_rem_monic(prod, self.modulus, self.base))

    def _pow_poly(self, a: int, k: int) -> int:
        result, base = 1, a
        while k:
            if k & 1:
                result = self.mul_poly(result, base)
            base = self.mul_poly(base, base)
            k >>= 1
        return result

    def _build_tables(self) -> None:
        n = self.order - 1
        factors = _prime_factors(n)
        gen = None
        for g in range(1, self.order):
            if all(self._pow_poly(g, n // r) != 1 for r in factors):
                gen = g
                break
        if gen is None:  # pragma: no cover - the modulus is irreducible by construction
            raise ArithmeticError("no primitive element; modulus is not irreducible")
        exp = np.empty(n, dtype=np.int64)
        log = np.full(self.order, -1, dtype=np.int64)
        x = 1
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = self.mul_poly(x, gen)
        if x != 1 or (log[1:] < 0).any():  # pragma: no cover
            raise ArithmeticError("exp table did not cycle through the multiplicative group")
        self.generator = gen
        self._exp = exp
        self._log = log

    # vectorised arithmetic

    @staticmethod
    def _out(x):
        x = np.asarray(x)
        return int(x) if x.ndim == 0 else x

    def _encode(self, digits: np.ndarray) -> np.ndarray:
        return digits @ self._place

    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    def add(self, a, b):
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return self._out(a ^ b)
        return self._out(self._encode((self._digits[a] + self._digits[b]) % self.p))

    def neg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return self._out(a)
        return self._out(self._encode((-self._digits[a]) % self.p))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        n = self.order - 1
        out = self._exp[(self._log[a] + self._log[b]) % n]
        return self._out(np.where((a == 0) | (b == 0), 0, out))

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if (a == 0).any():
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self._out(self._exp[(-self._log[a]) % (self.order - 1)])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, k: int):
        """``a**k`` for an integer ``k >= 0`` (``0**0 == 1``)."""
        if k < 0:
            return self.power(self.inv(a), -k)
        a = np.asarray(a, dtype=np.int64)
        if k == 0:
            return self._out(np.ones_like(a))
        e = k % (self.order - 1)
        out = self._exp[(self._log[a] * e) % (self.order - 1)]
        return self._out(np.where(a == 0, 0, out))

    def scale_int(self, a, c: int):
        """``c * a`` for an integer ``c`` acting through the prime field."""
        a = np.asarray(a, dtype=np.int64)
        return self._out(self._encode((self._digits[a] * (c % self.p)) % self.p))

    def sum(self, a, axis: int):
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return self._out(np.bitwise_xor.reduce(a, axis=axis))
        digits = self._digits[a].sum(axis=axis if axis >= 0 else axis - 1) % self.p
        return self._out(self._encode(digits))


@functools.lru_cache(maxsize=None)
def _mid_field(p: int, mid_modulus: tuple[int, ...]) -> FiniteField:
    return FiniteField(p, PrimeField(p), mid_modulus, "mid")


@functools.lru_cache(maxsize=None)
def _top_field(p: int, mid_modulus: tuple[int, ...], top_modulus: tuple[int, ...]) -> FiniteField:
    return FiniteField(p, _mid_field(p, mid_modulus), top_modulus, "top")


@dataclass(frozen=True)
class FieldTower:
    """F_p < F_q = F_p[y]/(mid_modulus) < F_{q^m} = F_q[x]/(top_modulus)."""

    p: int
    e: int
    m: int
    mid_modulus: tuple[int, ...]
    top_modulus: tuple[int, ...]

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"characteristic {self.p} is not prime")
        if self.e < 1 or self.m < 1:
            raise ValueError(f"degrees must be positive, got e={self.e}, m={self.m}")
        object.__setattr__(self, "mid_modulus", tuple(int(c) for c in self.mid_modulus))
        object.__setattr__(self, "top_modulus", tuple(int(c) for c in self.top_modulus))
        if len(self.mid_modulus) != self.e + 1:
            raise ValueError("mid_modulus must have degree e")
        if len(self.top_modulus) != self.m + 1:
            raise ValueError("top_modulus must have degree m")
        if any(not 0 <= c < self.p for c in self.mid_modulus):
            raise ValueError("mid_modulus coefficients must lie in [0, p)")
        if any(not 0 <= c < self.q for c in self.top_modulus):
            raise ValueError("top_modulus coefficients must lie in [0, q)")
        if not is_irreducible(self.mid_modulus, PrimeField(self.p)):
            raise ValueError(f"mid_modulus {self.mid_modulus} is not monic irreducible over F_{self.p}")
        if not is_irreducible(self.top_modulus, self.mid):
            raise ValueError(f"top_modulus {self.top_modulus} is not monic irreducible over F_{self.q}")

    def __repr__(self) -> str:
        return f"FieldTower(p={self.p}, e={self.e}, m={self.m})"

    @property
    def q(self) -> int:
        return self.p**self.e

    @cached_property
    def mid(self) -> FiniteField:
        return _mid_field(self.p, self.mid_modulus)

    @cached_property
    def top(self) -> FiniteField:
        return _top_field(self.p, self.mid_modulus, self.top_modulus)

    def field(self, level: str) -> FiniteField:
        if level == "mid":
            return self.mid
        if level == "top":
            return self.top
        raise ValueError(f"unknown level {level!r}")

    def coords(self, x):
        """Mid-level coordinates of top elements, shape ``x.shape + (m,)``."""
        x = np.asarray(x, dtype=np.int64)
        return (x[..., None] // self.q ** np.arange(self.m, dtype=np.int64)) % self.q

    def from_coords(self, c):
        c = np.asarray(c, dtype=np.int64)
        return FiniteField._out(c @ (self.q ** np.arange(self.m, dtype=np.int64)))

    def in_base(self, x) -> bool:
        return bool((np.asarray(x) < self.q).all())

    def frobenius(self, x, i: int = 1):
        """``x ** (q ** i)``."""
        if i < 0:
            raise ValueError("iteration count must be non-negative")
        x = np.asarray(x, dtype=np.int64)
        top = self.top
        e = pow(self.q, i, top.order - 1)
        out = top._exp[(top._log[x] * e) % (top.order - 1)]
        return FiniteField._out(np.where(x == 0, 0, out))

    def trace(self, x):
        """Relative trace F_{q^m} -> F_q."""
        x = np.asarray(x, dtype=np.int64)
        acc = np.zeros_like(x)
        for i in range(self.m):
            acc = np.asarray(self.top.add(acc, self.frobenius(x, i)))
        if not self.in_base(acc):
            raise ArithmeticError("trace left the base field; the top modulus is broken")
        return FiniteField._out(acc)


@functools.lru_cache(maxsize=None)
def make_tower(p: int, e: int, m: int) -> FieldTower:
    """Tower with the lexicographically smallest monic irreducible moduli."""
    if not is_prime(p):
        raise ValueError(f"characteristic {p} is not prime")
    if e < 1 or m < 1:
        raise ValueError(f"degrees must be positive, got e={e}, m={m}")
    mid_mod = smallest_irreducible(e, PrimeField(p))
    mid = _mid_field(p, mid_mod)
    top_mod = smallest_irreducible(m, mid)
    return FieldTower(p, e, m, mid_mod, top_mod)
