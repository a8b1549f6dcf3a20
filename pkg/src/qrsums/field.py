"""Prime fields, Legendre symbols, and the quadratic residue set.

Conventions used throughout the toolkit:

- field elements are plain ints reduced to [0, p);
- the Legendre symbol chi(x) takes values in {-1, 0, 1} with chi(0) = 0;
- the residue set R_p = {x^2 : x in F_p, x != 0} excludes 0, so
  |R_p| = (p-1)/2 exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Iterable, Iterator

import numpy as np

from .errors import CompositeInputError, EvenModulusError


def is_prime(n: int) -> bool:
    """Deterministic primality test by trial division (desk scale)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d <= isqrt(n):
        if n % d == 0:
            return False
        d += 2
    return True


def primes_in_range(lo: int, hi: int) -> list[int]:
    """All primes in [lo, hi], by sieve of Eratosthenes."""
    if hi < 2 or hi < lo:
        return []
    sieve = bytearray([1]) * (hi + 1)
    sieve[0:2] = b"\x00\x00"
    for q in range(2, isqrt(hi) + 1):
        if sieve[q]:
            sieve[q * q :: q] = bytearray(len(sieve[q * q :: q]))
    return [n for n in range(max(lo, 2), hi + 1) if sieve[n]]


@dataclass(frozen=True)
class Prime:
    """An odd prime modulus, validated on construction."""

    value: int

    def __post_init__(self):
        if self.value == 2:
            raise EvenModulusError("modulus must be an odd prime, got 2")
        if not is_prime(self.value):
            raise CompositeInputError(f"modulus {self.value} is not prime")

    def __int__(self) -> int:
        return self.value


def as_prime(p: int | Prime) -> Prime:
    """Coerce an int to a validated Prime (no-op on Prime input)."""
    return p if isinstance(p, Prime) else Prime(p)


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a|p) in {-1, 0, 1} by Euler's criterion."""
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def legendre_table(p: int) -> np.ndarray:
    """chi(x) for x = 0..p-1 as an int8 array.

    Built by marking the squares directly, which is O(p) with no modular
    exponentiation.
    """
    table = np.full(p, -1, dtype=np.int8)
    table[0] = 0
    for x in range(1, p):
        table[x * x % p] = 1
    return table


class FpSet:
    """A subset of F_p with cached cardinality and bitmask.

    The bitmask (bit e set iff e is a member) is what the sumset and
    search code operates on; wordwise AND/OR of Python ints keeps those
    paths exact and fast.
    """

    __slots__ = ("p", "_elements", "_mask")

    def __init__(self, elements: Iterable[int], p: int | Prime):
        self.p = int(as_prime(p))
        elems = sorted({e % self.p for e in elements})
        self._elements = tuple(elems)
        mask = 0
        for e in elems:
            mask |= 1 << e
        self._mask = mask

    @classmethod
    def from_mask(cls, mask: int, p: int | Prime) -> "FpSet":
        obj = cls.__new__(cls)
        obj.p = int(as_prime(p))
        obj._mask = mask
        obj._elements = tuple(mask_to_elements(mask))
        return obj

    @property
    def elements(self) -> tuple[int, ...]:
        return self._elements

    @property
    def mask(self) -> int:
        return self._mask

    def __len__(self) -> int:
        return len(self._elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self._elements)

    def __contains__(self, e: int) -> bool:
        return (self._mask >> (e % self.p)) & 1 == 1

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FpSet)
            and self.p == other.p
            and self._mask == other._mask
        )

    def __hash__(self) -> int:
        return hash((self.p, self._mask))

    def __repr__(self) -> str:
        return f"FpSet({list(self._elements)}, p={self.p})"

    def translate(self, t: int) -> "FpSet":
        """The set {e + t mod p : e in self}."""
        return FpSet.from_mask(rotate_mask(self._mask, t % self.p, self.p), self.p)


def mask_to_elements(mask: int) -> list[int]:
    """Members of a bitmask set, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def rotate_mask(mask: int, s: int, p: int) -> int:
    """Bitmask of {e + s mod p} given the bitmask of {e}."""
    if s == 0:
        return mask
    full = (1 << p) - 1
    return ((mask << s) & full) | (mask >> (p - s))


def residue_set(p: int | Prime) -> FpSet:
    """The quadratic residues R_p = {x^2 : x != 0}, as an FpSet.

    0 is not a member, so the cardinality is exactly (p-1)/2.
    """
    pv = int(as_prime(p))
    return FpSet({x * x % pv for x in range(1, pv)}, pv)
