"""Binomial coefficients modulo a prime from base-p digits (Lucas), and the
digit count that forces trinomial shapes n = 2^s + 2^t."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

PRIME_CHECK_LIMIT = 10**6


@lru_cache(maxsize=256)
def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    return all(p % d for d in range(3, math.isqrt(p) + 1, 2))


def _check_prime(p: int) -> None:
    if p < 2 or (p <= PRIME_CHECK_LIMIT and not _is_prime(p)):
        raise ValueError(f"{p} is not prime")


@dataclass(frozen=True)
class DigitVector:
    """Base-p digits of a non-negative integer, least significant first."""

    p: int
    digits: tuple[int, ...]

    def __post_init__(self):
        if any(not 0 <= d < self.p for d in self.digits):
            raise ValueError("digit out of range")
        if self.digits and self.digits[-1] == 0:
            raise ValueError("non-canonical digit vector (trailing zero)")

    @property
    def value(self) -> int:
        v = 0
        for d in reversed(self.digits):
            v = v * self.p + d
        return v


def digits(n: int, p: int) -> DigitVector:
    if n < 0:
        raise ValueError("negative integer")
    _check_prime(p)
    out = []
    while n:
        n, r = divmod(n, p)
        out.append(r)
    return DigitVector(p, tuple(out))


def binom_mod_p(n: int, k: int, p: int) -> int:
    """C(n, k) mod p as the product of digitwise binomials."""
    if n < 0 or k < 0:
        raise ValueError("negative argument")
    _check_prime(p)
    if k > n:
        return 0
    r = 1
    while k:
        n, ni = divmod(n, p)
        k, ki = divmod(k, p)
        if ki > ni:
            return 0
        r = r * math.comb(ni, ki) % p
    return r % p


def nonzero_count(n: int, p: int) -> int:
    """Number of k in [0, n] with C(n, k) != 0 mod p, i.e. prod(n_i + 1)."""
    return math.prod(d + 1 for d in digits(n, p).digits)


def trinomial_admissible(n: int) -> tuple[int, int] | None:
    """(s, t) with s < t and n = 2^s + 2^t, if n has exactly two binary ones."""
    if n < 1 or n.bit_count() != 2:
        return None
    s = (n & -n).bit_length() - 1
    return s, n.bit_length() - 1
