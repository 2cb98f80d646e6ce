"""Arithmetic in GF(2^m), the quadratic tower GF(2^m) < GF(2^2m), and
roots-of-unity subgroups.

Elements are plain Python ints holding the coefficient bits of a polynomial
in the field generator (bit i <-> alpha^i).  Multiplication is a carry-less
product followed by reduction modulo the field's irreducible polynomial;
that is the reference arithmetic.  For fields up to ``TABLE_LIMIT`` elements
a log/antilog table is built lazily from it and used as an accelerator for
vectorised evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

MAX_DEGREE = 24
# log/exp tables are only built for fields of at most this many elements
TABLE_LIMIT = 1 << 20

# Smallest irreducible polynomial (as an integer bitmask) of each degree with
# a nonzero constant term.  x^m is bit m, 1 is bit 0.
MODULI = {
    1: 0x3,
    2: 0x7,
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x83,
    8: 0x11B,
    9: 0x203,
    10: 0x409,
    11: 0x805,
    12: 0x1009,
    13: 0x201B,
    14: 0x4021,
    15: 0x8003,
    16: 0x1002B,
    17: 0x20009,
    18: 0x40009,
    19: 0x80027,
    20: 0x100009,
    21: 0x200005,
    22: 0x400003,
    23: 0x800021,
    24: 0x100001B,
}


class GuardError(ValueError):
    """A request exceeds the desk-scale size limits."""


# -- GF(2)[x] helpers ---------------------------------------------------------


def clmul(a: int, b: int) -> int:
    """Carry-less product of two GF(2)[x] bitmasks."""
    if a < b:
        a, b = b, a
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def poly_mod(a: int, p: int) -> int:
    dp = p.bit_length()
    while a.bit_length() >= dp:
        a ^= p << (a.bit_length() - dp)
    return a


def poly_divmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("polynomial division by zero")
    q = 0
    db = b.bit_length()
    while a.bit_length() >= db:
        shift = a.bit_length() - db
        q ^= 1 << shift
        a ^= b << shift
    return q, a


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_mod(a, b)
    return a


def mulmod(a: int, b: int, p: int) -> int:
    return poly_mod(clmul(a, b), p)


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def is_irreducible(p: int) -> bool:
    """Rabin's test: p of degree m is irreducible over GF(2) iff
    x^(2^m) = x mod p and gcd(x^(2^(m/r)) - x, p) = 1 for each prime r | m."""
    m = p.bit_length() - 1
    if m < 1:
        return False
    x = poly_mod(0b10, p)

    def frob(i: int) -> int:
        y = x
        for _ in range(i):
            y = mulmod(y, y, p)
        return y

    if frob(m) != x:
        return False
    return all(poly_gcd(p, frob(m // r) ^ x) == 1 for r in prime_factors(m))


# -- fields -------------------------------------------------------------------


class LogTables:
    """Discrete log/antilog tables with respect to a fixed generator."""

    def __init__(self, generator: int, exp: np.ndarray, log: np.ndarray):
        self.generator = generator
        self.exp = exp  # exp[i] = g^i for 0 <= i < q-1
        self.log = log  # log[x] for x != 0; log[0] = -1
        self.n = len(exp)
        # python lists are much faster than numpy for scalar lookups
        self._exp = exp.tolist()
        self._log = log.tolist()

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % self.n]

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroDivisionError("division by 0")
        if a == 0:
            return 0
        return self._exp[(self._log[a] - self._log[b]) % self.n]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * (e % self.n)) % self.n]


@dataclass(frozen=True)
class FieldCtx:
    """GF(2^m) represented as GF(2)[x] / (modulus)."""

    m: int
    modulus: int

    def __post_init__(self):
        if self.modulus.bit_length() - 1 != self.m:
            raise ValueError(f"modulus {self.modulus:#x} does not have degree {self.m}")

    @property
    def q(self) -> int:
        return 1 << self.m

    def __call__(self, bits: int) -> "Fe":
        if not 0 <= bits < self.q:
            raise ValueError(f"{bits:#x} is not an element of GF(2^{self.m})")
        return Fe(self, bits)

    def __repr__(self):
        return f"FieldCtx(m={self.m}, modulus={self.modulus:#x})"

    def elements(self) -> range:
        return range(self.q)

    def units(self) -> range:
        return range(1, self.q)

    # arithmetic on raw ints

    @staticmethod
    def add(x: int, y: int) -> int:
        return x ^ y

    def mul(self, x: int, y: int) -> int:
        return poly_mod(clmul(x, y), self.modulus)

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("0 has no inverse")
        # extended Euclid in GF(2)[x]
        r0, r1 = self.modulus, x
        s0, s1 = 0, 1
        while r1 != 1:
            quo, rem = poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, s0 ^ clmul(quo, s1)
        return poly_mod(s1, self.modulus)

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def pow_sm(self, x: int, e: int) -> int:
        """Square-and-multiply reference power (0^0 = 1)."""
        if e < 0:
            raise ValueError("negative exponent")
        if x == 0:
            return 1 if e == 0 else 0
        e %= self.q - 1
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, x)
            x = self.mul(x, x)
            e >>= 1
        return r

    def pow(self, x: int, e: int) -> int:
        if e < 0:
            raise ValueError("negative exponent")
        if self.q <= 1 << 16:
            return self.tables.pow(x, e)
        return self.pow_sm(x, e)

    # structure

    @cached_property
    def unit_order_factors(self) -> list[int]:
        return prime_factors(self.q - 1)

    def order(self, x: int) -> int:
        """Multiplicative order of a nonzero element."""
        if x == 0:
            raise ValueError("0 has no multiplicative order")
        n = self.q - 1
        for p in self.unit_order_factors:
            while n % p == 0 and self.pow_sm(x, n // p) == 1:
                n //= p
        return n

    @cached_property
    def generator(self) -> int:
        """Smallest element (by bit value) generating the unit group."""
        n = self.q - 1
        for g in range(1, self.q):
            if all(self.pow_sm(g, n // p) != 1 for p in self.unit_order_factors):
                return g
        raise AssertionError("no generator found")  # pragma: no cover

    @cached_property
    def tables(self) -> LogTables:
        if self.q > TABLE_LIMIT:
            raise GuardError(f"log tables not built for fields above 2^20 (q = 2^{self.m})")
        n = self.q - 1
        g = self.generator
        exp = np.empty(n, dtype=np.int64)
        log = np.full(self.q, -1, dtype=np.int64)
        x = 1
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = self.mul(x, g)
        return LogTables(g, exp, log)


@dataclass(frozen=True, eq=False)
class Fe:
    """Convenience wrapper tying an element to its field; supports operators."""

    ctx: FieldCtx
    bits: int

    def _other(self, y) -> int:
        if isinstance(y, Fe):
            if y.ctx != self.ctx:
                raise ValueError("elements of different fields")
            return y.bits
        return self.ctx(y).bits

    def __eq__(self, y):
        if isinstance(y, Fe):
            return self.ctx == y.ctx and self.bits == y.bits
        if isinstance(y, int):
            return self.bits == y
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.m, self.ctx.modulus, self.bits))

    def __add__(self, y):
        return Fe(self.ctx, self.bits ^ self._other(y))

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, y):
        return Fe(self.ctx, self.ctx.mul(self.bits, self._other(y)))

    __rmul__ = __mul__

    def __truediv__(self, y):
        return Fe(self.ctx, self.ctx.div(self.bits, self._other(y)))

    def __pow__(self, e: int):
        if e < 0:
            return Fe(self.ctx, self.ctx.pow(self.ctx.inv(self.bits), -e))
        return Fe(self.ctx, self.ctx.pow(self.bits, e))

    def inverse(self):
        return Fe(self.ctx, self.ctx.inv(self.bits))

    def __int__(self):
        return self.bits

    def __repr__(self):
        return f"Fe({self.bits:#x} in GF(2^{self.ctx.m}))"


@lru_cache(maxsize=None)
def make_field(m: int, modulus: int | None = None) -> FieldCtx:
    """Return GF(2^m), using the tabulated modulus unless one is supplied."""
    if not 1 <= m <= MAX_DEGREE:
        raise GuardError(f"extension degree {m} outside supported range 1..{MAX_DEGREE}")
    if modulus is None:
        modulus = MODULI[m]
    if modulus.bit_length() - 1 != m:
        raise ValueError(f"modulus {modulus:#x} does not have degree {m}")
    if not is_irreducible(modulus):
        raise ValueError(f"modulus {modulus:#x} is reducible over GF(2)")
    return FieldCtx(m, modulus)


def primitive_root_of_unity(ctx: FieldCtx, n: int) -> int:
    """Smallest element (by bit value) of multiplicative order exactly n."""
    if n < 1 or (ctx.q - 1) % n:
        raise ValueError(f"{n} does not divide q - 1 = {ctx.q - 1}")
    g = ctx.generator
    step = (ctx.q - 1) // n
    return min(ctx.pow_sm(g, step * j) for j in range(1, n + 1) if math.gcd(j, n) == 1)


def roots_of_unity(ctx: FieldCtx, s: int) -> list[int]:
    """All s-th roots of unity in ctx, ordered by bit value."""
    if s < 1 or (ctx.q - 1) % s:
        raise ValueError(f"{s} does not divide q - 1 = {ctx.q - 1}")
    w = ctx.pow_sm(ctx.generator, (ctx.q - 1) // s)
    out, x = [], 1
    for _ in range(s):
        out.append(x)
        x = ctx.mul(x, w)
    return sorted(out)


# -- quadratic tower ----------------------------------------------------------


@dataclass(frozen=True)
class TowerCtx:
    """GF(q) embedded in GF(q^2), q = 2^m.

    ``basis_images[i]`` is the image of alpha^i, alpha the base generator; the
    embedding is GF(2)-linear so any element maps to the XOR of the images of
    its set bits.
    """

    base: FieldCtx
    ext: FieldCtx
    basis_images: tuple[int, ...]

    @property
    def m(self) -> int:
        return self.base.m

    @property
    def q(self) -> int:
        return self.base.q

    def embed(self, x: int) -> int:
        y, i = 0, 0
        while x:
            if x & 1:
                y ^= self.basis_images[i]
            x >>= 1
            i += 1
        return y

    @cached_property
    def _restrict_map(self) -> dict[int, int]:
        return {self.embed(x): x for x in range(self.q)}

    def restrict(self, y: int) -> int:
        """Inverse of embed; y must lie in the subfield."""
        try:
            return self._restrict_map[y]
        except KeyError:
            raise ValueError(f"{y:#x} is not in the embedded subfield") from None

    def conj(self, x: int) -> int:
        return self.ext.pow(x, self.q)

    def in_subfield(self, x: int) -> bool:
        return self.conj(x) == x

    def in_mu(self, x: int) -> bool:
        return x != 0 and self.ext.pow(x, self.q + 1) == 1

    @cached_property
    def mu(self) -> list[int]:
        return roots_of_unity(self.ext, self.q + 1)

    @cached_property
    def mu_set(self) -> frozenset[int]:
        return frozenset(self.mu)

    @cached_property
    def subfield(self) -> list[int]:
        return sorted(self._restrict_map)

    @cached_property
    def subfield_set(self) -> frozenset[int]:
        return frozenset(self._restrict_map)


def enumerate_mu(t: TowerCtx) -> list[int]:
    """The (q+1)-th roots of unity in GF(q^2), ordered by bit value."""
    return list(t.mu)


def conj(t: TowerCtx, x: int) -> int:
    return t.conj(x)


def _embedding_images(base: FieldCtx, ext: FieldCtx) -> tuple[int, ...]:
    q = base.q
    # subfield of ext = {0} u <g^(q+1)>; take the smallest root of base.modulus in it
    step = ext.pow_sm(ext.generator, q + 1)
    theta, y = None, 1
    for _ in range(q - 1):
        acc = 0
        for i in range(base.m, -1, -1):
            acc = ext.mul(acc, y) ^ ((base.modulus >> i) & 1)
        if acc == 0 and (theta is None or y < theta):
            theta = y
        y = ext.mul(y, step)
    if theta is None:  # pragma: no cover - impossible for irreducible moduli
        raise AssertionError("base modulus has no root in the extension")
    images = [1]
    for _ in range(base.m - 1):
        images.append(ext.mul(images[-1], theta))
    return tuple(images)


@lru_cache(maxsize=None)
def make_tower(m: int, base_modulus: int | None = None, ext_modulus: int | None = None) -> TowerCtx:
    base = make_field(m, base_modulus)
    ext = make_field(2 * m, ext_modulus)
    t = TowerCtx(base, ext, _embedding_images(base, ext))
    # homomorphism on the spanning set {alpha^i * alpha^j}
    for i in range(m):
        for j in range(m):
            lhs = t.embed(base.mul(1 << i, 1 << j))
            rhs = ext.mul(t.basis_images[i], t.basis_images[j])
            if lhs != rhs:  # pragma: no cover
                raise AssertionError("embedding is not multiplicative")
    return t
