"""Sparse polynomials over GF(2^m), used both as formal objects and as
functions on the field.

Exponents are arbitrary-precision ints; coefficients are field elements in
bit encoding.  Evaluation of a polynomial over every unit at once goes
through the field's log tables and numpy.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .gf2m import FieldCtx

# formal products/powers refuse to grow beyond this many terms
MAX_TERMS = 1 << 16


@dataclass(frozen=True)
class SparsePoly:
    ctx: FieldCtx
    terms: tuple[tuple[int, int], ...]

    @classmethod
    def from_terms(cls, ctx: FieldCtx, terms: Iterable[tuple[int, int]]) -> "SparsePoly":
        """Collect (exponent, coefficient) pairs: duplicates add, zeros drop."""
        acc: dict[int, int] = {}
        for e, c in terms:
            if e < 0:
                raise ValueError(f"negative exponent {e}")
            if not 0 <= c < ctx.q:
                raise ValueError(f"coefficient {c:#x} not in GF(2^{ctx.m})")
            acc[e] = acc.get(e, 0) ^ c
        return cls(ctx, tuple(sorted((e, c) for e, c in acc.items() if c)))

    @classmethod
    def monomial(cls, ctx: FieldCtx, e: int, c: int = 1) -> "SparsePoly":
        return cls.from_terms(ctx, [(e, c)])

    @classmethod
    def zero(cls, ctx: FieldCtx) -> "SparsePoly":
        return cls(ctx, ())

    @classmethod
    def parse(cls, text: str, ctx: FieldCtx, q: int | None = None) -> "SparsePoly":
        return parse_poly(text, ctx, q)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    @property
    def exponents(self) -> list[int]:
        return [e for e, _ in self.terms]

    @property
    def degree(self) -> int:
        return self.terms[-1][0] if self.terms else -1

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, e: int) -> int:
        for e2, c in self.terms:
            if e2 == e:
                return c
        return 0

    def _check(self, other: "SparsePoly"):
        if other.ctx != self.ctx:
            raise ValueError("polynomials over different fields")

    def __add__(self, other: "SparsePoly") -> "SparsePoly":
        self._check(other)
        return SparsePoly.from_terms(self.ctx, self.terms + other.terms)

    __sub__ = __add__

    def scale(self, a: int) -> "SparsePoly":
        mul = self.ctx.mul
        return SparsePoly.from_terms(self.ctx, [(e, mul(a, c)) for e, c in self.terms])

    def shift(self, k: int) -> "SparsePoly":
        """Multiply by x^k."""
        return SparsePoly(self.ctx, tuple((e + k, c) for e, c in self.terms))

    def __mul__(self, other: "SparsePoly") -> "SparsePoly":
        self._check(other)
        if len(self) * len(other) > MAX_TERMS:
            raise ValueError("product too large")
        mul = self.ctx.mul
        return SparsePoly.from_terms(
            self.ctx, [(e1 + e2, mul(c1, c2)) for e1, c1 in self.terms for e2, c2 in other.terms]
        )

    def square(self) -> "SparsePoly":
        # characteristic 2: cross terms cancel
        mul = self.ctx.mul
        return SparsePoly(self.ctx, tuple((2 * e, mul(c, c)) for e, c in self.terms))

    def __pow__(self, n: int) -> "SparsePoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = SparsePoly.monomial(self.ctx, 0)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base.square()
        return result

    def compose_monomial(self, c: int, d: int) -> "SparsePoly":
        """Formal f(c * x^d)."""
        ctx = self.ctx
        return SparsePoly.from_terms(ctx, [(e * d, ctx.mul(co, ctx.pow(c, e))) for e, co in self.terms])

    def __call__(self, x: int) -> int:
        return eval_poly(self, x)

    def values_on_units(self, logs: np.ndarray | None = None) -> np.ndarray:
        """f(g^i) for every i in ``logs`` (default all of 0..q-2), g the
        generator of the field's log tables."""
        tab = self.ctx.tables
        n = tab.n
        idx = np.arange(n, dtype=np.int64) if logs is None else np.asarray(logs, dtype=np.int64)
        acc = np.zeros(idx.shape, dtype=np.int64)
        for e, c in self.terms:
            lc = int(tab.log[c])
            acc ^= tab.exp[(lc + (e % n) * idx) % n]
        return acc

    def __str__(self):
        return format_poly(self)


def eval_poly(f: SparsePoly, x: int) -> int:
    """Evaluate f at x using the reference field arithmetic."""
    ctx = f.ctx
    if x == 0:
        return f.coeff(0)
    acc = 0
    for e, c in f.terms:
        acc ^= ctx.mul(c, ctx.pow_sm(x, e))
    return acc


def normalize_exponents(f: SparsePoly) -> SparsePoly:
    """Reduce every exponent e >= 1 into [1, q-1]; x^0 is left alone.

    The result is the same function on the whole field (x^e and x^e' agree on
    units when e = e' mod q-1, and both vanish at 0 for e, e' >= 1)."""
    n = f.ctx.q - 1
    return SparsePoly.from_terms(f.ctx, [(e if e == 0 else (e - 1) % n + 1, c) for e, c in f.terms])


def qm_transform(f: SparsePoly, a: int, c: int, d: int) -> SparsePoly:
    """normalize(a * f(c * x^d))."""
    ctx = f.ctx
    if a == 0 or c == 0:
        raise ValueError("a and c must be nonzero")
    if d < 1 or math.gcd(d, ctx.q - 1) != 1:
        raise ValueError(f"gcd({d}, q-1) != 1")
    return normalize_exponents(f.compose_monomial(c, d).scale(a))


@dataclass(frozen=True)
class ZieveForm:
    """f(x) = x^r * h(x^((q-1)/s))."""

    r: int
    s: int
    h: SparsePoly

    @property
    def ctx(self) -> FieldCtx:
        return self.h.ctx

    @property
    def step(self) -> int:
        return (self.ctx.q - 1) // self.s

    def expand(self) -> SparsePoly:
        return SparsePoly.from_terms(self.ctx, [(self.r + self.step * e, c) for e, c in self.h.terms])


def to_zieve_form(f: SparsePoly, s: int) -> ZieveForm:
    """Write f (as a function on the units) as x^r h(x^((q-1)/s)), r the least
    positive common residue of the exponents modulo (q-1)/s."""
    ctx = f.ctx
    if s < 1 or (ctx.q - 1) % s:
        raise ValueError(f"{s} does not divide q - 1 = {ctx.q - 1}")
    if f.is_zero():
        raise ValueError("zero polynomial has no Zieve form")
    step = (ctx.q - 1) // s
    # on the units x^0 = x^(q-1)
    exps = [(e if e else ctx.q - 1, c) for e, c in f.terms]
    residues = {e % step for e, _ in exps}
    if len(residues) != 1:
        raise ValueError(f"exponents are not congruent modulo {step}")
    r = residues.pop() or step
    h = SparsePoly.from_terms(ctx, [((e - r) // step, c) for e, c in exps])
    return ZieveForm(r, s, h)


# -- text format ---------------------------------------------------------------


def format_poly(f: SparsePoly) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for e, c in f.terms:
        if e == 0:
            parts.append(f"{c:#x}" if c != 1 else "1")
            continue
        mono = "x" if e == 1 else f"x^{e}"
        parts.append(mono if c == 1 else f"{c:#x}*{mono}")
    return " + ".join(parts)


class _Parser:
    """Recursive descent over ``+ * ^ ( )``.

    Polynomial context: ``x``, hex coefficients (``0x1f`` or bare ``1f``).
    After ``^`` an integer expression follows: decimal literals, ``q``, ``m``,
    ``+ - * ^`` and parentheses.
    """

    def __init__(self, text: str, ctx: FieldCtx, q: int):
        self.s = text
        self.i = 0
        self.ctx = ctx
        self.q = q
        self.m = q.bit_length() - 1

    def error(self, msg: str):
        raise ValueError(f"{msg} at position {self.i} in {self.s!r}")

    def peek(self) -> str:
        while self.i < len(self.s) and self.s[self.i].isspace():
            self.i += 1
        return self.s[self.i] if self.i < len(self.s) else ""

    def eat(self, ch: str) -> bool:
        if self.peek() == ch:
            self.i += 1
            return True
        return False

    # polynomial grammar

    def poly(self) -> SparsePoly:
        acc = self.pterm()
        while self.peek() in ("+", "-"):
            self.i += 1
            acc = acc + self.pterm()
        return acc

    def pterm(self) -> SparsePoly:
        acc = self.pfactor()
        while self.eat("*"):
            acc = acc * self.pfactor()
        return acc

    def pfactor(self) -> SparsePoly:
        base = self.patom()
        if self.eat("^"):
            e = self.iatom()
            if e < 0:
                self.error("negative exponent")
            if len(base) == 1:
                (be, bc), = base.terms
                return SparsePoly.from_terms(self.ctx, [(be * e, self.ctx.pow(bc, e))])
            base = base**e
        return base

    def patom(self) -> SparsePoly:
        ch = self.peek()
        if ch == "(":
            self.i += 1
            p = self.poly()
            if not self.eat(")"):
                self.error("expected ')'")
            return p
        if self.s.startswith(("0x", "0X"), self.i):
            mt = re.compile(r"0[xX]([0-9a-fA-F]+)").match(self.s, self.i)
            if not mt:
                self.error("bad hex literal")
            self.i = mt.end()
            return self._const(int(mt.group(1), 16))
        if ch == "x":
            self.i += 1
            return SparsePoly.monomial(self.ctx, 1)
        mt = re.compile(r"[0-9a-fA-F]+").match(self.s, self.i)
        if mt:
            self.i = mt.end()
            return self._const(int(mt.group(0), 16))
        self.error("expected x, a coefficient or '('")

    def _const(self, c: int) -> SparsePoly:
        if c >= self.ctx.q:
            self.error(f"coefficient {c:#x} not in GF(2^{self.ctx.m})")
        return SparsePoly.from_terms(self.ctx, [(0, c)])

    # integer grammar (exponents)

    def iexpr(self) -> int:
        acc = self.iterm()
        while self.peek() in ("+", "-"):
            op = self.s[self.i]
            self.i += 1
            rhs = self.iterm()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def iterm(self) -> int:
        acc = self.ifactor()
        while self.eat("*"):
            acc *= self.ifactor()
        return acc

    def ifactor(self) -> int:
        if self.eat("-"):
            return -self.ifactor()
        base = self.iatom()
        if self.eat("^"):
            e = self.ifactor()
            if e < 0:
                self.error("negative power in exponent")
            return base**e
        return base

    def iatom(self) -> int:
        ch = self.peek()
        if ch == "(":
            self.i += 1
            v = self.iexpr()
            if not self.eat(")"):
                self.error("expected ')'")
            return v
        if ch == "q":
            self.i += 1
            return self.q
        if ch == "m":
            self.i += 1
            return self.m
        if ch == "-":
            self.i += 1
            return -self.iatom()
        mt = re.compile(r"\d+").match(self.s, self.i)
        if not mt:
            self.error("expected an integer exponent")
        self.i = mt.end()
        return int(mt.group(0))


def parse_poly(text: str, ctx: FieldCtx, q: int | None = None) -> SparsePoly:
    """Parse ``c_hex*x^e + ...``; ``q`` (and ``m = log2 q``) may appear in
    exponents and defaults to the size of ``ctx``."""
    p = _Parser(text, ctx, ctx.q if q is None else q)
    out = p.poly()
    if p.peek():
        p.error("unexpected trailing input")
    return out
