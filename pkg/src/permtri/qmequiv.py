"""Quasi-multiplicative (QM) equivalence: f(x) = a*g(c*x^d) as functions on
the whole field, with a, c nonzero and gcd(d, q-1) = 1.

Polynomials with all exponents in {0} u [1, q-1] represent functions on F_q
uniquely, so after ``normalize_exponents`` equality of functions is equality
of term lists.  That makes an exponent-set prefilter exact: a candidate d
survives only if it maps the exponent set of g onto that of f.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gf2m import FieldCtx, GuardError
from .polyfun import SparsePoly, normalize_exponents, qm_transform

QM_LIMIT = 1 << 12


class ChainError(ValueError):
    """A link of a claimed QM-equivalence chain has no witness."""


@dataclass(frozen=True)
class QmWitness:
    a: int
    c: int
    d: int

    def to_json(self) -> dict:
        return {"a": f"{self.a:#x}", "c": f"{self.c:#x}", "d": self.d}


def _guard(ctx: FieldCtx) -> None:
    if ctx.q > QM_LIMIT:
        raise GuardError(f"QM search limited to q <= 2^12 (got 2^{ctx.m})")


def _ctx(f: SparsePoly, g: SparsePoly, ctx: FieldCtx | None) -> FieldCtx:
    if f.ctx != g.ctx or (ctx is not None and ctx != f.ctx):
        raise ValueError("polynomials over different fields")
    _guard(f.ctx)
    return f.ctx


def _units_exps(ctx: FieldCtx) -> list[int]:
    n = ctx.q - 1
    return [d for d in range(1, n + 1) if math.gcd(d, n) == 1]


def _map_exp(e: int, d: int, n: int) -> int:
    return 0 if e == 0 else (e * d - 1) % n + 1


def same_function(f: SparsePoly, g: SparsePoly) -> bool:
    """Pointwise equality on all of F_q (0 included)."""
    if f.coeff(0) != g.coeff(0):
        return False
    return bool(np.array_equal(f.values_on_units(), g.values_on_units()))


def apply_witness(g: SparsePoly, w: QmWitness) -> SparsePoly:
    return qm_transform(g, w.a, w.c, w.d)


def find_witness(f: SparsePoly, g: SparsePoly, ctx: FieldCtx | None = None) -> QmWitness | None:
    """Smallest (d, then c) witness with f = a*g(c*x^d), or None."""
    ctx = _ctx(f, g, ctx)
    n = ctx.q - 1
    F = normalize_exponents(f)
    G = normalize_exponents(g)
    if len(F) != len(G):
        return None
    if F.is_zero():
        return QmWitness(1, 1, 1)
    target = dict(F.terms)
    want = sorted(target)
    mul, div, pw = ctx.mul, ctx.div, ctx.pow
    for d in _units_exps(ctx):
        mapped = [(_map_exp(e, d, n), e, co) for e, co in G.terms]
        if sorted(m for m, _, _ in mapped) != want:
            continue
        m0, e0, co0 = mapped[0]
        for c in range(1, ctx.q):
            # a fixed by the first term, the rest must follow
            a = div(target[m0], mul(co0, pw(c, e0)))
            if all(mul(a, mul(co, pw(c, e))) == target[me] for me, e, co in mapped[1:]):
                w = QmWitness(a, c, d)
                if same_function(f, apply_witness(g, w)):
                    return w
    return None


def compose_witness(w1: QmWitness, w2: QmWitness, ctx: FieldCtx) -> QmWitness:
    """If f = a1*g(c1 x^d1) and g = a2*h(c2 x^d2), the witness for f from h."""
    n = ctx.q - 1
    return QmWitness(ctx.mul(w1.a, w2.a), ctx.mul(w2.c, ctx.pow(w1.c, w2.d)), (w1.d * w2.d - 1) % n + 1)


def invert_witness(w: QmWitness, ctx: FieldCtx) -> QmWitness:
    """If f = a*g(c x^d), the witness for g from f."""
    n = ctx.q - 1
    dinv = pow(w.d, -1, n) if n > 1 else 1
    dinv = (dinv - 1) % n + 1
    return QmWitness(ctx.inv(w.a), ctx.inv(ctx.pow(w.c, dinv)), dinv)


def _key(p: SparsePoly) -> tuple:
    return tuple(p.terms)


def canonical_form(f: SparsePoly, ctx: FieldCtx | None = None) -> SparsePoly:
    """Least element of the QM orbit of f under the order on sorted
    (exponent, coefficient) sequences.  Any total order would do; this one
    lets the leading coefficient be normalised to 1 and the d-candidates be
    cut down by their two smallest exponents first."""
    ctx = _ctx(f, f, ctx)
    n = ctx.q - 1
    F = normalize_exponents(f)
    if F.is_zero():
        return F
    cands = []
    for d in _units_exps(ctx):
        exps = sorted(_map_exp(e, d, n) for e, _ in F.terms)
        cands.append((tuple(exps[:2]), d))
    best_head = min(h for h, _ in cands)
    best = None
    for head, d in cands:
        if head != best_head:
            continue
        for c in range(1, ctx.q):
            p = normalize_exponents(F.compose_monomial(c, d))
            p = p.scale(ctx.inv(p.terms[0][1]))
            if best is None or _key(p) < _key(best):
                best = p
    return best


def verify_chain(polys: list, ctx: FieldCtx | None = None) -> list[QmWitness]:
    """Witness w_i with polys[i+1] = a*polys[i](c x^d) for every consecutive
    pair; raises ChainError on the first broken link.  Accepts SparsePoly or
    anything with a ``poly`` attribute."""
    ps = [getattr(p, "poly", p) for p in polys]
    out = []
    for i in range(len(ps) - 1):
        w = find_witness(ps[i + 1], ps[i], ctx)
        if w is None:
            raise ChainError(f"no QM witness between entries {i} and {i + 1}")
        out.append(w)
    return out


def congruences(m: int) -> list[tuple[str, bool]]:
    """The four congruences modulo 2^m - 1 with k = (m+1)/2, m odd."""
    if m % 2 == 0 or m < 3:
        raise ValueError(f"needs odd m > 1, got {m}")
    k = (m + 1) // 2
    K = 1 << k
    n = (1 << m) - 1
    return [
        ("(2^k-1)(2^k+1) = 1", (K - 1) * (K + 1) % n == 1 % n),
        ("(2^k+2)(2^k-1) = 2^k", (K + 2) * (K - 1) % n == K % n),
        ("(2^k-2)(2^(k-1)+1) = -1", (K - 2) * (K // 2 + 1) % n == (-1) % n),
        ("2^k(2^(k-1)+1) = 2^k+1", K * (K // 2 + 1) % n == (K + 1) % n),
    ]


def verify_congruences(m: int) -> bool:
    return all(v for _, v in congruences(m))
