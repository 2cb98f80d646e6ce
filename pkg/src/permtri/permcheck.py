"""Permutation verdicts: brute-force oracles, the Zieve criterion and its
exponent shift, and bijection tests for rational maps on mu_{q+1}."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from .gf2m import TABLE_LIMIT, FieldCtx, GuardError, TowerCtx
from .polyfun import SparsePoly, ZieveForm, eval_poly, parse_poly

ORACLE_LIMIT = TABLE_LIMIT

# degree-one classification outcomes
MU_TO_MU = "bijects-mu-to-mu"
MU_TO_LINE = "bijects-mu-to-projective-line"
NEITHER = "neither"

FORM_INVERSION = "beta/x"
FORM_MU = "(x - gamma^q*beta)/(gamma*x - beta)"
FORM_LINE = "(delta*x - beta*delta^q)/(x - beta)"


@dataclass(frozen=True)
class Verdict:
    is_permutation: bool
    method: str  # "oracle" | "criterion"
    condition_trace: tuple[tuple[str, bool], ...] = ()

    def __bool__(self):
        return self.is_permutation

    @classmethod
    def from_trace(cls, trace) -> "Verdict":
        trace = tuple((str(d), bool(v)) for d, v in trace)
        return cls(all(v for _, v in trace), "criterion", trace)


def _ctx_of(f: SparsePoly, ctx: FieldCtx | None) -> FieldCtx:
    if ctx is not None and ctx != f.ctx:
        raise ValueError("polynomial is not over the given field")
    ctx = f.ctx
    if ctx.q > ORACLE_LIMIT:
        raise GuardError(f"oracle limited to q <= 2^20 (got 2^{ctx.m})")
    return ctx


# -- oracles ------------------------------------------------------------------


def is_permutation_oracle(f: SparsePoly, ctx: FieldCtx | None = None) -> bool:
    """True iff f permutes the whole field, by a presence bitmap over all q values."""
    ctx = _ctx_of(f, ctx)
    seen = np.zeros(ctx.q, dtype=bool)
    seen[f.values_on_units()] = True
    seen[f.coeff(0)] = True
    return int(seen.sum()) == ctx.q


def is_permutation_on_units(f: SparsePoly, ctx: FieldCtx | None = None) -> bool:
    """True iff f maps the units bijectively onto the units."""
    ctx = _ctx_of(f, ctx)
    vals = f.values_on_units()
    seen = np.zeros(ctx.q, dtype=bool)
    seen[vals] = True
    return not seen[0] and int(seen.sum()) == ctx.q - 1


# -- criteria -----------------------------------------------------------------


def zieve_criterion(zf: ZieveForm, ctx: FieldCtx | None = None) -> Verdict:
    """Decide whether x^r h(x^((q-1)/s)) permutes the units via the two
    conditions of the Zieve criterion; both are always evaluated so the trace
    is complete."""
    if ctx is not None and ctx != zf.ctx:
        raise ValueError("Zieve form is not over the given field")
    ctx = zf.ctx
    n = ctx.q - 1
    r, s = zf.r, zf.s
    if s < 1 or n % s:
        raise ValueError(f"{s} does not divide q - 1 = {n}")
    step = n // s
    cond1 = math.gcd(r, step) == 1

    # the s-th roots of unity are g^(step*j)
    tab = ctx.tables
    logs = step * np.arange(s, dtype=np.int64)
    hv = zf.h.values_on_units(logs)
    if (hv == 0).any():
        cond2 = False
    else:
        img = (r * logs + step * tab.log[hv]) % n
        cond2 = len(np.unique(img)) == s
    return Verdict.from_trace(
        [
            (f"gcd({r}, {step}) = 1", cond1),
            (f"x^{r}*h(x)^{step} permutes the {s}-th roots of unity", cond2),
        ]
    )


def shift_criterion(zf: ZieveForm, k: int, ctx: FieldCtx | None = None) -> Verdict:
    """Verdict for x^(k*s) * f(x), given that f itself permutes."""
    base = zieve_criterion(zf, ctx)
    if not base.is_permutation:
        raise ValueError("shift criterion needs a base form that permutes")
    step = zf.step
    e = zf.r + k * zf.s
    return Verdict.from_trace(
        [
            ("base form permutes", True),
            (f"gcd({zf.r} + {k}*{zf.s}, {step}) = 1", math.gcd(e, step) == 1),
        ]
    )


# -- rational maps on mu_{q+1} --------------------------------------------------


@dataclass(frozen=True)
class RationalMap:
    num: SparsePoly
    den: SparsePoly

    def __post_init__(self):
        if self.num.ctx != self.den.ctx:
            raise ValueError("numerator and denominator over different fields")
        if self.den.is_zero():
            raise ValueError("zero denominator")

    @classmethod
    def parse(cls, num: str, den: str, ctx: FieldCtx, q: int | None = None) -> "RationalMap":
        return cls(parse_poly(num, ctx, q), parse_poly(den, ctx, q))

    @property
    def ctx(self) -> FieldCtx:
        return self.num.ctx

    def __call__(self, x: int) -> int | None:
        """Value at x, or None for infinity."""
        d = eval_poly(self.den, x)
        if d == 0:
            return None
        return self.ctx.div(eval_poly(self.num, x), d)

    def compose(self, inner: "RationalMap") -> "RationalMap":
        """self(inner(x)), homogenised so no division is needed."""
        deg = max(self.num.degree, self.den.degree)
        one = SparsePoly.monomial(self.ctx, 0)
        npow = [one]
        dpow = [one]
        for _ in range(deg):
            npow.append(npow[-1] * inner.num)
            dpow.append(dpow[-1] * inner.den)

        def lift(p: SparsePoly) -> SparsePoly:
            acc = SparsePoly.zero(self.ctx)
            for i, c in p.terms:
                acc = acc + (npow[i] * dpow[deg - i]).scale(c)
            return acc

        return RationalMap(lift(self.num), lift(self.den))

    def square(self) -> "RationalMap":
        return RationalMap(self.num.square(), self.den.square())

    def reciprocal(self) -> "RationalMap":
        return RationalMap(self.den, self.num)

    def __str__(self):
        return f"({self.num})/({self.den})"


def bijects_mu(l: RationalMap, t: TowerCtx) -> bool:
    """True iff l permutes mu_{q+1}; a pole on mu_{q+1} is an error."""
    if l.ctx != t.ext:
        raise ValueError("map is not over the extension field")
    mu_set = t.mu_set
    image = set()
    for x in t.mu:
        y = l(x)
        if y is None:
            raise ValueError(f"denominator vanishes at {x:#x} in mu_{t.q + 1}")
        if y not in mu_set:
            return False
        image.add(y)
    return len(image) == t.q + 1


# maps that permute mu_{q+1}: "i" for every m, "ii" iff gcd(m, 3) = 1, "iii" for odd m
MU_MAPS = {
    "i": [
        ("x^3+x+1", "x^3+x^2+1"),
        ("x^3+x^2+1", "x^3+x+1"),
        ("x^6+x^2+1", "x^6+x^4+1"),
        ("x^6+x^4+1", "x^6+x^2+1"),
    ],
    "ii": [("x^4+x^3+x", "x^3+x+1"), ("x^3+x+1", "x^4+x^3+x")],
    "iii": [("x^5+x^4+x", "x^4+x+1"), ("x^4+x+1", "x^5+x^4+x")],
}


def mu_map_predicted(group: str, m: int) -> bool:
    if group == "i":
        return True
    if group == "ii":
        return math.gcd(m, 3) == 1
    if group == "iii":
        if m % 2 == 0:
            raise ValueError("group 'iii' maps are only claimed for odd m")
        return True
    raise KeyError(group)


def mu_maps(group: str, t: TowerCtx) -> list[RationalMap]:
    return [RationalMap.parse(n, d, t.ext) for n, d in MU_MAPS[group]]


# -- degree-one maps ----------------------------------------------------------


@dataclass(frozen=True)
class DegreeOneClass:
    kind: str  # by direct evaluation
    form: str | None  # matched normal form, if any
    form_kind: str  # kind implied by the normal form

    @property
    def agrees(self) -> bool:
        return self.kind == self.form_kind


def _field_ops(ctx: FieldCtx) -> tuple[Callable, Callable, Callable]:
    if ctx.q <= TABLE_LIMIT:
        tab = ctx.tables
        return tab.mul, tab.div, tab.pow
    return ctx.mul, ctx.div, ctx.pow_sm


def _direct_kind(a: int, b: int, c: int, d: int, t: TowerCtx, mul, div) -> str:
    mu_set, sub = t.mu_set, t.subfield_set
    vals = set()
    to_mu = to_line = True
    for x in t.mu:
        den = mul(c, x) ^ d
        if den == 0:
            y = None
            to_mu = False
        else:
            y = div(mul(a, x) ^ b, den)
            if y not in mu_set:
                to_mu = False
            if y not in sub:
                to_line = False
        if not (to_mu or to_line):
            return NEITHER
        vals.add(y)
    if len(vals) != t.q + 1:
        return NEITHER
    return MU_TO_MU if to_mu else MU_TO_LINE


def _normal_form(a: int, b: int, c: int, d: int, t: TowerCtx, mul, div, pw) -> str | None:
    q = t.q
    one = 1

    def in_mu(x):
        return x != 0 and pw(x, q + 1) == one

    if a == 0 and d == 0:
        if in_mu(div(b, c)):
            return FORM_INVERSION
        return None
    if a != 0:
        gamma, beta, b1 = div(c, a), div(d, a), div(b, a)
        if in_mu(beta) and not in_mu(gamma) and b1 == mul(pw(gamma, q), beta):
            return FORM_MU
    if c != 0:
        delta, beta, b1 = div(a, c), div(d, c), div(b, c)
        if in_mu(beta) and pw(delta, q) != delta and b1 == mul(beta, pw(delta, q)):
            return FORM_LINE
    return None


def classify_degree_one(a: int, b: int, c: int, d: int, t: TowerCtx) -> DegreeOneClass:
    """Classify l(x) = (ax+b)/(cx+d) on mu_{q+1} by evaluation, and separately
    by matching the known normal forms."""
    mul, div, pw = _field_ops(t.ext)
    if mul(a, d) == mul(b, c):
        raise ValueError("degenerate degree-one map (ad = bc)")
    kind = _direct_kind(a, b, c, d, t, mul, div)
    form = _normal_form(a, b, c, d, t, mul, div, pw)
    if form in (FORM_INVERSION, FORM_MU):
        form_kind = MU_TO_MU
    elif form == FORM_LINE:
        form_kind = MU_TO_LINE
    else:
        form_kind = NEITHER
    return DegreeOneClass(kind, form, form_kind)


def projective_maps(t: TowerCtx) -> Iterator[tuple[int, int, int, int]]:
    """One representative (first nonzero entry 1) of every nondegenerate
    degree-one map over the extension field."""
    Q = t.ext.q
    mul = _field_ops(t.ext)[0]
    rng = range(Q)
    for b in rng:
        for c in rng:
            for d in rng:
                if d != mul(b, c):
                    yield 1, b, c, d
    # a = 0 needs b, c != 0; a = b = 0 is always degenerate
    for c in range(1, Q):
        for d in rng:
            yield 0, 1, c, d
