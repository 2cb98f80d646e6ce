"""Constructors for the permutation-trinomial families, each paired with its
claimed iff-condition, and a sweep that confronts every claim with the
brute-force oracle.

Families over GF(q^2) (q = 2^m) are built from a ``TowerCtx``; families over
GF(2^m) itself (m odd) from a ``FieldCtx``.  Exponents that the statements
allow to be negative are shifted by multiples of q^2 - 1; those families
make claims about the units only and are marked ``units-only``.
"""

from __future__ import annotations

import csv
import io
import json
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

from .gf2m import FieldCtx, GuardError, TowerCtx, make_field, make_tower, primitive_root_of_unity
from .lucas import binom_mod_p
from .permcheck import Verdict, is_permutation_on_units, is_permutation_oracle, zieve_criterion
from .polyfun import SparsePoly, to_zieve_form

BASE_FIELD = "base-field"
EXT_FIELD = "ext-field"
UNITS_ONLY = "units-only"

GENERAL_IDS = ("F1-THM33", "F2-THM35")
# (m parity, s parity, t parity, bracket shape); parity 1 = odd
COROLLARIES = {
    "C38": (0, 1, 1, "A"),
    "C39": (0, 0, 1, "B"),
    "C310": (0, 1, 0, "C"),
    "C311": (0, 0, 0, "D"),
    "C312": (1, 1, 1, "A"),
    "C313": (1, 0, 1, "B"),
    "C314": (1, 1, 0, "C"),
    "C315": (1, 0, 0, "D"),
}
T314_IDS = ("T314A", "T314B")
EX315_IDS = ("EX315-F1", "EX315-F2", "EX315-PARAM")
SECTION4_IDS = ("T42", "C43", "T44", "T45", "T46")
BASE_IDS = ("P26", "S5-F", "S5-F1", "S5-F2", "S5-F3", "S5-F4", "S5-G", "S5-H", "R53-I", "R53-II")
SECTION5_CHAIN = ("S5-F", "S5-F1", "S5-F2", "S5-F3", "S5-F4", "S5-G", "S5-H")
EXT_IDS = GENERAL_IDS + tuple(COROLLARIES) + T314_IDS + EX315_IDS + SECTION4_IDS
ALL_IDS = EXT_IDS + BASE_IDS

# parameters holding field elements (printed in hex)
ELEMENT_PARAMS = ("beta", "gamma", "delta", "u", "a", "b")


@dataclass(frozen=True)
class FamilyInstance:
    family_id: str
    m: int
    params: dict
    poly: SparsePoly
    condition_trace: tuple[tuple[str, bool], ...]
    target: str
    zieve_s: int | None = None
    notes: tuple[str, ...] = ()

    @property
    def predicted(self) -> bool:
        return all(v for _, v in self.condition_trace)

    @property
    def field_bits(self) -> int:
        return self.poly.ctx.m

    def params_str(self) -> str:
        parts = []
        for key, v in self.params.items():
            parts.append(f"{key}={v:#x}" if key in ELEMENT_PARAMS else f"{key}={v}")
        return ";".join(parts)

    def oracle(self) -> bool:
        if self.target == UNITS_ONLY:
            return is_permutation_on_units(self.poly)
        return is_permutation_oracle(self.poly)

    def criterion(self) -> Verdict | None:
        """Zieve-criterion verdict on the units, when the family has a form."""
        if self.zieve_s is None:
            return None
        return zieve_criterion(to_zieve_form(self.poly, self.zieve_s))


def _trace(*items) -> tuple[tuple[str, bool], ...]:
    return tuple((d, bool(v)) for d, v in items)


def _gcd1(a: int, b: int) -> bool:
    return math.gcd(a, b) == 1


# -- extension-field helpers ----------------------------------------------------


def _lead(t: TowerCtx, e: int) -> int:
    """Representative of e in [1, q^2 - 1]."""
    n = t.ext.q - 1
    return (e - 1) % n + 1


def _bracket_poly(t: TowerCtx, lead: int, bracket: dict[int, int]) -> SparsePoly:
    """x^lead * sum_j c_j x^(j(q-1)) over the extension field."""
    e0 = _lead(t, lead)
    step = t.q - 1
    return SparsePoly.from_terms(t.ext, [(e0 + j * step, c) for j, c in bracket.items()])


def _ops(t: TowerCtx):
    tab = t.ext.tables
    return tab.mul, tab.pow


@lru_cache(maxsize=None)
def odd_binomial_indices(n: int) -> tuple[int, ...]:
    """The j in [0, n] with C(n, j) odd; only these survive in characteristic 2."""
    return tuple(j for j in range(n + 1) if binom_mod_p(n, j, 2))


def f1_bracket(t: TowerCtx, n: int, beta: int, gamma: int) -> dict[int, int]:
    """Coefficients c_j of y^j in (gamma*y + beta)^n + gamma*(y + gamma^q*beta)^n,
    kept for every j with C(n, j) odd (zeros included)."""
    mul, pw = _ops(t)
    q = t.q
    out = {}
    for j in odd_binomial_indices(n):
        g = pw(gamma, j) ^ pw(gamma, 1 + q * (n - j))
        out[j] = mul(pw(beta, n - j), g)
    return out


def f2_bracket(t: TowerCtx, n: int, beta: int, delta: int) -> dict[int, int]:
    """Coefficients of y^j in (delta*y + beta*delta^q)^n + delta*(y + beta)^n."""
    mul, pw = _ops(t)
    q = t.q
    bdq = mul(beta, pw(delta, q))
    out = {}
    for j in odd_binomial_indices(n):
        out[j] = mul(pw(delta, j), pw(bdq, n - j)) ^ mul(delta, pw(beta, n - j))
    return out


def build_f1_general(t: TowerCtx, n: int, k: int, beta: int, gamma: int) -> FamilyInstance:
    if n < 1:
        raise ValueError("n must be positive")
    if not t.in_mu(beta):
        raise ValueError(f"beta = {beta:#x} is not in mu_{t.q + 1}")
    if t.in_mu(gamma):
        raise ValueError(f"gamma = {gamma:#x} lies in mu_{t.q + 1}")
    q = t.q
    poly = _bracket_poly(t, n + k * (q + 1), f1_bracket(t, n, beta, gamma))
    trace = _trace(
        (f"gcd({n}+2*{k}, {q - 1}) = 1", _gcd1(n + 2 * k, q - 1)),
        (f"gcd({n}, {q + 1}) = 1", _gcd1(n, q + 1)),
    )
    params = {"n": n, "k": k, "beta": beta, "gamma": gamma}
    return FamilyInstance("F1-THM33", t.m, params, poly, trace, UNITS_ONLY, q + 1)


def build_f2_general(t: TowerCtx, n: int, k: int, beta: int, delta: int) -> FamilyInstance:
    if n < 1:
        raise ValueError("n must be positive")
    if not t.in_mu(beta):
        raise ValueError(f"beta = {beta:#x} is not in mu_{t.q + 1}")
    if t.in_subfield(delta):
        raise ValueError(f"delta = {delta:#x} lies in GF(2^{t.m})")
    q = t.q
    poly = _bracket_poly(t, n + k * (q + 1), f2_bracket(t, n, beta, delta))
    trace = _trace((f"gcd({n}*({n}+2*{k}), {q - 1}) = 1", _gcd1(n * (n + 2 * k), q - 1)),)
    params = {"n": n, "k": k, "beta": beta, "delta": delta}
    return FamilyInstance("F2-THM35", t.m, params, poly, trace, UNITS_ONLY, q + 1)


_SHAPES = {
    # y-exponents in the bracket, as functions of (n, 2^s, 2^t)
    "A": lambda n, a, b: (b, a, 0),
    "B": lambda n, a, b: (n, a, 0),
    "C": lambda n, a, b: (n, b, 0),
    "D": lambda n, a, b: (n, b, a),
}


def build_corollary(cid: str, t: TowerCtx, s: int, t_exp: int, k: int) -> FamilyInstance:
    """x^(n+k(q+1)) * (three powers of x^(q-1)), n = 2^s + 2^t_exp."""
    try:
        m_par, s_par, t_par, shape = COROLLARIES[cid]
    except KeyError:
        raise ValueError(f"unknown corollary id {cid!r}") from None
    if not 0 <= s < t_exp:
        raise ValueError("need 0 <= s < t")
    m = t.m
    if m % 2 != m_par or s % 2 != s_par or t_exp % 2 != t_par:
        want = f"m {'odd' if m_par else 'even'}, s {'odd' if s_par else 'even'}, t {'odd' if t_par else 'even'}"
        raise ValueError(f"{cid} needs {want}; got m={m}, s={s}, t={t_exp}")
    q = t.q
    n = (1 << s) + (1 << t_exp)
    ys = _SHAPES[shape](n, 1 << s, 1 << t_exp)
    poly = _bracket_poly(t, n + k * (q + 1), {j: 1 for j in ys})
    conds = [(f"gcd({n}+2*{k}, {q - 1}) = 1", _gcd1(n + 2 * k, q - 1))]
    if cid in ("C38", "C311"):
        conds.append((f"gcd({n}, {q + 1}) = 1", _gcd1(n, q + 1)))
    params = {"s": s, "t": t_exp, "n": n, "k": k}
    return FamilyInstance(cid, m, params, poly, _trace(*conds), UNITS_ONLY, q + 1)


def build_t314(variant: str, t: TowerCtx, k: int) -> FamilyInstance:
    q = t.q
    if variant in ("A", "T314A"):
        fid, n, ys = "T314A", 3, (3, 1, 0)
    elif variant in ("B", "T314B"):
        fid, n, ys = "T314B", 6, (6, 4, 0)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    poly = _bracket_poly(t, n + k * (q + 1), {j: 1 for j in ys})
    trace = _trace((f"gcd({n}+2*{k}, {q - 1}) = 1", _gcd1(n + 2 * k, q - 1)))
    return FamilyInstance(fid, t.m, {"k": k}, poly, trace, UNITS_ONLY, q + 1)


def build_ex315(which: str, t: TowerCtx, b: int | None = None) -> FamilyInstance:
    q, Q = t.q, t.ext.q
    ext = t.ext
    which = which.removeprefix("EX315-")
    if which == "F1":
        poly = SparsePoly.from_terms(ext, [(1, 1), (2 * q - 1, 1), (Q - q + 1, 1)])
        return FamilyInstance("EX315-F1", t.m, {}, poly, _trace(("unconditional", True)), EXT_FIELD, q + 1)
    if which == "F2":
        poly = SparsePoly.from_terms(ext, [(q - 2, 1), (Q - 2 * q, 1), (Q - q - 1, 1)])
        return FamilyInstance("EX315-F2", t.m, {}, poly, _trace(("unconditional", True)), EXT_FIELD, q + 1)
    if which == "PARAM":
        if not b:
            raise ValueError("PARAM needs a nonzero b")
        a = ext.pow(b, 2 * (q - 1))
        poly = SparsePoly.from_terms(ext, [(1, 1), (2 * q - 1, a), (Q - q + 1, ext.pow(a, q // 2))])
        trace = _trace((f"a^{q + 1} = 1", ext.pow(a, q + 1) == 1))
        return FamilyInstance("EX315-PARAM", t.m, {"b": b, "a": a}, poly, trace, EXT_FIELD, q + 1)
    raise ValueError(f"unknown Example variant {which!r}")


# (lead exponent n, bracket y-exponents, extra condition label, extra condition)
_S4_GENERAL = {
    "T42": (5, (0, 1, 5), "2 | m", lambda m: m % 2 == 0),
    "T44": (5, (0, 4, 5), "2 | m", lambda m: m % 2 == 0),
    "T45": (4, (0, 1, 3), "3 does not divide m", lambda m: m % 3 != 0),
    "T46": (2, (0, 2, 3), "3 does not divide m", lambda m: m % 3 != 0),
}


def build_section4(sid: str, t: TowerCtx, k: int | None = None) -> FamilyInstance:
    """General k-form when k is given, otherwise the named special trinomial."""
    m, q, Q = t.m, t.q, t.ext.q
    ext = t.ext
    if sid == "C43":
        if k is not None:
            raise ValueError("C43 takes no k")
        poly = SparsePoly.from_terms(ext, [(3 * q - 2, 1), (Q - q + 1, 1), (Q - 2 * q + 2, 1)])
        notes = ("three distinct terms only for m > 2; at m = 2 the x^10 terms cancel leaving x^13",)
        return FamilyInstance("C43", m, {}, poly, _trace(("2 | m", m % 2 == 0)), EXT_FIELD, q + 1, notes)
    if sid not in _S4_GENERAL:
        raise ValueError(f"unknown id {sid!r}")
    n, ys, label, cond = _S4_GENERAL[sid]
    if k is not None:
        poly = _bracket_poly(t, n + k * (q + 1), {j: 1 for j in ys})
        trace = _trace((f"gcd({n}+2*{k}, {q - 1}) = 1", _gcd1(n + 2 * k, q - 1)), (label, cond(m)))
        return FamilyInstance(sid, m, {"k": k}, poly, trace, UNITS_ONLY, q + 1)
    if sid == "T42":
        exps = (5, q + 4, 5 * q)
        trace = _trace(("m = 2 mod 4", m % 4 == 2))
    elif sid == "T44":
        exps = (5, 4 * q + 1, 5 * q)
        trace = _trace(("m = 2 mod 4", m % 4 == 2))
    elif sid == "T45":
        exps = (2, 2 * q, Q - q + 2)
        trace = _trace(("gcd(3, m) = 1", _gcd1(3, m)))
    else:
        exps = (q + 3, 3 * q + 1, 4 * q)
        trace = _trace(("gcd(3, m) = 1", _gcd1(3, m)))
    poly = SparsePoly.from_terms(ext, [(e, 1) for e in exps])
    return FamilyInstance(sid, m, {}, poly, trace, EXT_FIELD, q + 1)


# -- base-field families (m odd) --------------------------------------------------


def _odd_k(ctx: FieldCtx) -> int:
    m = ctx.m
    if m % 2 == 0 or m < 3:
        raise ValueError(f"needs odd m > 1, got m = {m}")
    return (m + 1) // 2


def build_p26(ctx: FieldCtx, fid: str = "P26") -> FamilyInstance:
    k = _odd_k(ctx)
    poly = SparsePoly.from_terms(ctx, [(1, 1), ((1 << k) - 1, 1), ((1 << k) + 1, 1)])
    return FamilyInstance(fid, ctx.m, {}, poly, _trace(("m odd, m > 1", True)), BASE_FIELD)


def build_section5(sid: str, ctx: FieldCtx, param: int | None = None) -> FamilyInstance:
    k = _odd_k(ctx)
    m, q = ctx.m, ctx.q
    K = 1 << k
    pw = ctx.pow
    if sid in ("S5-F", "P26"):
        return build_p26(ctx, sid)
    takes_param = sid in ("S5-F1", "S5-F2", "S5-F3", "S5-F4", "S5-G", "R53-I")
    if takes_param:
        if not param:
            raise ValueError(f"{sid} needs a nonzero parameter")
        if param >= q:
            raise ValueError(f"parameter {param:#x} not in GF(2^{m})")
    elif param is not None:
        raise ValueError(f"{sid} takes no parameter")
    u = a = param
    if sid in ("S5-F1", "S5-F2", "S5-F3", "S5-F4"):
        v = pw(u, q - K - 2)
    if sid == "S5-F1":
        terms = [(1, 1), (K - 1, u), (K + 1, v)]
    elif sid == "S5-F2":
        terms = [(K, u), (K + 2, 1), (3 * K + 4, v)]
    elif sid == "S5-F3":
        terms = [(1, u), (K + 1, 1), (2 * K + 3, v)]
    elif sid == "S5-F4":
        terms = [(1, v), (K - 1, 1), (q - 2 * K + 2, u)]
    elif sid == "S5-G":
        terms = [(1, 1), (K - 1, a), (q - 2 * K + 2, pw(a, K))]
    elif sid == "S5-H":
        terms = [(K, 1), (K + 2, 1), (3 * K + 4, 1)]
    elif sid == "R53-I":
        terms = [(1, 1), (3, a), (q - (1 << ((m + 3) // 2)) + 2, pw(a, q - (1 << ((m + 1) // 2))))]
    elif sid == "R53-II":
        terms = [(1, 1), (K - 1, 1), (q - K + 1, 1)]
    else:
        raise ValueError(f"unknown id {sid!r}")
    params = {"u" if sid.startswith("S5-F") else "a": param} if takes_param else {}
    poly = SparsePoly.from_terms(ctx, terms)
    return FamilyInstance(sid, m, params, poly, _trace(("m odd, m > 1", True)), BASE_FIELD)


# -- sweep ----------------------------------------------------------------------


@dataclass(frozen=True)
class SweepConfig:
    families: tuple[str, ...] = ALL_IDS
    m_values: tuple[int, ...] = (1, 2, 3, 4, 5, 6)
    # degrees for the base-field families (odd ones > 1 are used); None = m_values
    base_m_values: tuple[int, ...] | None = None
    # None: k = 0 where a family needs k, and no general k-forms of T42..T46
    k_values: tuple[int, ...] | None = None
    n_values: tuple[int, ...] = tuple(range(1, 13))
    t_max: int = 6
    # field-element parameters are exhaustive in fields of at most this size
    param_limit: int = 64
    samples: int = 4
    seed: int = 0
    jobs: int = 1
    # (degree, modulus) overrides for the field constructions
    moduli: tuple[tuple[int, int], ...] = ()

    def modulus(self, degree: int) -> int | None:
        return dict(self.moduli).get(degree)


@dataclass(frozen=True)
class SweepRow:
    family_id: str
    m: int
    field_bits: int
    params: str
    predicted: bool
    oracle: bool
    poly: str

    @property
    def agree(self) -> bool:
        return self.predicted == self.oracle


@dataclass
class SweepResult:
    rows: list[SweepRow] = field(default_factory=list)
    skipped: list[tuple[str, int, str]] = field(default_factory=list)

    @property
    def disagreements(self) -> list[SweepRow]:
        return [r for r in self.rows if not r.agree]

    @property
    def ok(self) -> bool:
        return not self.disagreements


def _choose(rng: random.Random, pool: list[int], limit_hit: bool, samples: int) -> list[int]:
    if not limit_hit or len(pool) <= samples:
        return pool
    return sorted(rng.sample(pool, samples))


def _ext_instances(fid: str, t: TowerCtx, cfg: SweepConfig):
    Q = t.ext.q
    big = Q > cfg.param_limit
    rng = random.Random(f"{cfg.seed}:{fid}:{t.m}")
    ks = cfg.k_values if cfg.k_values is not None else (0,)
    if fid in GENERAL_IDS:
        betas = t.mu
        if fid == "F1-THM33":
            others = [x for x in range(Q) if x not in t.mu_set]
        else:
            others = [x for x in range(Q) if x not in t.subfield_set]
        pairs = [(b, o) for b in betas for o in others]
        builder = build_f1_general if fid == "F1-THM33" else build_f2_general
        for n in cfg.n_values:
            for k in ks:
                for beta, other in _choose(rng, pairs, big, cfg.samples):
                    yield builder(t, n, k, beta, other)
    elif fid in COROLLARIES:
        m_par, s_par, t_par, _ = COROLLARIES[fid]
        if t.m % 2 != m_par:
            return
        for te in range(1, cfg.t_max + 1):
            for s in range(te):
                if s % 2 == s_par and te % 2 == t_par:
                    for k in ks:
                        yield build_corollary(fid, t, s, te, k)
    elif fid in T314_IDS:
        for k in ks:
            yield build_t314(fid, t, k)
    elif fid == "EX315-PARAM":
        for b in _choose(rng, list(range(1, Q)), big, cfg.samples):
            yield build_ex315(fid, t, b)
    elif fid in EX315_IDS:
        yield build_ex315(fid, t)
    elif fid == "C43":
        yield build_section4(fid, t)
    elif fid in SECTION4_IDS:
        yield build_section4(fid, t)
        if cfg.k_values is not None:
            for k in cfg.k_values:
                yield build_section4(fid, t, k)
    else:
        raise ValueError(f"unknown family {fid!r}")


def _base_instances(fid: str, ctx: FieldCtx, cfg: SweepConfig):
    if fid in ("P26", "S5-F", "S5-H", "R53-II"):
        yield build_section5(fid, ctx)
        return
    rng = random.Random(f"{cfg.seed}:{fid}:{ctx.m}")
    for p in _choose(rng, list(range(1, ctx.q)), ctx.q > cfg.param_limit, cfg.samples):
        yield build_section5(fid, ctx, p)


def instances(fid: str, m: int, cfg: SweepConfig):
    """Every instance of one family at one degree, in a fixed order."""
    if fid in BASE_IDS:
        if m % 2 == 0 or m < 3:
            return iter(())
        return _base_instances(fid, make_field(m, cfg.modulus(m)), cfg)
    return _ext_instances(fid, make_tower(m, cfg.modulus(m), cfg.modulus(2 * m)), cfg)


def _run_task(task) -> tuple[list[SweepRow], list[tuple[str, int, str]]]:
    fid, m, cfg = task
    rows = []
    try:
        for inst in instances(fid, m, cfg):
            rows.append(
                SweepRow(fid, m, inst.field_bits, inst.params_str(), inst.predicted, inst.oracle(), str(inst.poly))
            )
    except GuardError as e:
        return [], [(fid, m, str(e))]
    return rows, []


def _tasks(cfg: SweepConfig):
    base_ms = cfg.base_m_values if cfg.base_m_values is not None else cfg.m_values
    for fid in cfg.families:
        if fid not in ALL_IDS:
            raise ValueError(f"unknown family {fid!r}")
        for m in base_ms if fid in BASE_IDS else cfg.m_values:
            yield fid, m, cfg


def sweep(cfg: SweepConfig) -> SweepResult:
    """Build every instance the config selects and record predicted vs oracle.

    Fields beyond the guard limits are skipped and reported in
    ``result.skipped``; row order depends only on the config."""
    tasks = list(_tasks(cfg))
    if cfg.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(cfg.jobs) as ex:
            parts = list(ex.map(_run_task, tasks))
    else:
        parts = [_run_task(tk) for tk in tasks]
    res = SweepResult()
    for rows, skipped in parts:
        res.rows.extend(rows)
        res.skipped.extend(skipped)
    return res


# -- serialisation ----------------------------------------------------------------

SCHEMA = "permtri-sweep/1"
CSV_COLUMNS = ("family_id", "m", "field_bits", "params", "predicted", "oracle", "agree")


def _b(v: bool) -> str:
    return "true" if v else "false"


def to_csv(res: SweepResult) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in res.rows:
        w.writerow((r.family_id, r.m, r.field_bits, r.params, _b(r.predicted), _b(r.oracle), _b(r.agree)))
    return buf.getvalue()


def to_json(res: SweepResult) -> str:
    doc = {
        "schema": SCHEMA,
        "instances": len(res.rows),
        "disagreements": len(res.disagreements),
        "rows": [
            {
                "family_id": r.family_id,
                "m": r.m,
                "field_bits": r.field_bits,
                "params": r.params,
                "predicted": r.predicted,
                "oracle": r.oracle,
                "agree": r.agree,
                **({} if r.agree else {"poly": r.poly}),
            }
            for r in res.rows
        ],
        "skipped": [{"family_id": f, "m": m, "reason": why} for f, m, why in res.skipped],
    }
    return json.dumps(doc, indent=1)


def summary(res: SweepResult) -> list[tuple[str, int, int, int]]:
    """(family_id, instances, predicted permutations, disagreements) per family."""
    acc: dict[str, list[int]] = {}
    for r in res.rows:
        a = acc.setdefault(r.family_id, [0, 0, 0])
        a[0] += 1
        a[1] += r.predicted
        a[2] += not r.agree
    return [(fid, *v) for fid, v in acc.items()]


def omega(ctx: FieldCtx) -> int:
    """The deterministic primitive cube root of unity of ctx."""
    return primitive_root_of_unity(ctx, 3)
