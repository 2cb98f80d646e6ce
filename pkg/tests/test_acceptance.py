"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""

import itertools
import random
import time

import pytest

from permtri import catalog
from permtri.catalog import (
    COROLLARIES,
    SECTION5_CHAIN,
    SweepConfig,
    build_corollary,
    build_ex315,
    build_f1_general,
    build_f2_general,
    build_section4,
    build_section5,
    build_t314,
    f1_bracket,
    f2_bracket,
    odd_binomial_indices,
    omega,
    sweep,
)
from permtri.gf2m import MODULI, is_irreducible, make_field, make_tower
from permtri.lucas import binom_mod_p, nonzero_count
from permtri.permcheck import (
    bijects_mu,
    classify_degree_one,
    is_permutation_on_units,
    mu_map_predicted,
    mu_maps,
    projective_maps,
    zieve_criterion,
)
from permtri.polyfun import SparsePoly, ZieveForm
from permtri.qmequiv import apply_witness, find_witness, same_function, verify_congruences


@pytest.fixture
def report(capsys):
    def _report(n, title, ok, detail):
        with capsys.disabled():
            print(f"\n[criterion {n}] {'PASS' if ok else 'FAIL'}  {title}: {detail}")
        return ok

    return _report


def test_criterion_1_t42_reproduction(report):
    t0 = time.perf_counter()
    got = {}
    for m in range(2, 9):
        got[m] = build_section4("T42", make_tower(m)).oracle()
    secs = time.perf_counter() - t0
    perms = sorted(m for m, v in got.items() if v)
    ok = perms == [2, 6] and secs < 120
    assert report(1, "T42 special permutes GF(2^2m), m = 2..8", ok, f"true at m = {perms}, {secs:.1f}s (limit 120s)")


def test_criterion_2_full_sweep(report):
    cfg = SweepConfig(
        m_values=tuple(range(1, 7)),
        base_m_values=(3, 5, 7, 9, 11),
        k_values=tuple(range(-6, 7)),
        n_values=tuple(range(1, 13)),
        param_limit=64,
        samples=8,
    )
    t0 = time.perf_counter()
    res = sweep(cfg)
    secs = time.perf_counter() - t0
    bad = res.disagreements
    ok = not bad and not res.skipped and secs < 300
    detail = f"{len(res.rows)} instances, {len(bad)} disagreements, {len(res.skipped)} skipped, {secs:.1f}s (limit 300s)"
    for r in bad[:20]:
        print("DISAGREEMENT", r)
    assert report(2, "catalog sweep vs oracle", ok, detail)


def test_criterion_3_zieve_equivalence(report):
    rng = random.Random(2024)
    total = agree = 0
    for m in (2, 3, 4, 6):
        ctx = make_field(m)
        n = ctx.q - 1
        divisors = [d for d in range(1, n + 1) if n % d == 0]
        done = 0
        while done < 500:
            s = rng.choice(divisors)
            r = rng.randint(1, n)
            terms = [(rng.randrange(0, 4 * s), rng.randrange(1, ctx.q)) for _ in range(rng.randint(1, 5))]
            h = SparsePoly.from_terms(ctx, terms)
            if h.is_zero():
                continue
            zf = ZieveForm(r, s, h)
            agree += zieve_criterion(zf).is_permutation == is_permutation_on_units(zf.expand())
            total += 1
            done += 1
    ok = agree == total == 2000
    assert report(3, "Zieve criterion vs units oracle, q in {4, 8, 16, 64}", ok, f"{agree}/{total} agree")


def test_criterion_4_mu_maps(report):
    t0 = time.perf_counter()
    cases = [("i", m) for m in range(1, 9)] + [("ii", m) for m in range(1, 10)] + [("iii", m) for m in (1, 3, 5, 7)]
    wrong = []
    for group, m in cases:
        t = make_tower(m)
        want = mu_map_predicted(group, m)
        for l in mu_maps(group, t):
            if bijects_mu(l, t) != want:
                wrong.append((group, m, str(l)))
    secs = time.perf_counter() - t0
    ok = not wrong and secs < 10
    assert report(4, "maps on mu_{q+1}", ok, f"{len(cases)} (group, m) cases, {len(wrong)} mismatches, {secs:.1f}s (limit 10s)")


def test_criterion_5_degree_one_classification(report):
    counts = []
    bad = 0
    for m in (1, 2, 3):
        t = make_tower(m)
        c = 0
        for a, b, cc, d in projective_maps(t):
            bad += not classify_degree_one(a, b, cc, d, t).agrees
            c += 1
        counts.append(c)
    ok = bad == 0
    assert report(5, "degree-one maps, 2m in {2, 4, 6}", ok, f"{sum(counts)} projective classes {counts}, {bad} mismatches")


def _section5_polys(ctx):
    out = []
    for sid in SECTION5_CHAIN:
        param = None if sid in ("S5-F", "S5-H") else 1
        out.append(build_section5(sid, ctx, param).poly)
    return out


def test_criterion_6_s5_chains(report):
    pairs = fails = 0
    for m in (3, 5, 7):
        polys = _section5_polys(make_field(m))
        for f, g in itertools.combinations(polys, 2):
            w = find_witness(f, g)
            pairs += 1
            if w is None or not same_function(apply_witness(g, w), f):
                fails += 1
    cong = all(verify_congruences(m) for m in range(3, 64, 2))
    ok = fails == 0 and cong
    assert report(6, "S5 families pairwise QM-equivalent, m in {3, 5, 7}", ok, f"{pairs - fails}/{pairs} pairs, congruences odd m <= 63: {cong}")


def test_criterion_7_lucas(report):
    bad = 0
    checked = 0
    rows = [[1]]
    for n in range(1, 1025):
        prev = rows[-1]
        rows.append([1] + [prev[i] + prev[i + 1] for i in range(n - 1)] + [1])
    for p in (2, 3, 5, 7):
        for n in range(1025):
            row = rows[n]
            for k in range(1025):
                want = row[k] % p if k <= n else 0
                bad += binom_mod_p(n, k, p) != want
                checked += 1
            bad += nonzero_count(n, p) != sum(1 for v in row if v % p)
    ok = bad == 0
    assert report(7, "Lucas residues and nonzero counts, n, k <= 1024, p in {2, 3, 5, 7}", ok, f"{checked} residues, {bad} mismatches")


def test_criterion_8_coefficient_vanishing(report):
    bad = checked = 0
    for m in range(1, 5):
        t = make_tower(m)
        gammas = [x for x in t.ext.units() if not t.in_mu(x)]
        deltas = [x for x in t.ext.elements() if not t.in_subfield(x)]
        for te in range(1, 7):
            for s in range(te):
                n = (1 << s) + (1 << te)
                js = odd_binomial_indices(n)
                for beta in t.mu:
                    for br in [f1_bracket(t, n, beta, g) for g in gammas] + [f2_bracket(t, n, beta, d) for d in deltas]:
                        checked += 1
                        bad += any(br[j] == 0 and br[n - j] == 0 for j in js)
    ok = bad == 0
    assert report(8, "no surviving exponent pair with both coefficients zero, 2m <= 8", ok, f"{checked} brackets, {bad} violations")


def _other_modulus(d):
    p = (1 << (d + 1)) - 1
    while p > MODULI[d]:
        if is_irreducible(p):
            return p
        p -= 2
    raise AssertionError(f"no second modulus of degree {d}")


def _element_free(t, m):
    """Instances whose construction does not depend on the chosen basis."""
    ks = range(-3, 4)
    out = []
    for cid, (mp, sp, tp, _) in COROLLARIES.items():
        if m % 2 != mp:
            continue
        for te in range(1, 5):
            for s in range(te):
                if s % 2 == sp and te % 2 == tp:
                    out.extend(build_corollary(cid, t, s, te, k) for k in ks)
    out.extend(build_t314(v, t, k) for v in "AB" for k in ks)
    out.extend(build_ex315(w, t) for w in ("F1", "F2"))
    out.extend(build_section4(sid, t) for sid in catalog.SECTION4_IDS)
    out.extend(build_section4(sid, t, k) for sid in ("T42", "T44", "T45", "T46") for k in ks)
    w = omega(t.ext)
    build = build_f1_general if m % 2 == 0 else build_f2_general
    out.extend(build(t, n, k, 1, w) for n in range(1, 13) for k in ks)
    return out


def _verdicts(insts):
    # element parameters print differently under another basis, so key on the rest
    out = []
    for inst in insts:
        v = inst.criterion()
        key = tuple((k, p) for k, p in inst.params.items() if k not in catalog.ELEMENT_PARAMS)
        out.append((inst.family_id, key, inst.predicted, inst.oracle(), None if v is None else v.is_permutation))
    return out


def test_criterion_9_isomorphism_invariance(report):
    diffs = total = 0
    used = {}
    for m in (3, 4, 5):
        alt_base, alt_ext = _other_modulus(m), _other_modulus(2 * m)
        used[m] = (hex(alt_base), hex(alt_ext))
        a = _verdicts(_element_free(make_tower(m), m))
        b = _verdicts(_element_free(make_tower(m, alt_base, alt_ext), m))
        total += len(a)
        diffs += sum(x != y for x, y in zip(a, b)) + abs(len(a) - len(b))
        if m % 2:
            for sid in ("P26", "S5-F", "S5-H", "R53-II"):
                fa = build_section5(sid, make_field(m)).oracle()
                fb = build_section5(sid, make_field(m, alt_base)).oracle()
                total += 1
                diffs += fa != fb
    ok = diffs == 0
    assert report(9, "verdicts under a second modulus, m in {3, 4, 5}", ok, f"{total} instances, {diffs} differences, alt moduli {used}")
