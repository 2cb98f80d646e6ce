import itertools
import random

import pytest

from permtri.catalog import SECTION5_CHAIN, build_section5
from permtri.gf2m import GuardError, make_field
from permtri.polyfun import SparsePoly, parse_poly
from permtri.qmequiv import (
    ChainError,
    QmWitness,
    apply_witness,
    canonical_form,
    compose_witness,
    congruences,
    find_witness,
    invert_witness,
    same_function,
    verify_chain,
    verify_congruences,
)


def _family(sid, ctx):
    return build_section5(sid, ctx, 1 if sid not in ("S5-F", "S5-H") else None).poly


def test_power_map_witness():
    ctx = make_field(3)
    f = parse_poly("x + x^3 + x^5", ctx)
    g = f.compose_monomial(1, 6)
    w = find_witness(g, f)
    assert w == QmWitness(1, 1, 6)
    assert same_function(apply_witness(f, w), g)


def test_identity_witness():
    ctx = make_field(4)
    f = parse_poly("x + 3*x^2 + x^9", ctx)
    assert find_witness(f, f) == QmWitness(1, 1, 1)


def test_inequivalent_term_counts():
    ctx = make_field(3)
    assert find_witness(parse_poly("x", ctx), parse_poly("x + x^2", ctx)) is None


def test_inequivalent_same_shape():
    ctx = make_field(3)
    # x^3 permutes GF(8) while x + x^2 does not, so no witness can exist
    assert find_witness(parse_poly("x + x^2", ctx), parse_poly("x + x^3", ctx)) is None


def test_scaled_and_substituted():
    ctx = make_field(5)
    rng = random.Random(3)
    g = parse_poly("x + 5*x^7 + x^9", ctx)
    for _ in range(20):
        a, c = rng.randrange(1, 32), rng.randrange(1, 32)
        d = rng.choice([1, 2, 3, 4, 5, 7, 8, 9])
        f = g.compose_monomial(c, d).scale(a)
        w = find_witness(f, g)
        assert w is not None
        assert same_function(apply_witness(g, w), f)
        assert w.d <= d


def test_compose_and_invert():
    ctx = make_field(5)
    h = parse_poly("x + x^7 + x^9", ctx)
    w2 = QmWitness(3, 7, 3)
    g = apply_witness(h, w2)
    w1 = QmWitness(9, 2, 5)
    f = apply_witness(g, w1)
    assert same_function(apply_witness(h, compose_witness(w1, w2, ctx)), f)
    back = invert_witness(w1, ctx)
    assert same_function(apply_witness(f, back), g)


def test_canonical_form_is_orbit_invariant():
    ctx = make_field(5)
    f = parse_poly("x + x^7 + x^9", ctx)
    cf = canonical_form(f)
    assert cf.terms[0][1] == 1
    for a, c, d in ((1, 1, 2), (5, 3, 7), (17, 30, 9)):
        g = apply_witness(f, QmWitness(a, c, d))
        assert canonical_form(g) == cf
    assert find_witness(cf, f) is not None


@pytest.mark.parametrize("m", [3, 5])
def test_s5_families_pairwise(m):
    ctx = make_field(m)
    polys = [_family(sid, ctx) for sid in SECTION5_CHAIN]
    for f, g in itertools.combinations(polys, 2):
        w = find_witness(f, g)
        assert w is not None
        assert same_function(apply_witness(g, w), f)
    forms = {canonical_form(p) for p in polys}
    assert len(forms) == 1


def test_canonical_forms_known():
    assert canonical_form(parse_poly("x + x^3 + x^5", make_field(3))) == parse_poly("x + x^2 + x^3", make_field(3))


def test_verify_chain():
    ctx = make_field(5)
    polys = [_family(sid, ctx) for sid in SECTION5_CHAIN]
    ws = verify_chain(polys)
    assert len(ws) == len(polys) - 1
    for i, w in enumerate(ws):
        assert same_function(apply_witness(polys[i], w), polys[i + 1])


def test_verify_chain_breaks():
    ctx = make_field(3)
    with pytest.raises(ChainError):
        verify_chain([parse_poly("x + x^3 + x^5", ctx), parse_poly("x + x^2 + x^4", ctx)])


def test_guard_and_field_mismatch():
    big = SparsePoly.monomial(make_field(13), 1)
    with pytest.raises(GuardError):
        find_witness(big, big)
    with pytest.raises(ValueError):
        find_witness(SparsePoly.monomial(make_field(3), 1), SparsePoly.monomial(make_field(4), 1))


def test_congruences():
    for m in range(3, 64, 2):
        assert verify_congruences(m)
    assert len(congruences(5)) == 4
    with pytest.raises(ValueError):
        congruences(4)
