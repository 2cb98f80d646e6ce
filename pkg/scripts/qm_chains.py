"""Witnesses linking the S5 families for odd m, plus canonical forms."""

import argparse

from permtri.catalog import SECTION5_CHAIN, build_section5
from permtri.gf2m import make_field
from permtri.qmequiv import canonical_form, verify_chain


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("m", type=int, nargs="*", default=[3, 5, 7])
    args = ap.parse_args()
    for m in args.m:
        ctx = make_field(m)
        insts = [build_section5(s, ctx, None if s in ("S5-F", "S5-H") else 1) for s in SECTION5_CHAIN]
        ws = verify_chain(insts)
        print(f"m={m}")
        for a, b, w in zip(SECTION5_CHAIN, SECTION5_CHAIN[1:], ws):
            print(f"  {b} = {w.a:#x} * {a}({w.c:#x} * x^{w.d})")
        print(f"  canonical form: {canonical_form(insts[0].poly)}")


if __name__ == "__main__":
    main()
