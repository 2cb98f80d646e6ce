"""Command-line entry point (``permtri``).

Exit codes: 0 success/agreement, 1 disagreement, 2 usage error,
3 guard violation (field or search beyond the desk-scale limits).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import catalog
from .gf2m import GuardError, make_field, make_tower
from .lucas import binom_mod_p
from .permcheck import RationalMap, bijects_mu, is_permutation_on_units, is_permutation_oracle, zieve_criterion
from .polyfun import parse_poly, to_zieve_form
from .qmequiv import congruences, find_witness

EXIT_OK, EXIT_DISAGREE, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


class UsageError(Exception):
    pass


def parse_range(text: str) -> tuple[int, ...]:
    """``a..b`` (inclusive), ``a`` or a comma list of those."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        try:
            if ".." in part:
                lo, hi = part.split("..")
                lo, hi = int(lo), int(hi)
                if hi < lo:
                    raise UsageError(f"empty range {part!r}")
                out.extend(range(lo, hi + 1))
            else:
                out.append(int(part))
        except ValueError:
            raise UsageError(f"bad range {text!r}") from None
    if not out:
        raise UsageError("empty range")
    return tuple(out)


def parse_moduli(items: list[str] | None) -> tuple[tuple[int, int], ...]:
    out = {}
    for h in items or ():
        try:
            v = int(h, 16)
        except ValueError:
            raise UsageError(f"bad hex modulus {h!r}") from None
        if v < 2:
            raise UsageError(f"bad modulus {h!r}")
        out[v.bit_length() - 1] = v
    return tuple(sorted(out.items()))


@dataclass(frozen=True)
class RunConfig:
    command: str
    fmt: str = "table"
    moduli: tuple[tuple[int, int], ...] = ()
    jobs: int = 1
    seed: int = 0

    def modulus(self, degree: int) -> int | None:
        return dict(self.moduli).get(degree)


def _emit(obj, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(obj, indent=1) + "\n")
    else:
        for key, v in obj.items():
            if isinstance(v, list):
                out.write(f"{key}:\n")
                for item in v:
                    out.write(f"  {item}\n")
            else:
                out.write(f"{key}: {v}\n")


# -- commands -------------------------------------------------------------------


def cmd_verify(args, cfg: RunConfig, out) -> int:
    fams = [f.strip() for f in args.families.split(",") if f.strip()]
    if not fams:
        raise UsageError("no families given")
    if "ALL" in fams:
        fams = list(catalog.ALL_IDS)
    unknown = [f for f in fams if f not in catalog.ALL_IDS]
    if unknown:
        raise UsageError(f"unknown families: {', '.join(unknown)}")
    scfg = catalog.SweepConfig(
        families=tuple(fams),
        m_values=parse_range(args.m),
        base_m_values=parse_range(args.base_m) if args.base_m else None,
        k_values=parse_range(args.k_range) if args.k_range else None,
        n_values=parse_range(args.n_range),
        samples=args.samples,
        param_limit=args.param_limit,
        seed=cfg.seed,
        jobs=cfg.jobs,
        moduli=cfg.moduli,
    )
    res = catalog.sweep(scfg)
    if cfg.fmt == "csv":
        out.write(catalog.to_csv(res))
    elif cfg.fmt == "json":
        out.write(catalog.to_json(res) + "\n")
    else:
        out.write(f"{'family':<12} {'m':>3} {'bits':>4}  {'predicted':<9} {'oracle':<6} agree  params\n")
        for r in res.rows:
            out.write(
                f"{r.family_id:<12} {r.m:>3} {r.field_bits:>4}  {str(r.predicted).lower():<9} "
                f"{str(r.oracle).lower():<6} {'yes' if r.agree else 'NO':<5}  {r.params}\n"
            )
        out.write(f"# {len(res.rows)} instances, {len(res.disagreements)} disagreements\n")
    for fid, m, why in res.skipped:
        print(f"skipped {fid} m={m}: {why}", file=sys.stderr)
    for r in res.disagreements:
        print(f"DISAGREEMENT {r.family_id} m={r.m} {r.params}: {r.poly}", file=sys.stderr)
    if res.disagreements:
        return EXIT_DISAGREE
    if res.skipped:
        return EXIT_GUARD
    return EXIT_OK


def _check_field(args, cfg: RunConfig):
    if (args.m is None) == (args.m2m is None):
        raise UsageError("give exactly one of --m or --m2m")
    if args.m is not None:
        ctx = make_field(args.m, cfg.modulus(args.m))
        return ctx, ctx.q
    ctx = make_field(2 * args.m2m, cfg.modulus(2 * args.m2m))
    return ctx, 1 << args.m2m


def cmd_check(args, cfg: RunConfig, out) -> int:
    ctx, q = _check_field(args, cfg)
    f = parse_poly(args.poly, ctx, q)
    full = is_permutation_oracle(f)
    units = is_permutation_on_units(f)
    report = {
        "field": f"GF(2^{ctx.m})",
        "poly": str(f),
        "permutation": full,
        "permutes_units": units,
    }
    status = EXIT_OK
    if args.zieve is not None:
        v = zieve_criterion(to_zieve_form(f, args.zieve))
        report["criterion"] = v.is_permutation
        report["trace"] = [f"{d}: {str(b).lower()}" for d, b in v.condition_trace]
        if v.is_permutation != units:
            status = EXIT_DISAGREE
    if cfg.fmt == "json":
        _emit(report, "json", out)
    else:
        out.write(f"{'permutation' if full else 'not a permutation'} of {report['field']}\n")
        out.write(f"  poly: {report['poly']}\n  permutes units: {str(units).lower()}\n")
        if "trace" in report:
            out.write(f"  criterion: {str(report['criterion']).lower()}\n")
            for line in report["trace"]:
                out.write(f"    {line}\n")
    return status


def cmd_mu_check(args, cfg: RunConfig, out) -> int:
    t = make_tower(args.m, cfg.modulus(args.m), cfg.modulus(2 * args.m))
    l = RationalMap.parse(args.num, args.den, t.ext, t.q)
    ok = bijects_mu(l, t)
    if cfg.fmt == "json":
        _emit({"map": str(l), "m": args.m, "bijects_mu": ok}, "json", out)
    else:
        out.write(f"{'bijects' if ok else 'does not biject'} mu_{t.q + 1} in GF(2^{2 * args.m})\n")
    return EXIT_OK


def cmd_qm(args, cfg: RunConfig, out) -> int:
    ctx = make_field(args.m, cfg.modulus(args.m))
    f = parse_poly(args.f, ctx)
    g = parse_poly(args.g, ctx)
    w = find_witness(f, g)
    if cfg.fmt == "json":
        _emit({"equivalent": w is not None, "witness": w.to_json() if w else None}, "json", out)
    elif w is None:
        out.write("inequivalent\n")
    else:
        out.write(f"f(x) = {w.a:#x} * g({w.c:#x} * x^{w.d})\n")
    return EXIT_OK


def cmd_lucas(args, cfg: RunConfig, out) -> int:
    r = binom_mod_p(args.n, args.k, args.p)
    if cfg.fmt == "json":
        _emit({"n": args.n, "k": args.k, "p": args.p, "residue": r}, "json", out)
    else:
        out.write(f"{r}\n")
    return EXIT_OK


def cmd_congruences(args, cfg: RunConfig, out) -> int:
    res = congruences(args.m)
    ok = all(v for _, v in res)
    if cfg.fmt == "json":
        _emit({"m": args.m, "all_hold": ok, "congruences": {d: v for d, v in res}}, "json", out)
    else:
        for d, v in res:
            out.write(f"{d} (mod 2^{args.m}-1): {'holds' if v else 'FAILS'}\n")
        out.write("all hold\n" if ok else "some fail\n")
    return EXIT_OK if ok else EXIT_DISAGREE


# -- argument parsing ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "table"), default="table")
    common.add_argument("--modulus", action="append", metavar="HEX", help="irreducible modulus override (repeatable)")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="permtri", description="Permutation trinomials over binary fields.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="confront catalog predictions with the oracle")
    v.add_argument("--families", default="ALL", help="comma list of family ids, or ALL")
    v.add_argument("--m", "--m-range", dest="m", default="1..6", help="degrees, e.g. 2..8")
    v.add_argument("--base-m", default=None, help="degrees for GF(2^m) families (default: --m)")
    v.add_argument("--k-range", default=None, help="k values, e.g. --k-range=-6..6")
    v.add_argument("--n-range", default="1..12")
    v.add_argument("--samples", type=int, default=4)
    v.add_argument("--param-limit", type=int, default=64)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("check", parents=[common], help="oracle verdict for one polynomial")
    c.add_argument("poly")
    c.add_argument("--m", type=int, help="work in GF(2^m); q = 2^m")
    c.add_argument("--m2m", type=int, help="work in GF(2^2m); q = 2^m in exponents")
    c.add_argument("--zieve", type=int, metavar="S", help="also run the Zieve criterion with this s")
    c.set_defaults(func=cmd_check)

    mu = sub.add_parser("mu-check", parents=[common], help="does num/den permute mu_{q+1}")
    mu.add_argument("num")
    mu.add_argument("den")
    mu.add_argument("--m", type=int, required=True)
    mu.set_defaults(func=cmd_mu_check)

    qm = sub.add_parser("qm", parents=[common], help="QM-equivalence witness f = a*g(c x^d)")
    qm.add_argument("f")
    qm.add_argument("g")
    qm.add_argument("--m", type=int, required=True)
    qm.set_defaults(func=cmd_qm)

    lu = sub.add_parser("lucas", parents=[common], help="C(n, k) mod p")
    lu.add_argument("n", type=int)
    lu.add_argument("k", type=int)
    lu.add_argument("p", type=int)
    lu.set_defaults(func=cmd_lucas)

    co = sub.add_parser("congruences", parents=[common], help="the four congruences for odd m")
    co.add_argument("m", type=int)
    co.set_defaults(func=cmd_congruences)
    return p


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(args.command, args.format, parse_moduli(args.modulus), args.jobs, args.seed)
        if cfg.jobs < 1:
            raise UsageError("--jobs must be >= 1")
        return args.func(args, cfg, out)
    except GuardError as e:
        print(f"permtri: guard: {e}", file=sys.stderr)
        return EXIT_GUARD
    except (UsageError, ValueError, KeyError, ZeroDivisionError) as e:
        print(f"permtri: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
