"""Which m in 2..8 make x^5 + x^(2^m+4) + x^(5*2^m) a permutation of GF(2^2m)?"""

import argparse
import time

from permtri.catalog import build_section4
from permtri.gf2m import make_tower


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m-max", type=int, default=8)
    args = ap.parse_args()
    for m in range(2, args.m_max + 1):
        t0 = time.perf_counter()
        inst = build_section4("T42", make_tower(m))
        got = inst.oracle()
        print(f"m={m}  predicted={inst.predicted!s:<5}  oracle={got!s:<5}  {time.perf_counter() - t0:.2f}s")


if __name__ == "__main__":
    main()
