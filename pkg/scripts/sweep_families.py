#!/usr/bin/env python3
"""Tabulate the Aloff-Wallach isotropy rates and the Q^{k,l,m} verdicts over a box of parameters."""

import argparse
from math import gcd

from g2homog.catalog import aloff_wallach_check, qklm_check


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--bound", type=int, default=4)
    args = p.parse_args()
    n = args.bound
    print("N^{k,l}: k l -> plane rates, (a, b)")
    for k in range(1, n + 1):
        for l in range(-n, n + 1):
            if gcd(k, l) != 1:
                continue
            out = aloff_wallach_check(k, l)
            print(f"  {k:2d} {l:3d} -> {out['plane_rates']}  {tuple(out['params'])}  {out['status']}")
    print("Q^{k,l,m} admitting an invariant G2-structure:")
    hits = [(k, l, m) for k in range(1, n + 1) for l in range(k + 1) for m in range(l + 1) if qklm_check(k, l, m)]
    print("  " + ", ".join(map(str, hits)))


if __name__ == "__main__":
    main()
