#!/usr/bin/env python3
"""Inertia statistics of the coconvex and convex AF forms over random families.

Prints a histogram of inertia triples per (kind, d, n).  The coconvex column
should never show a negative square and the convex one exactly one positive.
"""

import argparse
import random
from collections import Counter

from cocovex import families as F
from cocovex.mixed import af_form, inertia


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--count", type=int, default=15)
    args = ap.parse_args()
    rng = random.Random(args.seed)

    for d in (2, 3):
        for n in (2, 3, 4):
            co = Counter(inertia(af_form(F.random_coconvex_family(rng, d, n))).as_tuple() for _ in range(args.count))
            cv = Counter(inertia(af_form(F.random_convex_family(rng, d, n))).as_tuple() for _ in range(args.count))
            print(f"d={d} n={n} coconvex {dict(sorted(co.items()))}")
            print(f"d={d} n={n} convex   {dict(sorted(cv.items()))}")


if __name__ == "__main__":
    main()
