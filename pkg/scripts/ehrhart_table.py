#!/usr/bin/env python3
"""Ehrhart polynomials of random integer coconvex bodies with both reciprocity routes.

    python scripts/ehrhart_table.py --count 8 --dim 2
"""

import argparse
import random

from cocovex import families as F
from cocovex.coconvex import covolume
from cocovex.ehrhart import check_reciprocity, ehrhart_interpolate


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--count", type=int, default=8)
    ap.add_argument("--dim", type=int, default=2, choices=(1, 2, 3))
    args = ap.parse_args()
    rng = random.Random(args.seed)
    for i in range(args.count):
        a = F.random_body(rng, F.random_cone(rng, args.dim), scale=2)
        e = ehrhart_interpolate([a])
        r = check_reciprocity([a], e)
        lead = e.poly.coeff((args.dim,))
        print(
            f"{i:2d} base={[tuple(map(int, p)) for p in a.base_points]} E(m)={e} "
            f"lead={lead} covolume={covolume(a)} E(-1)={r.e_minus_one} rhs={r.rhs_chain} "
            f"{'ok' if r.ok else 'MISMATCH'}"
        )


if __name__ == "__main__":
    main()
