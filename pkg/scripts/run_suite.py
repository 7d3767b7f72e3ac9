#!/usr/bin/env python3
"""Run the acceptance criteria for several seeds and tabulate the timings.

    python scripts/run_suite.py --seeds 0 7 --jobs 4
"""

import argparse
import sys

from cocovex.acceptance import run_suite


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seeds", type=int, nargs="+", default=[0])
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--only", type=int, nargs="*")
    args = ap.parse_args()

    failed = 0
    for seed in args.seeds:
        print(f"# seed {seed}")
        for r in run_suite(seed, args.only, jobs=args.jobs):
            print(r.line())
            failed += not r.ok
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
