#!/usr/bin/env python3
"""Ratio-collapse run for unequal band offsets: tabulate the exact
|beta^-(0)/beta^+(0)| over n = r s d m and print the verdict."""

import argparse

from hillwalk.criteria import theorem31_report
from hillwalk.numerics import GaussianRational


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--a", default="1", help="coefficient at frequency -2R")
    ap.add_argument("--b", default="1", help="coefficient at frequency 2S")
    ap.add_argument("--R", type=int, default=1)
    ap.add_argument("--S", type=int, default=3)
    ap.add_argument("--m-lo", type=int, default=2)
    ap.add_argument("--m-hi", type=int, default=6)
    ap.add_argument("--bc", default="per+", choices=["per+", "per-"])
    args = ap.parse_args()

    rep = theorem31_report(
        GaussianRational.parse(args.a), GaussianRational.parse(args.b),
        args.R, args.S, range(args.m_lo, args.m_hi + 1), bc=args.bc,
    )
    print(f"index family: {rep.index_set}")
    print(f"{'m':>4} {'n':>5} {'ratio':>12} {'log-dec':>9} {'floor':>7}")
    for row in rep.rows:
        dec = f"{row['log_decrement']:9.3f}" if "log_decrement" in row else " " * 9
        floor = f"{row['log_decrement_floor']:7.3f}" if "log_decrement_floor" in row else " " * 7
        print(f"{row['m']:>4} {row['n']:>5} {row['ratio']:>12.3e} {dec} {floor}")
    print(f"conclusion: {rep.conclusion}")
    for c in rep.caveats:
        print(f"  note: {c}")


if __name__ == "__main__":
    main()
