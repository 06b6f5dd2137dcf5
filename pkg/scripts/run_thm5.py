#!/usr/bin/env python3
"""Ratio-collapse run for the shifted family n = s m - 1 (bands at -2
and 2s): super-exponential collapse and the antiperiodic verdict."""

import argparse

from hillwalk.criteria import theorem5_report
from hillwalk.numerics import GaussianRational


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--a", default="1")
    ap.add_argument("--b", default="1")
    ap.add_argument("--s", type=int, default=3, help="upper band offset, s >= 3")
    ap.add_argument("--m-lo", type=int, default=2)
    ap.add_argument("--m-hi", type=int, default=7)
    args = ap.parse_args()

    rep = theorem5_report(
        GaussianRational.parse(args.a), GaussianRational.parse(args.b),
        args.s, range(args.m_lo, args.m_hi + 1),
    )
    print(f"index family: {rep.index_set}")
    print(f"{'m':>4} {'n':>5} {'ratio':>12}")
    for row in rep.rows:
        print(f"{row['m']:>4} {row['n']:>5} {row['ratio']:>12.3e}")
    print(f"conclusion: {rep.conclusion}")
    for c in rep.caveats:
        print(f"  note: {c}")


if __name__ == "__main__":
    main()
