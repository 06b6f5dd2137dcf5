#!/usr/bin/env python3
"""Equal-offset verdict: bands at -2R and 2R, decided by the exact
modulus rule (or structurally for even R under antiperiodic conditions),
with a t_n corroboration table."""

import argparse

from hillwalk.criteria import prop20_verdict
from hillwalk.numerics import GaussianRational


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--a", default="1")
    ap.add_argument("--b", default="1i")
    ap.add_argument("--R", type=int, default=2)
    ap.add_argument("--bc", default="per-", choices=["per+", "per-"])
    ap.add_argument("--n-max", type=int, default=12)
    args = ap.parse_args()

    v = prop20_verdict(
        GaussianRational.parse(args.a), GaussianRational.parse(args.b),
        args.R, args.bc, n_max=args.n_max,
    )
    print(f"index family: {v.index_set}")
    for row in v.rows:
        if row["class"] == "delta0":
            print(f"  n={row['n']:>3}  structurally degenerate")
        else:
            print(f"  n={row['n']:>3}  t={row['t']:.6g}  leading={row['leading']:.6g}")
    print(f"conclusion: {v.conclusion}")
    for c in v.caveats:
        print(f"  note: {c}")


if __name__ == "__main__":
    main()
