#!/usr/bin/env python3
"""Three criteria side by side for bands at -2 and 2: t_n(0), t_n(z*),
and the Dirichlet deviation ratio, with high-precision pair refinement."""

import argparse

from hillwalk.criteria import concordance_report
from hillwalk.numerics import GaussianRational


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--a", default="1")
    ap.add_argument("--b", default="2")
    ap.add_argument("--ns", default="6,8,10,12", help="even disc indices")
    ap.add_argument("--K", type=int, default=32)
    ap.add_argument("--precision", type=int, default=320)
    args = ap.parse_args()

    rep = concordance_report(
        GaussianRational.parse(args.a), GaussianRational.parse(args.b),
        ns=tuple(int(p) for p in args.ns.split(",")),
        K=args.K, precision=args.precision,
    )
    print(f"potential: {rep.potential}  (K={rep.K}, {rep.precision} bits)")
    print(f"{'n':>4} {'t_n(0)':>12} {'t_n(z*)':>12} {'deviation':>12} {'gap':>10}")
    for row in rep.rows:
        print(f"{row['n']:>4} {row['c1']:>12.5g} {row['c2']:>12.5g} "
              f"{row['c3']:>12.5g} {row['gap']:>10.3e}")


if __name__ == "__main__":
    main()
