#!/usr/bin/env python3
"""Sweep the upper-bound families over d and compose the pointwise best.

Writes the same CSV schema as the command line tool, one row per family
per d plus a `best` row naming the winner. Redirect to a file to plot.
"""

import argparse
import sys

from delcap import (BoundSpec, build_default_table, compose_best_upper,
                    d_grid, evaluate_bound)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--step", type=float, default=0.05)
    parser.add_argument("--L", type=int, default=8,
                        help="block length for the c3 and c4 curves")
    args = parser.parse_args()

    table = build_default_table()
    specs = [
        BoundSpec("c1_star", {"D": 2, "l_max": table.l_max}),
        BoundSpec("c2_star", {"R": 4, "l_max": table.l_max}),
        BoundSpec("c3", {"L": args.L}),
        BoundSpec("c4", {"L": args.L}),
    ]

    print("kind,params,d,value,side,tolerance")
    for d in d_grid(args.step, 1.0 - args.step, args.step):
        for spec in specs:
            value = evaluate_bound(spec, d, table)
            params = ";".join(f"{k}={spec.parameters[k]}"
                              for k in sorted(spec.parameters))
            print(f"{spec.kind},{params},{d!r},{value!r},upper,"
                  f"{spec.solver_tolerance!r}")
        best, winner = compose_best_upper(d, specs, table)
        print(f"best,winner={winner.kind},{d!r},{best!r},upper,"
              f"{winner.solver_tolerance!r}")
        print(f"# d={d:.2f}: best={best:.4f} from {winner.kind}",
              file=sys.stderr)


if __name__ == "__main__":
    main()
