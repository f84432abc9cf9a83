#!/usr/bin/env python3
"""Thermal advantage threshold gamma* as a function of the spin size.

The threshold converges to (1/2) ln 3 ~ 0.549 for large spins, for any
rotation angle at leading order.
"""

import argparse
import math

from spinlearn import memory
from spinlearn.cli import write_rows


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--two-j", type=int, nargs="+",
                        default=[20, 50, 100, 200, 500, 1000, 2000])
    parser.add_argument("--theta", type=float, nargs="+", default=[0.5, 1.0],
                        help="angles in units of pi")
    parser.add_argument("--out", default="thermal_threshold.csv")
    args = parser.parse_args()

    rows = []
    for two_j in args.two_j:
        for theta_pi in args.theta:
            theta = theta_pi * math.pi
            gamma_star = memory.thermal_advantage_threshold(two_j, theta)
            rows.append({
                "two_j": two_j,
                "theta_pi": theta_pi,
                "gamma_star": gamma_star,
                "half_log3": 0.5 * math.log(3.0),
            })
    write_rows(rows, "csv", args.out)
    print(f"wrote {len(rows)} rows to {args.out}")


if __name__ == "__main__":
    main()
