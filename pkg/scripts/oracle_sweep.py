"""Membership versus the grid LP on bounding-box samples, by n and interval.

    python3 scripts/oracle_sweep.py --n-max 4 --points 200 --grid 2001
"""

import argparse

import numpy as np

from momhull import Interval, MomentPoint
from momhull.oracle import GridSpec, oracle_check


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=4)
    ap.add_argument("--points", type=int, default=200)
    ap.add_argument("--grid", type=int, default=2001)
    ap.add_argument("--slack", type=float, default=1e-6)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    grid = GridSpec(args.grid, args.slack)
    for I in (Interval(0.0, 1.0), Interval(-1.0, 2.0)):
        for n in range(1, args.n_max + 1):
            rng = np.random.default_rng([args.seed, n])
            lo = np.array([I.power_bounds(k)[0] for k in range(1, n + 1)])
            hi = np.array([I.power_bounds(k)[1] for k in range(1, n + 1)])
            counts = {"agree": 0, "band": 0, "disagree": 0}
            inside = 0
            for _ in range(args.points):
                ours, _, status = oracle_check(MomentPoint(n, rng.uniform(lo, hi)), I, grid)
                counts[status] += 1
                inside += ours
            print(f"[{I.t_min:g},{I.t_max:g}] n={n}: in hull {inside}/{args.points}, {counts}")


if __name__ == "__main__":
    main()
