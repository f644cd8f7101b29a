"""Worst relative round-trip error evaluate -> principal_from_moments -> evaluate by n.

    python3 scripts/round_trip_errors.py --n-max 12 --count 200 --t-min -1 --t-max 2
"""

import argparse

import numpy as np

from momhull import Interval, evaluate
from momhull.errors import OutsideHull
from momhull.oracle import random_naming
from momhull.principal import principal_from_moments


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=8)
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--t-min", type=float, default=0.0)
    ap.add_argument("--t-max", type=float, default=1.0)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    I = Interval(args.t_min, args.t_max)
    for n in range(1, args.n_max + 1):
        rng = np.random.default_rng([args.seed, n])
        worst, outside = 0.0, 0
        for k in range(args.count):
            P = random_naming(n, I, int(rng.integers(1, n + 3)), [args.seed, n, k])
            v = evaluate(P).v
            try:
                w = evaluate(principal_from_moments(evaluate(P), I, allow_high_n=True)).v
            except OutsideHull:
                outside += 1
                continue
            denom = np.where(v == 0, 1.0, np.abs(v))
            worst = max(worst, float(np.max(np.abs(w - v) / denom)))
        print(f"n={n:2d}  worst rel err {worst:.2e}  reported outside {outside}/{args.count}")


if __name__ == "__main__":
    main()
