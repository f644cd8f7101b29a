"""Continuity probe versus its linearization on random strict-interior points.

    python3 scripts/calibrate_probe.py --n 5 --t-min 0 --t-max 1 --points 20

Prints per point the probe value, the first-order prediction and
radius / sigma_min of the moment Jacobian, then the maximum.
"""

import argparse
import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from momhull import Interval  # noqa: E402
from momhull.oracle import continuity_probe, linearized_probe, naming_jacobian  # noqa: E402
from momhull.principal import membership  # noqa: E402
from test_acceptance import interior_points  # noqa: E402


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--t-min", type=float, default=0.0)
    ap.add_argument("--t-max", type=float, default=1.0)
    ap.add_argument("--points", type=int, default=20)
    ap.add_argument("--radius", type=float, default=1e-6)
    ap.add_argument("--samples", type=int, default=64)
    ap.add_argument("--gap", type=float, default=0.1, help="minimum node gap as a fraction of the width")
    ap.add_argument("--min-weight", type=float, default=0.1)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    I = Interval(args.t_min, args.t_max)
    pts = interior_points(args.n, I, args.points, [args.seed, args.n], args.gap, args.min_weight)
    worst = 0.0
    print(f"{'probe':>10} {'linear':>10} {'r/smin':>10}")
    for j, v in enumerate(pts):
        probe = continuity_probe(v, I, args.radius, args.samples, seed=[args.n, j])
        linear = linearized_probe(v, I, args.radius, args.samples, seed=[args.n, j])
        J = naming_jacobian(membership(v, I).certificate.underlying)
        smin = np.linalg.svd(J, compute_uv=False)[-1]
        print(f"{probe:10.3e} {linear:10.3e} {args.radius / smin:10.3e}")
        worst = max(worst, probe)
    print(f"max probe {worst:.3e}")


if __name__ == "__main__":
    main()
