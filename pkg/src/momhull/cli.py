"""Command-line interface.

Exit codes: 0 success, 1 usage or parse error, 2 point outside the hull,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from functools import partial

import numpy as np

from . import io
from .core import DEFAULT_TOL, Interval, MomentPoint, Tolerances, evaluate
from .errors import (
    DomainMismatch,
    InvalidNaming,
    InvalidShape,
    MomhullError,
    NotProper,
    OutsideHull,
    ParityMismatch,
)
from .oracle import GridSpec, oracle_check, random_naming
from .principal import membership, principal_from_moments
from .pvmat import PVMatrix, det_lu, det_recursive
from .reduction import canonicalize, reduce_to_principal
from .transform import combine, name_on_curve, push_naming

EXIT_OK, EXIT_USAGE, EXIT_OUTSIDE, EXIT_NUMERIC = 0, 1, 2, 3
TOL_ENV = "MOMHULL_TOL"

_USAGE_ERRORS = (io.ParseError, InvalidNaming, InvalidShape, ParityMismatch, NotProper, DomainMismatch)


@dataclass(frozen=True)
class RunConfig:
    n: int = 1
    t_min: float = 0.0
    t_max: float = 1.0
    tol: Tolerances = DEFAULT_TOL
    seed: int = 0
    jobs: int = 1

    def __post_init__(self):
        if self.jobs < 1:
            raise InvalidShape(f"jobs must be at least 1, got {self.jobs}")

    @property
    def interval(self) -> Interval:
        return Interval(self.t_min, self.t_max)


def tolerances_from(env: dict, args) -> Tolerances:
    """Defaults, then ``MOMHULL_TOL="rel_t=..,eps_c=..,eps_mem=.."``, then flags."""
    values = {}
    raw = env.get(TOL_ENV, "").strip()
    if raw:
        for item in raw.split(","):
            key, _, val = item.partition("=")
            key = key.strip()
            if key not in ("rel_t", "eps_c", "eps_sum", "eps_mem", "eps_eq"):
                raise io.ParseError(f"{TOL_ENV}: unknown tolerance {key!r}")
            values[key] = float(val)
    for key, flag in (("rel_t", "eps_t"), ("eps_c", "eps_c"), ("eps_mem", "eps_mem")):
        val = getattr(args, flag, None)
        if val is not None:
            values[key] = val
    return replace(DEFAULT_TOL, **values)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _write(text: str, path: str | None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _solve_one(point: MomentPoint, interval: Interval, tol: Tolerances, allow_high_n: bool):
    try:
        return principal_from_moments(point, interval, tol, allow_high_n=allow_high_n), None
    except OutsideHull as exc:
        return None, str(exc)


def _map(fn, items, jobs: int):
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


def cmd_name(args, cfg: RunConfig) -> int:
    batch = io.parse_points(_read(args.points))
    results = _map(
        partial(_solve_one, interval=batch.interval, tol=cfg.tol, allow_high_n=args.allow_high_n),
        batch.points,
        cfg.jobs,
    )
    code = EXIT_OK
    namings = []
    for k, (cert, err) in enumerate(results):
        if cert is None:
            print(f"point {k + 1}: outside the hull: {err}", file=sys.stderr)
            code = EXIT_OUTSIDE
        else:
            namings.append(cert)
    if namings:
        _write(io.format_namings(namings), args.output)
    return code


def cmd_eval(args, cfg: RunConfig) -> int:
    namings = io.parse_namings(_read(args.naming), cfg.tol)
    first = namings[0]
    if any(P.interval != first.interval or P.n != first.n for P in namings):
        raise DomainMismatch("all namings in one file must share n and the interval")
    _write(io.format_points(first.interval, [evaluate(P) for P in namings]), args.output)
    return EXIT_OK


def cmd_canon(args, cfg: RunConfig) -> int:
    namings = io.parse_namings(_read(args.naming), cfg.tol)
    _write(io.format_namings(canonicalize(P) for P in namings), args.output)
    return EXIT_OK


def cmd_reduce(args, cfg: RunConfig) -> int:
    namings = io.parse_namings(_read(args.naming), cfg.tol)
    _write(io.format_namings(reduce_to_principal(P) for P in namings), args.output)
    return EXIT_OK


def _check_one(point: MomentPoint, interval: Interval, tol: Tolerances, grid: GridSpec | None):
    verdict = membership(point, interval, tol)
    line = f"{verdict.tag.value} rank={verdict.rank}"
    if verdict.reason:
        line += f" ({verdict.reason})"
    if grid is None:
        return line, False
    _, lp, status = oracle_check(point, interval, grid, tol)
    return f"{line} oracle={'in' if lp else 'out'} {status}", status == "disagree"


def cmd_check_member(args, cfg: RunConfig) -> int:
    batch = io.parse_points(_read(args.points))
    grid = GridSpec(args.grid, args.slack) if args.oracle else None
    results = _map(partial(_check_one, interval=batch.interval, tol=cfg.tol, grid=grid), batch.points, cfg.jobs)
    lines = [line for line, _ in results]
    disagreements = sum(bad for _, bad in results)
    if args.oracle:
        lines.append(f"disagreements {disagreements}")
    _write("\n".join(lines) + "\n", args.output)
    return EXIT_NUMERIC if disagreements else EXIT_OK


def cmd_pv_det(args, cfg: RunConfig) -> int:
    nodes = args.nodes if args.nodes else [float(j) for j in range(args.q)]
    spec = PVMatrix(args.n, args.q, nodes)
    if args.method == "lu":
        out = [det_lu(spec)]
    elif args.method == "both":
        out = [det_recursive(spec), det_lu(spec)]
    else:
        out = [det_recursive(spec)]
    print(" ".join(io.fmt(x) for x in out))
    return EXIT_OK


def cmd_sample(args, cfg: RunConfig) -> int:
    interval = cfg.interval
    rng = np.random.default_rng(cfg.seed)
    points = []
    for k in range(args.count):
        atoms = args.atoms or int(rng.integers(1, cfg.n + 3))
        P = random_naming(cfg.n, interval, atoms, [cfg.seed, k], cfg.tol)
        points.append(evaluate(P))
    _write(io.format_points(interval, points), args.output)
    return EXIT_OK


def cmd_transform(args, cfg: RunConfig) -> int:
    curve = io.parse_curve(_read(args.curve))
    text = _read(args.input)
    if io.looks_like_naming(text):
        namings = io.parse_namings(text, cfg.tol)
        blocks = []
        for P in namings:
            pushed = push_naming(P, curve)
            rows = [f"{io.fmt(c)} " + " ".join(io.fmt(x) for x in p) for c, p in pushed]
            rows.append("sum " + " ".join(io.fmt(x) for x in combine(pushed)))
            blocks.append("\n".join(rows) + "\n")
        _write("\n".join(blocks), args.output)
        return EXIT_OK
    batch = io.parse_points(text)
    code, namings = EXIT_OK, []
    for k, w in enumerate(batch.points):
        try:
            namings.append(name_on_curve(w, curve, batch.interval, cfg.tol))
        except OutsideHull as exc:
            print(f"point {k + 1}: outside the hull of the curve: {exc}", file=sys.stderr)
            code = EXIT_OUTSIDE
    if namings:
        _write(io.format_namings(namings), args.output)
    return code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="momhull", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", default=None, help="output file (default stdout)")
    common.add_argument("--eps-t", type=float, default=None, help="same-point tolerance, relative to width")
    common.add_argument("--eps-c", type=float, default=None, help="zero-weight tolerance")
    common.add_argument("--eps-mem", type=float, default=None, help="membership weight clamp")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1, help="worker processes for point batches")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("name", parents=[common], help="canonical naming of each point in a point file")
    p.add_argument("points")
    p.add_argument("--allow-high-n", action="store_true", help="permit 12 < n <= 20")
    p.set_defaults(func=cmd_name)

    p = sub.add_parser("eval", parents=[common], help="evaluate namings to points")
    p.add_argument("naming")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("canon", parents=[common], help="canonical form of proper namings")
    p.add_argument("naming")
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("reduce", parents=[common], help="reduce namings of any size to canonical form")
    p.add_argument("naming")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("check-member", parents=[common], help="classify points against the hull")
    p.add_argument("points")
    p.add_argument("--oracle", action="store_true", help="cross-check with the grid LP")
    p.add_argument("--grid", type=int, default=2001)
    p.add_argument("--slack", type=float, default=1e-6)
    p.set_defaults(func=cmd_check_member)

    p = sub.add_parser("pv-det", parents=[common], help="pseudo-Vandermonde determinant")
    p.add_argument("n", type=int)
    p.add_argument("q", type=int)
    p.add_argument("nodes", type=float, nargs="*", help="q distinct nodes (default 0, 1, ..., q-1)")
    p.add_argument("--method", choices=("recursive", "lu", "both"), default="recursive")
    p.set_defaults(func=cmd_pv_det)

    p = sub.add_parser("sample", parents=[common], help="random hull points as a point file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t-min", type=float, default=0.0)
    p.add_argument("--t-max", type=float, default=1.0)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--atoms", type=int, default=None, help="atoms per generating naming (default random)")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("transform", parents=[common], help="push a naming through a curve, or name a point on it")
    p.add_argument("curve")
    p.add_argument("input", help="naming file (pushed) or point file (named)")
    p.set_defaults(func=cmd_transform)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        tol = tolerances_from(os.environ, args)
        cfg = RunConfig(
            n=getattr(args, "n", 1) if args.command == "sample" else 1,
            t_min=getattr(args, "t_min", 0.0),
            t_max=getattr(args, "t_max", 1.0),
            tol=tol,
            seed=args.seed,
            jobs=args.jobs,
        )
        return args.func(args, cfg)
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ValueError) as exc:
        if isinstance(exc, MomhullError):
            print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
            return EXIT_NUMERIC
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
