"""Brute-force oracles independent of the moment solver.

``lp_membership`` decides hull membership against a discretized curve with a
phase-1 simplex, ``random_naming`` generates test namings, and
``continuity_probe`` estimates how far canonical namings move under small
perturbations of the point.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_TOL,
    Interval,
    MomentPoint,
    Naming,
    Parity,
    Tolerances,
)
from .errors import InvalidShape, NotInterior, OracleFailure
from .principal import Verdict, membership


@dataclass(frozen=True)
class GridSpec:
    points: int = 2001
    slack: float = 1e-6

    def __post_init__(self):
        if self.points < 2:
            raise InvalidShape(f"grid needs at least 2 points, got {self.points}")
        if not self.slack > 0:
            raise InvalidShape(f"slack must be positive, got {self.slack}")

    def check(self, n: int) -> None:
        if self.points < n + 2:
            raise InvalidShape(f"grid of {self.points} points is too coarse for n={n}")


def phase_one(
    A: np.ndarray, b: np.ndarray, max_pivots: int | None = None, cost: np.ndarray | None = None
) -> tuple[float, np.ndarray]:
    """Minimize ``cost @ x`` plus the total artificial residual of ``A x = b, x >= 0``.

    With the default zero cost this is the classical phase 1: the optimum is 0
    exactly when the system is feasible. Dense tableau. Pricing is
    most-negative reduced cost until a run of degenerate pivots appears, then
    Bland's rule for the rest of the solve, so cycling cannot occur. Returns
    the optimal objective and ``x``.
    """
    A = np.array(A, dtype=float)
    b = np.array(b, dtype=float)
    rows, cols = A.shape
    c = np.zeros(cols) if cost is None else np.asarray(cost, dtype=float)
    if c.shape != (cols,) or np.any(c < 0):
        raise InvalidShape("cost must be a nonnegative vector with one entry per column")
    flip = b < 0
    A[flip] *= -1
    b[flip] *= -1
    T = np.hstack([A, np.eye(rows), b[:, None]])
    basis = list(range(cols, cols + rows))
    cost = np.zeros(cols + rows + 1)
    cost[:cols] = c - A.sum(axis=0)
    cost[-1] = -b.sum()
    eps = 1e-12
    if max_pivots is None:
        max_pivots = 50 * (rows + cols)
    bland, degenerate = False, 0
    for _ in range(max_pivots):
        improving = np.flatnonzero(cost[:-1] < -eps)
        if improving.size == 0:
            x = np.zeros(cols + rows)
            x[basis] = T[:, -1]
            return float(-cost[-1]), x[:cols]
        j = int(improving[0]) if bland else int(improving[np.argmin(cost[improving])])
        col = T[:, j]
        ok = np.flatnonzero(col > eps)
        if ok.size == 0:
            raise OracleFailure("phase-1 objective is bounded below; unbounded ray is impossible")
        ratios = T[ok, -1] / col[ok]
        rmin = ratios.min()
        ties = ok[ratios <= rmin + eps * max(1.0, abs(rmin))]
        i = int(min(ties, key=lambda r: basis[r]))
        if rmin <= eps:
            degenerate += 1
            bland = bland or degenerate > rows
        else:
            degenerate = 0
        T[i] /= T[i, j]
        others = np.arange(rows) != i
        T[others] -= np.outer(T[others, j], T[i])
        cost -= cost[j] * T[i]
        basis[i] = j
    raise OracleFailure(f"simplex exceeded {max_pivots} pivots")


def grid_matrix(n: int, interval: Interval, points: int) -> np.ndarray:
    ts = np.linspace(interval.t_min, interval.t_max, points)
    return ts[None, :] ** np.arange(n + 1)[:, None]


def lp_residual(point: MomentPoint, interval: Interval, grid: GridSpec = GridSpec()) -> float:
    """``min |A x - lift(v)|_1`` over convex weights ``x`` on the grid nodes."""
    grid.check(point.n)
    A = grid_matrix(point.n, interval, grid.points)
    rows, cols = A.shape
    I = np.eye(rows)
    cost = np.concatenate([np.zeros(cols), np.ones(2 * rows)])
    return phase_one(np.hstack([A, I, -I]), point.lifted(), cost=cost)[0]


def lp_membership(point: MomentPoint, interval: Interval, grid: GridSpec = GridSpec()) -> bool:
    return lp_residual(point, interval, grid) <= grid.slack


def boundary_band(n: int, interval: Interval, grid: GridSpec) -> float:
    """Per-component distance within which the grid hull and the true hull may disagree.

    Piecewise-linear interpolation of ``t^k`` on spacing h errs by at most
    ``h^2/8 * max|k(k-1) t^(k-2)|``.
    """
    h = interval.width / (grid.points - 1)
    bound = max(abs(interval.t_min), abs(interval.t_max))
    curvature = max([k * (k - 1) * bound ** (k - 2) for k in range(2, n + 1)] or [0.0])
    return grid.slack + h * h / 8.0 * curvature


def random_naming(n: int, interval: Interval, atom_count: int, seed, tol: Tolerances = DEFAULT_TOL) -> Naming:
    """Uniform parameters and flat-Dirichlet weights; even n gets a leading t_min atom."""
    if atom_count < 1:
        raise InvalidShape("atom_count must be at least 1")
    rng = np.random.default_rng(seed)
    ts = np.sort(rng.uniform(interval.t_min, interval.t_max, atom_count))
    parity = Parity.for_n(n)
    if parity is Parity.HALF:
        ts = np.concatenate(([interval.t_min], ts))
    cs = rng.dirichlet(np.ones(len(ts)))
    cs = cs / cs.sum()
    return Naming.build(interval, n, list(zip(ts.tolist(), cs.tolist())), parity, tol)


def naming_distance(a: Naming, b: Naming, max_distance: float) -> float:
    if len(a.atoms) != len(b.atoms):
        return max_distance
    return float(np.max(np.abs(a.ts - b.ts) + np.abs(a.cs - b.cs)))


def continuity_probe(
    point: MomentPoint,
    interval: Interval,
    radius: float,
    samples: int,
    seed,
    max_distance: float | None = None,
    tol: Tolerances = DEFAULT_TOL,
) -> float:
    """Largest canonical-naming displacement over ``samples`` perturbations of norm ``radius``.

    Perturbation directions depend only on the seed, so a larger radius probes
    the same directions further out. Perturbed points that leave the interior are
    replaced by fresh directions, drawing at most ``10 * samples`` in total.
    """
    base = membership(point, interval, tol)
    if base.tag is not Verdict.INSIDE:
        raise NotInterior(f"probe needs a strictly interior point, got {base.tag.value}")
    if radius == 0:
        return 0.0
    if max_distance is None:
        max_distance = interval.width + 1.0
    rng = np.random.default_rng(seed)
    ref = base.certificate.underlying
    worst, accepted = 0.0, 0
    for _ in range(10 * samples):
        if accepted == samples:
            break
        direction = rng.standard_normal(point.n)
        direction /= np.linalg.norm(direction)
        probe = MomentPoint(point.n, point.v + radius * direction)
        verdict = membership(probe, interval, tol)
        if verdict.tag is not Verdict.INSIDE:
            continue
        accepted += 1
        worst = max(worst, naming_distance(ref, verdict.certificate.underlying, max_distance))
    if accepted == 0:
        raise NotInterior("every perturbation left the interior; reduce the radius")
    return worst


def near_boundary(point: MomentPoint, interval: Interval, band: float, tol: Tolerances = DEFAULT_TOL) -> bool:
    """True when a shift of ``band`` along some coordinate axis changes the membership verdict.

    Sufficient for the point to lie within ``band`` of the hull boundary, so it
    never excuses a disagreement deep inside or far outside the hull.
    """
    inside = membership(point, interval, tol).in_hull
    for k in range(point.n):
        for sign in (1.0, -1.0):
            v = point.v.copy()
            v[k] += sign * band
            if membership(MomentPoint(point.n, v), interval, tol).in_hull != inside:
                return True
    return False


def oracle_check(
    point: MomentPoint, interval: Interval, grid: GridSpec = GridSpec(), tol: Tolerances = DEFAULT_TOL
) -> tuple[bool, bool, str]:
    """Compare ``membership`` with the grid LP: (solver verdict, LP verdict, status).

    Status is ``agree``, ``band`` for a disagreement within the grid-induced
    boundary band, or ``disagree``.
    """
    ours = membership(point, interval, tol).in_hull
    lp = lp_membership(point, interval, grid)
    if ours == lp:
        return ours, lp, "agree"
    if near_boundary(point, interval, boundary_band(point.n, interval, grid), tol):
        return ours, lp, "band"
    return ours, lp, "disagree"


def _free_indices(naming: Naming):
    """Atoms whose t is free, atoms whose c is free, and the atom whose weight is 1 - sum."""
    m = len(naming.atoms)
    if naming.parity is Parity.HALF:
        return np.arange(1, m), np.arange(1, m), 0
    return np.arange(m), np.arange(m - 1), m - 1


def naming_jacobian(naming: Naming) -> np.ndarray:
    """Jacobian of ``(free t's, free c's) -> evaluate``; square for a strict-interior canonical naming."""
    k = np.arange(1, naming.n + 1)[:, None]
    ts, cs = naming.ts, naming.cs
    t_idx, c_idx, dep = _free_indices(naming)
    dt = cs[t_idx][None, :] * k * ts[t_idx][None, :] ** (k - 1)
    dc = ts[c_idx][None, :] ** k - ts[dep] ** k
    return np.hstack([dt, dc])


def linearized_probe(
    point: MomentPoint, interval: Interval, radius: float, samples: int, seed, tol: Tolerances = DEFAULT_TOL
) -> float:
    """First-order prediction of ``continuity_probe`` along the same seeded directions
    (assumes every perturbation stays inside, as it does for small radii)."""
    base = membership(point, interval, tol).certificate.underlying
    J = naming_jacobian(base)
    t_idx, c_idx, dep = _free_indices(base)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        d = rng.standard_normal(point.n)
        d /= np.linalg.norm(d)
        step = np.linalg.solve(J, radius * d)
        dts = np.zeros(len(base.atoms))
        dcs = np.zeros(len(base.atoms))
        dts[t_idx] = step[: len(t_idx)]
        dcs[c_idx] = step[len(t_idx) :]
        dcs[dep] = -np.sum(dcs[c_idx])
        worst = max(worst, float(np.max(np.abs(dts) + np.abs(dcs))))
    return worst
