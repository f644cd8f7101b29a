"""Direct moment solver: from a point of the hull to its canonical naming.

For odd ``n = 2m-1`` the canonical naming is the m-node Gauss rule of the
measure the point represents: the nodes are the roots of the monic degree-m
polynomial orthogonal to ``1, t, ..., t^(m-1)``. For even ``n = 2m`` one atom is
pinned at ``t_min`` and the remaining m nodes are the Gauss nodes of the
shifted measure ``(t - t_min) dmu`` (a Radau rule). Points on a face of the hull
give rank-deficient Hankel matrices and are solved with fewer nodes.

All linear algebra runs after mapping ``[t_min, t_max]`` onto ``[-1, 1]``.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.special import comb

from .core import (
    DEFAULT_TOL,
    MAX_N,
    Interval,
    MomentPoint,
    Naming,
    Parity,
    Tolerances,
)
from .errors import (
    ConditioningFailure,
    DegenerateNodes,
    InvalidShape,
    NonRealRoots,
    OutsideHull,
)
from .pvmat import lifted_vandermonde, solve_weights
from .reduction import CanonicalNaming, canonicalize

SOLVER_N_CAP = 12
RANK_RTOL = 1e-10
IMAG_TOL = 1e-8
NODE_SLACK = 1e-8  # in [-1, 1] coordinates
FIT_TIGHT = 1e-11
EPS_FIT = 1e-7


class Verdict(enum.Enum):
    INSIDE = "Inside"
    BOUNDARY_FACE = "BoundaryFace"
    OUTSIDE = "Outside"


@dataclass(frozen=True)
class MembershipVerdict:
    tag: Verdict
    rank: int
    certificate: CanonicalNaming | None = None
    reason: str = ""

    @property
    def in_hull(self) -> bool:
        return self.tag is not Verdict.OUTSIDE


def hankel(point: MomentPoint, m: int, shift: float | None = None) -> np.ndarray:
    """``m x m`` Hankel matrix of the lifted moments, optionally localized by ``t - shift``."""
    v = point.lifted()
    top = 2 * (m - 1) + (0 if shift is None else 1)
    if m < 1 or top > point.n:
        raise InvalidShape(f"Hankel of size {m} needs moments up to {top}, have {point.n}")
    idx = np.add.outer(np.arange(m), np.arange(m))
    if shift is None:
        return v[idx]
    return v[idx + 1] - shift * v[idx]


def _horner(coeffs, x):
    """Value and derivative of a low-to-high coefficient polynomial."""
    p, dp = 0.0, 0.0
    for a in reversed(coeffs):
        dp = dp * x + p
        p = p * x + a
    return p, dp


def _polish(coeffs, r, lo, hi):
    plo, _ = _horner(coeffs, lo)
    phi, _ = _horner(coeffs, hi)
    if plo == 0.0:
        return lo
    if phi == 0.0:
        return hi
    if (plo > 0) == (phi > 0):
        return r
    x = r
    for _ in range(50):
        p, dp = _horner(coeffs, x)
        if p == 0.0:
            return x
        if (p > 0) == (plo > 0):
            lo, plo = x, p
        else:
            hi = x
        step = p / dp if dp != 0.0 else math.inf
        nxt = x - step
        if not lo < nxt < hi:
            nxt = 0.5 * (lo + hi)
        if abs(nxt - x) <= 4e-16 * max(1.0, abs(x)):
            return nxt
        x = nxt
    return x


def orth_poly_roots(coeffs) -> np.ndarray:
    """Sorted real roots of a monic polynomial given low-to-high, leading 1 included.

    Companion-matrix eigenvalues, then a bracketed Newton/bisection polish.
    """
    coeffs = np.asarray(coeffs, dtype=float).reshape(-1)
    if len(coeffs) < 2:
        raise InvalidShape("polynomial must have degree >= 1")
    if coeffs[-1] == 0.0:
        raise InvalidShape("leading coefficient is zero")
    coeffs = coeffs / coeffs[-1]
    raw = np.polynomial.polynomial.polyroots(coeffs)
    if np.iscomplexobj(raw):
        if np.max(np.abs(raw.imag)) > IMAG_TOL * max(1.0, float(np.max(np.abs(raw)))):
            raise NonRealRoots(f"polynomial has complex roots: {raw}")
        raw = raw.real
    roots = np.sort(raw)
    c = coeffs.tolist()
    out = np.empty_like(roots)
    for i, r in enumerate(roots):
        h = 1e-6 * max(1.0, abs(r))
        if i > 0:
            h = min(h, 0.5 * (r - roots[i - 1]))
        if i + 1 < len(roots):
            h = min(h, 0.5 * (roots[i + 1] - r))
        out[i] = _polish(c, float(r), float(r - h), float(r + h)) if h > 0 else r
    return np.sort(out)


def _to_unit(point: MomentPoint, interval: Interval) -> np.ndarray:
    """Lifted moments of the image of the measure under ``t -> s in [-1, 1]``."""
    n = point.n
    alpha = 2.0 / interval.width
    beta = -(interval.t_min + interval.t_max) / interval.width
    k = np.arange(n + 1)
    T = comb(k[:, None], k[None, :]) * alpha ** k[None, :] * beta ** np.maximum(k[:, None] - k[None, :], 0)
    T = np.tril(T)
    return T @ point.lifted()


def _from_unit(s, interval: Interval) -> np.ndarray:
    t = interval.t_min + (np.asarray(s) + 1.0) * (0.5 * interval.width)
    return np.clip(t, interval.t_min, interval.t_max)


def _localized(mu: np.ndarray, poly, size: int) -> np.ndarray:
    """Hankel matrix of the moments of ``poly(s) dmu``, poly given low to high."""
    idx = np.add.outer(np.arange(size), np.arange(size))
    return sum(c * mu[idx + k] for k, c in enumerate(poly) if c != 0)


def hull_conditions(mu: np.ndarray, n: int) -> list[tuple[str, np.ndarray]]:
    """The Hankel matrices that are positive semidefinite exactly on the hull, in [-1, 1] coordinates."""
    if n % 2 == 1:
        m = (n + 1) // 2
        return [("(t - t_min)", _localized(mu, (1.0, 1.0), m)), ("(t_max - t)", _localized(mu, (1.0, -1.0), m))]
    m = n // 2
    out = [("moment", _localized(mu, (1.0,), m + 1))]
    if m >= 1:
        out.append(("(t - t_min)(t_max - t)", _localized(mu, (1.0, 0.0, -1.0), m)))
    return out


def _numerical_rank(H: np.ndarray) -> int:
    """Rank from pivoted Cholesky with drop tolerance ``RANK_RTOL * max(trace, 1)``.

    The moments are normalized to unit mass on [-1, 1], so a trace far below 1
    is roundoff rather than scale.
    """
    S = np.array(H, dtype=float)
    m = S.shape[0]
    drop = RANK_RTOL * max(float(np.trace(S)), 1.0)
    active = list(range(m))
    for k in range(m):
        d = np.array([S[i, i] for i in active])
        j = int(np.argmax(d))
        if d[j] <= drop:
            return k
        piv = active.pop(j)
        col = S[active, piv] / math.sqrt(S[piv, piv])
        sub = np.ix_(active, active)
        S[sub] = S[sub] - np.outer(col, col)
    return m


def _gauss(mu: np.ndarray, r: int):
    """r-node Gauss rule for normalized moments ``mu`` (``mu[0] == 1``)."""
    if r == 0:
        return np.empty(0), np.empty(0)
    idx = np.add.outer(np.arange(r), np.arange(r))
    H = mu[idx]
    a = np.linalg.solve(H, -mu[r : 2 * r])
    nodes = orth_poly_roots(np.append(a, 1.0))
    point = MomentPoint(max(1, 2 * r - 1), mu[1 : max(2, 2 * r)])
    try:
        weights = solve_weights(nodes, point)
    except ConditioningFailure:
        # Christoffel numbers 1 / (phi^T H^-1 phi)
        L = np.linalg.cholesky(H)
        phi = lifted_vandermonde(nodes, r)
        y = np.linalg.solve(L, phi)
        weights = 1.0 / np.sum(y * y, axis=0)
    return nodes, weights


def _unit_residual(nodes, weights, mu) -> float:
    return float(np.max(np.abs(lifted_vandermonde(nodes, len(mu)) @ weights - mu)))


def _candidate(mu: np.ndarray, even: bool, r: int, tol: Tolerances):
    """Nodes and weights in [-1, 1] coordinates for a given Hankel rank, or a reason it failed."""
    try:
        if not even:
            nodes, weights = _gauss(mu, r)
        else:
            w = mu[1:] + mu[:-1]  # moments of (s + 1) dmu
            if r == 0:
                nodes, weights = np.array([-1.0]), np.array([1.0])
            else:
                w0 = w[0]
                if w0 <= 0:
                    return None, "shifted mass is not positive"
                gn, gw = _gauss(w / w0, r)
                gap = gn + 1.0
                if np.any(gap <= NODE_SLACK):
                    return None, "shifted rule put a node at t_min"
                c = w0 * gw / gap
                nodes = np.concatenate(([-1.0], gn))
                weights = np.concatenate(([1.0 - np.sum(c)], c))
    except (np.linalg.LinAlgError, NonRealRoots, DegenerateNodes, ConditioningFailure) as exc:
        return None, f"{type(exc).__name__}: {exc}"
    if np.any(nodes < -1.0 - NODE_SLACK) or np.any(nodes > 1.0 + NODE_SLACK):
        return None, f"node outside interval (unit coordinates {nodes.min():.6g}..{nodes.max():.6g})"
    if np.any(weights < -tol.eps_mem):
        return None, f"negative weight {weights.min():.3g}"
    nodes = np.clip(nodes, -1.0, 1.0)
    weights = np.where(weights < 0, 0.0, weights)
    total = weights.sum()
    if not total > 0:
        return None, "weights vanish"
    weights = weights / total
    residual = _unit_residual(nodes, weights, mu)
    if not residual <= EPS_FIT:
        return None, f"moment residual {residual:.3g} exceeds {EPS_FIT:.0e}"
    return (nodes, weights, residual), ""


def principal_from_moments(
    point: MomentPoint,
    interval: Interval,
    tol: Tolerances = DEFAULT_TOL,
    allow_high_n: bool = False,
) -> CanonicalNaming:
    """Canonical naming of a hull point: index at most ``(n+1)/2``, t_min atom for even n.

    Raises ``OutsideHull`` when no valid certificate exists.
    """
    n = point.n
    if n > MAX_N:
        raise InvalidShape(f"n={n} exceeds {MAX_N}")
    if n > SOLVER_N_CAP:
        if not allow_high_n:
            raise InvalidShape(f"n={n} exceeds the solver cap {SOLVER_N_CAP}; pass allow_high_n")
        warnings.warn(f"moment solve at n={n} is poorly conditioned in double precision", RuntimeWarning)
    even = n % 2 == 0
    m = n // 2 if even else (n + 1) // 2
    mu = _to_unit(point, interval)

    for label, L in hull_conditions(mu, n):
        eig = float(np.linalg.eigvalsh(L)[0])
        if eig < -RANK_RTOL * max(abs(float(np.trace(L))), 1.0):
            raise OutsideHull(
                f"violates the {label} Hankel condition (min eigenvalue {eig:.3g})",
                {"check": label, "min_eigenvalue": eig, "hankel_size": L.shape[0]},
            )
    H = hankel(MomentPoint(n, mu[1:]), m, shift=-1.0) if even else hankel(MomentPoint(n, mu[1:]), m)
    r0 = _numerical_rank(H)

    reasons = {}
    best = None
    # detected rank first, then upward; lower ranks only as a fallback for near-vertex points
    for r in list(range(r0, m + 1)) + list(range(r0 - 1, -1, -1)):
        cand, why = _candidate(mu, even, r, tol)
        if cand is None:
            reasons[r] = why
            continue
        if cand[2] <= FIT_TIGHT:
            best = cand
            break
        if best is None or cand[2] < best[2]:
            best = cand
    if best is None:
        raise OutsideHull(
            "no valid naming: " + "; ".join(f"rank {r}: {w}" for r, w in reasons.items()),
            {"detected_rank": r0, "attempts": reasons},
        )
    nodes, weights, _ = best
    ts = _from_unit(nodes, interval)
    if even:
        ts[0] = interval.t_min
    pairs = list(zip(ts.tolist(), weights.tolist()))
    naming = Naming.build(interval, n, pairs, Parity.for_n(n), tol)
    return canonicalize(naming)


def _is_interior(cert: CanonicalNaming, tol: Tolerances) -> bool:
    naming = cert.underlying
    n, interval = naming.n, naming.interval
    eps_t = naming.eps_t
    full = n // 2 + 1 if n % 2 == 0 else (n + 1) // 2
    if len(naming.atoms) != full:
        return False
    if np.any(naming.cs <= tol.eps_mem):
        return False
    free = naming.ts[1:] if n % 2 == 0 else naming.ts
    return bool(free[0] - interval.t_min > eps_t and interval.t_max - free[-1] > eps_t)


def membership(point: MomentPoint, interval: Interval, tol: Tolerances = DEFAULT_TOL) -> MembershipVerdict:
    try:
        cert = principal_from_moments(point, interval, tol, allow_high_n=point.n > SOLVER_N_CAP)
    except OutsideHull as exc:
        return MembershipVerdict(Verdict.OUTSIDE, 0, None, str(exc))
    tag = Verdict.INSIDE if _is_interior(cert, tol) else Verdict.BOUNDARY_FACE
    return MembershipVerdict(tag, len(cert.underlying.atoms), cert)
