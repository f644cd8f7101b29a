"""Namings on polynomial curves ``t -> A (1, t, ..., t^n)``.

Such a curve is a linear image of the moment curve, so its hull points are
named by naming the preimage on the moment curve and pushing the atoms forward.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_TOL, Interval, MomentPoint, Tolerances
from .errors import DomainMismatch, InvalidShape, NotInvertible
from .principal import principal_from_moments
from .reduction import CanonicalNaming

INVERT_COND_LIMIT = 1e12


@dataclass(frozen=True, eq=False)
class PolyCurve:
    """Row i holds the coefficients ``a_i0 .. a_in`` of component i."""

    n: int
    coeff: np.ndarray

    def __post_init__(self):
        A = np.array(self.coeff, dtype=float)
        if A.shape != (self.n, self.n + 1):
            raise InvalidShape(f"curve coefficients must be {self.n}x{self.n + 1}, got {A.shape}")
        if not np.all(np.isfinite(A)):
            raise InvalidShape("curve coefficients must be finite")
        A.setflags(write=False)
        object.__setattr__(self, "coeff", A)

    @classmethod
    def identity(cls, n: int) -> PolyCurve:
        return cls(n, np.hstack([np.zeros((n, 1)), np.eye(n)]))

    @property
    def linear(self) -> np.ndarray:
        return self.coeff[:, 1:]

    @property
    def constant(self) -> np.ndarray:
        return self.coeff[:, 0]

    def at(self, t) -> np.ndarray:
        """Curve points for an array of parameters, one row per parameter."""
        t = np.atleast_1d(np.asarray(t, dtype=float))
        return (t[:, None] ** np.arange(self.n + 1)) @ self.coeff.T


def push_naming(naming, curve: PolyCurve) -> list[tuple[float, np.ndarray]]:
    if isinstance(naming, CanonicalNaming):
        naming = naming.underlying
    if curve.n != naming.n:
        raise DomainMismatch(f"curve has n={curve.n}, naming has n={naming.n}")
    points = curve.at(naming.ts)
    return [(a.c, points[j]) for j, a in enumerate(naming.atoms)]


def combine(pushed) -> np.ndarray:
    """Weighted sum of pushed atoms."""
    return sum(c * p for c, p in pushed)


def pull_point(w: MomentPoint, curve: PolyCurve) -> MomentPoint:
    """Moment-curve point v with ``A_lin v + a_const = w``."""
    if curve.n != w.n:
        raise DomainMismatch(f"curve has n={curve.n}, point has n={w.n}")
    L = curve.linear
    cond = np.linalg.cond(L)
    if not np.isfinite(cond) or cond > INVERT_COND_LIMIT:
        raise NotInvertible(f"linear part of the curve is singular (condition {cond:.3g})")
    return MomentPoint(w.n, np.linalg.solve(L, w.v - curve.constant))


def name_on_curve(
    w: MomentPoint, curve: PolyCurve, interval: Interval, tol: Tolerances = DEFAULT_TOL
) -> CanonicalNaming:
    """Canonical naming of the preimage; push it through ``curve`` to name ``w``."""
    return principal_from_moments(pull_point(w, curve), interval, tol)


def random_curve(n: int, seed, cond_max: float = 10.0) -> PolyCurve:
    """Random curve whose linear part has condition number at most ``cond_max``."""
    rng = np.random.default_rng(seed)
    U, _ = np.linalg.qr(rng.standard_normal((n, n)))
    V, _ = np.linalg.qr(rng.standard_normal((n, n)))
    s = np.exp(rng.uniform(0.0, np.log(cond_max), n))
    L = U @ np.diag(s) @ V.T
    b = rng.uniform(-1.0, 1.0, n)
    return PolyCurve(n, np.hstack([b[:, None], L]))
