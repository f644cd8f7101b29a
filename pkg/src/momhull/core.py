"""Domain types for namings on the truncated moment curve ``t -> (t, t^2, ..., t^n)``.

A naming is an ordered convex combination of curve points. Everything here is
immutable; constructors validate eagerly, so a ``Naming`` that exists is valid.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidNaming, InvalidShape

MAX_N = 20


@dataclass(frozen=True)
class Tolerances:
    """Tolerance block shared by the predicates and solvers.

    ``rel_t`` is relative to the interval width; the others are absolute.
    """

    rel_t: float = 1e-9
    eps_c: float = 1e-12
    eps_sum: float = 1e-10
    eps_mem: float = 1e-9
    eps_eq: float = 1e-8

    def __post_init__(self):
        for name in ("rel_t", "eps_c", "eps_sum", "eps_mem", "eps_eq"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise ValueError(f"tolerance {name} must be positive, got {value!r}")


DEFAULT_TOL = Tolerances()


@dataclass(frozen=True)
class Interval:
    t_min: float
    t_max: float

    def __post_init__(self):
        lo, hi = float(self.t_min), float(self.t_max)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise InvalidNaming(f"interval endpoints must be finite: [{lo}, {hi}]")
        if not lo < hi:
            raise InvalidNaming(f"interval needs t_min < t_max, got [{lo}, {hi}]")
        object.__setattr__(self, "t_min", lo)
        object.__setattr__(self, "t_max", hi)

    @property
    def width(self) -> float:
        return self.t_max - self.t_min

    def eps_t(self, tol: Tolerances = DEFAULT_TOL) -> float:
        return tol.rel_t * self.width

    def power_bounds(self, k: int) -> tuple[float, float]:
        """Range of ``t**k`` over the interval."""
        lo, hi = self.t_min**k, self.t_max**k
        vals = [lo, hi]
        if k % 2 == 0 and self.t_min < 0 < self.t_max:
            vals.append(0.0)
        return min(vals), max(vals)


@dataclass(frozen=True, eq=False)
class MomentPoint:
    """A point ``(v_1, ..., v_n)``; the lifted coordinate ``v_0 = 1`` is implicit."""

    n: int
    v: np.ndarray

    def __post_init__(self):
        arr = np.array(self.v, dtype=float).reshape(-1)
        if self.n < 1:
            raise InvalidShape(f"n must be positive, got {self.n}")
        if arr.shape != (self.n,):
            raise InvalidShape(f"expected {self.n} components, got {arr.shape[0]}")
        if not np.all(np.isfinite(arr)):
            raise InvalidShape("moment point components must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "v", arr)

    @classmethod
    def of(cls, values: Sequence[float]) -> MomentPoint:
        values = list(values)
        return cls(len(values), values)

    def lifted(self) -> np.ndarray:
        """``(1, v_1, ..., v_n)``."""
        return np.concatenate(([1.0], self.v))

    def __eq__(self, other):
        if not isinstance(other, MomentPoint):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.v, other.v)

    def __hash__(self):
        return hash((self.n, self.v.tobytes()))


class Parity(enum.Enum):
    INTEGER = "integer"
    HALF = "half"

    @classmethod
    def for_n(cls, n: int) -> Parity:
        """Parity a proper naming must have: integer for odd n, half for even n."""
        return cls.INTEGER if n % 2 == 1 else cls.HALF


class Atom(tuple):
    """A weighted curve parameter ``(t, c)``."""

    __slots__ = ()

    def __new__(cls, t: float, c: float):
        return super().__new__(cls, (float(t), float(c)))

    @property
    def t(self) -> float:
        return self[0]

    @property
    def c(self) -> float:
        return self[1]

    def __repr__(self):
        return f"Atom(t={self[0]!r}, c={self[1]!r})"


@dataclass(frozen=True)
class Naming:
    interval: Interval
    n: int
    parity: Parity
    atoms: tuple[Atom, ...]
    tol: Tolerances = field(default=DEFAULT_TOL, compare=False, repr=False)

    def __post_init__(self):
        atoms = tuple(a if isinstance(a, Atom) else Atom(*a) for a in self.atoms)
        object.__setattr__(self, "atoms", atoms)
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise InvalidNaming(f"n must be a positive integer, got {self.n!r}")
        if self.n > MAX_N:
            raise InvalidNaming(f"n={self.n} exceeds the supported maximum {MAX_N}")
        object.__setattr__(self, "n", int(self.n))
        if not isinstance(self.parity, Parity):
            object.__setattr__(self, "parity", Parity(self.parity))
        if not atoms:
            raise InvalidNaming("a naming needs at least one atom")
        lo, hi = self.interval.t_min, self.interval.t_max
        prev = -math.inf
        for j, (t, c) in enumerate(atoms):
            if not (math.isfinite(t) and math.isfinite(c)):
                raise InvalidNaming(f"atom {j} is not finite: {(t, c)}")
            if not lo <= t <= hi:
                raise InvalidNaming(f"atom {j} has t={t!r} outside [{lo!r}, {hi!r}]")
            if not 0.0 <= c <= 1.0:
                raise InvalidNaming(f"atom {j} has weight c={c!r} outside [0, 1]")
            if t < prev:
                raise InvalidNaming("atoms must be sorted by t")
            prev = t
        total = math.fsum(a.c for a in atoms)
        if abs(total - 1.0) > self.tol.eps_sum:
            raise InvalidNaming(f"weights sum to {total!r}, not 1")
        if self.parity is Parity.HALF and atoms[0].t != lo:
            raise InvalidNaming("a half-integer naming must start exactly at t_min")

    @classmethod
    def build(
        cls,
        interval: Interval,
        n: int,
        pairs: Iterable[Sequence[float]],
        parity: Parity | str = Parity.INTEGER,
        tol: Tolerances = DEFAULT_TOL,
    ) -> Naming:
        """Stable-sort ``(t, c)`` pairs by t and validate.

        For half-integer parity the first atom's t is snapped to ``t_min`` when it
        lies within the same-point tolerance of it.
        """
        parity = Parity(parity)
        atoms = sorted((Atom(t, c) for t, c in pairs), key=lambda a: a.t)
        if parity is Parity.HALF and atoms:
            first = atoms[0]
            if abs(first.t - interval.t_min) <= interval.eps_t(tol):
                atoms[0] = Atom(interval.t_min, first.c)
        return cls(interval, n, parity, tuple(atoms), tol)

    def replace_atoms(self, atoms: Iterable[Sequence[float]]) -> Naming:
        return Naming(self.interval, self.n, self.parity, tuple(atoms), self.tol)

    @cached_property
    def ts(self) -> np.ndarray:
        return np.array([a.t for a in self.atoms])

    @cached_property
    def cs(self) -> np.ndarray:
        return np.array([a.c for a in self.atoms])

    def __len__(self):
        return len(self.atoms)

    @property
    def eps_t(self) -> float:
        return self.interval.eps_t(self.tol)


@dataclass(frozen=True)
class BoundaryReport:
    zero_coefficient_count: int
    adjacent_equal_count: int
    at_tmin: bool
    at_tmax: bool
    total_l: int


def lift(t: float, n: int) -> MomentPoint:
    """The curve point ``(t, t^2, ..., t^n)``."""
    if not math.isfinite(t) or n < 1:
        raise InvalidShape(f"lift needs finite t and n >= 1, got t={t!r}, n={n!r}")
    return MomentPoint(n, float(t) ** np.arange(1, n + 1))


def power_matrix(ts: np.ndarray, n: int, start: int = 1) -> np.ndarray:
    """Rows ``(t^start, ..., t^n)`` for each t."""
    return np.asarray(ts, dtype=float)[:, None] ** np.arange(start, n + 1)


def evaluate(naming: Naming) -> MomentPoint:
    naming = getattr(naming, "underlying", naming)
    return MomentPoint(naming.n, naming.cs @ power_matrix(naming.ts, naming.n))


def index(naming: Naming) -> Fraction:
    m = len(naming.atoms)
    return Fraction(m) if naming.parity is Parity.INTEGER else Fraction(2 * m - 1, 2)


def max_index(n: int) -> Fraction:
    return Fraction(n + 1, 2)


def is_proper(naming: Naming) -> bool:
    return naming.parity is Parity.for_n(naming.n) and index(naming) <= max_index(naming.n)


def _removable(naming: Naming, j: int) -> bool:
    return not (j == 0 and naming.parity is Parity.HALF)


def is_reducible(naming: Naming) -> bool:
    eps_t, eps_c = naming.eps_t, naming.tol.eps_c
    ts, cs = naming.ts, naming.cs
    if np.any(np.diff(ts) <= eps_t):
        return True
    return any(cs[j] <= eps_c and _removable(naming, j) for j in range(len(cs)))


def boundary_count(naming: Naming) -> BoundaryReport:
    eps_t, eps_c = naming.eps_t, naming.tol.eps_c
    zeros = int(np.sum(naming.cs <= eps_c))
    adjacent = int(np.sum(np.diff(naming.ts) <= eps_t))
    at_tmin = naming.ts[0] - naming.interval.t_min <= eps_t
    at_tmax = naming.interval.t_max - naming.ts[-1] <= eps_t
    total = zeros + adjacent + int(at_tmax)
    if naming.parity is Parity.INTEGER:
        total += int(at_tmin)
    return BoundaryReport(zeros, adjacent, bool(at_tmin), bool(at_tmax), total)
