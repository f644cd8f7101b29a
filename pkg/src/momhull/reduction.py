"""Simplification, canonical forms and equivalence of namings.

A naming is reducible when two adjacent atoms share a point or a removable atom
has zero weight (the pinned ``t_min`` atom of a half-integer naming is never
removable). Removing such features one at a time ends at the canonical form,
which is unique for each hull point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    Atom,
    Naming,
    Parity,
    evaluate,
    index,
    is_reducible,
    max_index,
)
from .errors import (
    DomainMismatch,
    NotProper,
    NotReducible,
    ParityMismatch,
    ReductionStalled,
)


@dataclass(frozen=True)
class CanonicalNaming:
    underlying: Naming

    def __post_init__(self):
        P = self.underlying
        if is_reducible(P):
            raise NotReducible("a canonical naming cannot be reducible")
        if P.parity is not Parity.for_n(P.n):
            raise ParityMismatch(f"n={P.n} needs {Parity.for_n(P.n).value} parity")
        if index(P) > max_index(P.n):
            raise NotProper(f"index {index(P)} exceeds {max_index(P.n)}")

    @property
    def atoms(self):
        return self.underlying.atoms

    @property
    def n(self) -> int:
        return self.underlying.n

    @property
    def interval(self):
        return self.underlying.interval


def _as_naming(P) -> Naming:
    return P.underlying if isinstance(P, CanonicalNaming) else P


def simplify_once(P: Naming) -> Naming:
    """Remove the first reducible feature by atom index: merge a same-point pair
    (keeping the first atom's t) or drop a zero-weight atom."""
    P = _as_naming(P)
    atoms = list(P.atoms)
    eps_t, eps_c = P.eps_t, P.tol.eps_c
    for j, (t, c) in enumerate(atoms):
        if c <= eps_c and not (j == 0 and P.parity is Parity.HALF):
            return P.replace_atoms(atoms[:j] + atoms[j + 1 :])
        if j + 1 < len(atoms) and atoms[j + 1].t - t <= eps_t:
            merged = Atom(t, c + atoms[j + 1].c)
            return P.replace_atoms(atoms[:j] + [merged] + atoms[j + 2 :])
    raise NotReducible("naming has no adjacent equal points and no removable zero weight")


def _simplify_all(P: Naming) -> Naming:
    while is_reducible(P):
        P = simplify_once(P)
    return P


def canonicalize(P) -> CanonicalNaming:
    if isinstance(P, CanonicalNaming):
        return P
    if P.parity is not Parity.for_n(P.n):
        raise ParityMismatch(f"n={P.n} needs {Parity.for_n(P.n).value} parity, got {P.parity.value}")
    P = _simplify_all(P)
    if index(P) > max_index(P.n):
        raise NotProper(f"index {index(P)} exceeds {max_index(P.n)}; use reduce_to_principal")
    return CanonicalNaming(P)


def _canonical_form(P: Naming) -> CanonicalNaming:
    if P.parity is not Parity.for_n(P.n):
        raise ParityMismatch(f"n={P.n} needs {Parity.for_n(P.n).value} parity, got {P.parity.value}")
    P = _simplify_all(P)
    if index(P) > max_index(P.n):
        return reduce_to_principal(P)
    return CanonicalNaming(P)


def equivalent(P1, P2) -> bool:
    """True when both correct-parity namings share a canonical form."""
    P1, P2 = _as_naming(P1), _as_naming(P2)
    if P1.n != P2.n or P1.interval != P2.interval:
        raise DomainMismatch("namings live on different curves")
    A, B = _canonical_form(P1).underlying, _canonical_form(P2).underlying
    if len(A) != len(B):
        return False
    return bool(
        np.all(np.abs(A.ts - B.ts) <= A.eps_t) and np.all(np.abs(A.cs - B.cs) <= A.tol.eps_eq)
    )


def _renormalized(pairs):
    pairs = list(pairs)
    total = math.fsum(c for _, c in pairs)
    return [Atom(t, c / total) for t, c in pairs]


def caratheodory_linear_reduce(P: Naming) -> Naming:
    """Prune to at most ``n+1`` atoms by moving weights along null vectors of
    the lifted node matrix; the ``t_min`` atom of a half-integer naming is kept."""
    P = _as_naming(P)
    n = P.n
    if len(P.atoms) <= n + 1:
        return P
    lo, width = P.interval.t_min, P.interval.width
    ts, cs = P.ts.copy(), P.cs.copy()
    pinned = P.parity is Parity.HALF
    while len(cs) > n + 1:
        s = 2.0 * (ts - lo) / width - 1.0
        A = s[None, :] ** np.arange(n + 1)[:, None]
        d = np.linalg.svd(A)[2][-1]
        tiny = 1e-14 * np.max(np.abs(d))
        best = None
        for dd in (d, -d):
            pos = np.flatnonzero(dd > tiny)
            ratios = cs[pos] / dd[pos]
            theta = float(np.min(ratios))
            hit = pos[ratios <= theta * (1 + 1e-12) + 1e-300]
            removable = [int(j) for j in hit if not (pinned and j == 0)]
            if not removable:
                continue
            key = (theta, removable[0])
            if best is None or key < best[0]:
                best = (key, dd, hit, removable[0])
        (theta, _), dd, hit, drop = best
        cs = cs - theta * dd
        cs[hit] = 0.0
        cs[cs < 0] = 0.0
        keep = np.arange(len(cs)) != drop
        ts, cs = ts[keep], cs[keep]
    return P.replace_atoms(_renormalized(zip(ts.tolist(), cs.tolist())))


def reduce_to_principal(P) -> CanonicalNaming:
    """Canonical naming of the point named by ``P``, however many atoms ``P`` has.

    The first ``Q`` atoms are rescaled into a naming of their own, re-solved
    directly into at most ``Q-1`` atoms, rescaled back and spliced in front of
    the rest; repeated until the index is at most ``(n+1)/2``.
    """
    from .principal import principal_from_moments

    P = _as_naming(P)
    n = P.n
    target = max_index(n)
    want = Parity.for_n(n)
    if P.parity is not want:
        if want is Parity.HALF:
            # zero-weight t_min atom in front turns an integer naming into a half-integer one
            P = Naming(
                P.interval, n, Parity.HALF, (Atom(P.interval.t_min, 0.0),) + P.atoms, P.tol
            )
        else:
            P = Naming(P.interval, n, Parity.INTEGER, P.atoms, P.tol)
    P = _simplify_all(P)
    Q = (n + 3) // 2 if n % 2 == 1 else (n + 4) // 2
    limit = 4 * len(P.atoms)
    steps = 0
    while index(P) > target:
        steps += 1
        if steps > limit:
            raise ReductionStalled(f"no progress after {limit} reduction steps")
        head, tail = P.atoms[:Q], P.atoms[Q:]
        mass = math.fsum(a.c for a in head)
        if mass <= 0:
            new_head = [Atom(P.interval.t_min, 0.0)] if P.parity is Parity.HALF else []
        else:
            sub = P.replace_atoms(_renormalized([(a.t, a.c / mass) for a in head]))
            cert = principal_from_moments(evaluate(sub), P.interval, P.tol)
            new_head = [Atom(a.t, a.c * mass) for a in cert.atoms]
        spliced = sorted(new_head + list(tail), key=lambda a: a.t)
        P = _simplify_all(P.replace_atoms(_renormalized(spliced)))
    return canonicalize(P)
