"""Pseudo-Vandermonde matrices and Vandermonde weight solves.

A pseudo-Vandermonde matrix of size ``n+1`` on nodes ``u_1..u_q`` has the
Vandermonde columns ``(1, u_j, ..., u_j^n)`` for every node followed by the
derivative columns ``(0, 1, 2u_j, ..., n u_j^(n-1))`` of the first ``n+1-q``
nodes. It is nonsingular whenever the nodes are pairwise distinct.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import MAX_N, MomentPoint
from .errors import ConditioningFailure, DegenerateNodes, InvalidShape

COND_LIMIT = 1e12
NODE_RTOL = 1e-9


@dataclass(frozen=True, eq=False)
class PVMatrix:
    n: int
    q: int
    nodes: np.ndarray

    def __post_init__(self):
        nodes = np.array(self.nodes, dtype=float).reshape(-1)
        nodes.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        n, q = int(self.n), int(self.q)
        if n < 0 or n > MAX_N:
            raise InvalidShape(f"n must be in [0, {MAX_N}], got {n}")
        if not (n + 1 <= 2 * q and q <= n + 1):
            raise InvalidShape(f"q={q} outside [(n+1)/2, n+1] for n={n}")
        if nodes.shape != (q,):
            raise InvalidShape(f"expected {q} nodes, got {nodes.shape[0]}")
        if not np.all(np.isfinite(nodes)):
            raise InvalidShape("nodes must be finite")

    @property
    def n_derivative(self) -> int:
        return self.n + 1 - self.q


def build(spec: PVMatrix) -> np.ndarray:
    n, p = spec.n, spec.n_derivative
    k = np.arange(n + 1)
    vander = spec.nodes[None, :] ** k[:, None]
    deriv = np.zeros((n + 1, p))
    if p:
        u = spec.nodes[:p]
        deriv[1:] = k[1:, None] * u[None, :] ** (k[1:, None] - 1)
    return np.hstack([vander, deriv])


def _check_distinct(nodes: np.ndarray) -> None:
    if len(nodes) < 2:
        return
    s = np.sort(nodes)
    scale = max(1.0, float(s[-1] - s[0]))
    gaps = np.diff(s)
    if np.min(gaps) <= NODE_RTOL * scale:
        raise DegenerateNodes(f"nodes are not pairwise distinct (min gap {np.min(gaps):.3g})")


def det_recursive(spec: PVMatrix) -> float:
    """Determinant by repeated first-column elimination.

    Each round subtracts ``u_1`` times every row from the row below, expands
    along the first column, divides the remaining Vandermonde columns and the
    remaining derivative columns by ``u_j - u_1`` and lands on a pseudo-Vandermonde
    matrix one size smaller over the nodes ``(u_2, ..., u_q, u_1)`` (``u_1``
    dropped when there are no derivative columns). The divided-out factors are
    accumulated so the returned value is the actual determinant.
    """
    _check_distinct(spec.nodes)
    n, q = spec.n, spec.q
    nodes = list(spec.nodes)
    det = 1.0
    while n > 0:
        p = n + 1 - q
        u1 = nodes[0]
        det *= np.prod([u - u1 for u in nodes[1:q]])
        det *= np.prod([u - u1 for u in nodes[1:p]])
        if p >= 1:
            nodes = nodes[1:] + [u1]
        else:
            nodes = nodes[1:]
            q -= 1
        n -= 1
    return float(det)


def det_lu(spec: PVMatrix) -> float:
    # LAPACK getrf, i.e. partially pivoted elimination
    return float(np.linalg.det(build(spec)))


def lifted_vandermonde(nodes: np.ndarray, rows: int) -> np.ndarray:
    """``rows x len(nodes)`` matrix with entry ``(k, j) = nodes[j]**k``."""
    nodes = np.asarray(nodes, dtype=float)
    return nodes[None, :] ** np.arange(rows)[:, None]


def solve_weights(nodes, point: MomentPoint) -> np.ndarray:
    """Weights ``c`` with ``sum_j c_j t_j^k = v_k`` for ``k = 0..len(nodes)-1``."""
    nodes = np.asarray(nodes, dtype=float).reshape(-1)
    m = len(nodes)
    if m < 1 or m > point.n + 1:
        raise InvalidShape(f"need 1..{point.n + 1} nodes, got {m}")
    _check_distinct(nodes)
    A = lifted_vandermonde(nodes, m)
    cond = np.linalg.cond(A)
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise ConditioningFailure(f"Vandermonde condition estimate {cond:.3g} exceeds {COND_LIMIT:.0e}")
    return np.linalg.solve(A, point.lifted()[:m])
