"""Dense phase-1 simplex for small feasibility problems.

Decides whether ``{x >= 0 : A x = b}`` is nonempty.  The basis is refactored
with a dense solve at every pivot (problems here have ~9 rows), Bland's rule
prevents cycling, and an infeasible outcome comes with a Farkas vector ``y``
satisfying ``y @ A <= 0`` and ``y @ b > 0``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericalFailure

PIVOT_TOL = 1e-11
MAX_PIVOTS = 10_000


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    x: np.ndarray | None
    farkas: np.ndarray | None
    infeasibility: float
    pivots: int


def phase_one(A, b, tolerance: float = 1e-9, max_pivots: int = MAX_PIVOTS) -> FeasibilityResult:
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    m, n = A.shape
    signs = np.where(b < 0, -1.0, 1.0)
    A = A * signs[:, None]
    b = b * signs

    full = np.hstack([A, np.eye(m)])
    cost = np.concatenate([np.zeros(n), np.ones(m)])
    basis = list(range(n, n + m))

    for pivots in range(max_pivots + 1):
        B = full[:, basis]
        x_b = np.linalg.solve(B, b)
        y = np.linalg.solve(B.T, cost[basis])
        reduced = cost - y @ full
        reduced[basis] = 0.0

        entering = next((j for j in range(n + m) if reduced[j] < -PIVOT_TOL), None)
        if entering is None:
            break
        if pivots == max_pivots:
            raise NumericalFailure(f"simplex did not terminate within {max_pivots} pivots")

        u = np.linalg.solve(B, full[:, entering])
        leave_row, best_ratio = None, np.inf
        for i in range(m):
            if u[i] <= PIVOT_TOL:
                continue
            ratio = max(x_b[i], 0.0) / u[i]
            if ratio < best_ratio - PIVOT_TOL or (
                    abs(ratio - best_ratio) <= PIVOT_TOL and basis[i] < basis[leave_row]):
                leave_row, best_ratio = i, ratio
        if leave_row is None:
            # Phase-1 objective is bounded below by zero.
            raise NumericalFailure("phase-1 problem reported unbounded")
        basis[leave_row] = entering

    infeasibility = float(cost[basis] @ x_b)
    if infeasibility <= tolerance:
        x = np.zeros(n)
        for row, var in enumerate(basis):
            if var < n:
                x[var] = max(x_b[row], 0.0)
        return FeasibilityResult(True, x, None, infeasibility, pivots)
    return FeasibilityResult(False, None, y * signs, infeasibility, pivots)
