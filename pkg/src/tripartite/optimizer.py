"""Multi-start Nelder-Mead maximization of |M|, |M'| or |S_V| over angles."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import NonSmoothPoint
from .inequalities import (MERMIN_M, MERMIN_M_PRIME, SVETLICHNY, InequalityReport,
                           SettingsHextet, classify, octet_array, octet_from_settings)
from .quantum import TripartiteState, direction

TWO_PI = 2 * np.pi
CONVERGENCE_DIAMETER = 1e-10
DEFAULT_RESTARTS = 64
DEFAULT_SEED = 0


class Objective(str, Enum):
    ABS_M = "m"
    ABS_M_PRIME = "mprime"
    ABS_SV = "sv"

    @property
    def coefficients(self) -> np.ndarray:
        return {Objective.ABS_M: MERMIN_M, Objective.ABS_M_PRIME: MERMIN_M_PRIME,
                Objective.ABS_SV: SVETLICHNY}[self]


class Parameterization(str, Enum):
    XY_PLANAR = "xy"
    XZ_PLANAR = "xz"
    XZ_SYMMETRIC = "xz-symmetric"
    FULL = "full"

    @property
    def dimension(self) -> int:
        return {"xy": 6, "xz": 6, "xz-symmetric": 2, "full": 12}[self.value]

    def polar_azimuth(self, angles) -> tuple[np.ndarray, np.ndarray]:
        """Polar and azimuth angles of the six directions (A, A', B, B', C, C')."""
        angles = np.asarray(angles, dtype=float)
        if angles.shape != (self.dimension,):
            raise ValueError(f"{self.value} takes {self.dimension} angles, got {angles.size}")
        if self is Parameterization.XY_PLANAR:
            return np.full(6, np.pi / 2), angles
        if self is Parameterization.XZ_PLANAR:
            return angles, np.zeros(6)
        if self is Parameterization.XZ_SYMMETRIC:
            return np.tile(angles, 3), np.zeros(6)
        return angles[0::2], angles[1::2]

    def settings(self, angles) -> SettingsHextet:
        polar, azimuth = self.polar_azimuth(angles)
        return SettingsHextet(*(direction(t, p) for t, p in zip(polar, azimuth)))


def _operators(polar: np.ndarray, azimuth: np.ndarray) -> np.ndarray:
    """Stacked spin operators, shape (6, 2, 2)."""
    st = np.sin(polar)
    nz = np.cos(polar)
    off = st * np.exp(1j * azimuth)
    ops = np.empty((6, 2, 2), dtype=complex)
    ops[:, 0, 0] = nz
    ops[:, 1, 1] = -nz
    ops[:, 0, 1] = off.conj()
    ops[:, 1, 0] = off
    return ops


def objective_value(state: TripartiteState, objective: Objective, param: Parameterization,
                    angles) -> float:
    """Signed value of the objective's linear combination at ``angles``."""
    ops = _operators(*param.polar_azimuth(angles))
    octet = octet_array(state, ops[0:2], ops[2:4], ops[4:6])
    return float(objective.coefficients @ octet)


@dataclass(frozen=True)
class OptimizationResult:
    best_value: float
    best_angles: np.ndarray
    best_settings: SettingsHextet
    report: InequalityReport
    restarts_used: int
    converged: bool


def nelder_mead(func, x0, step: float = 0.5, xtol: float = CONVERGENCE_DIAMETER,
                max_evals: int = 20_000) -> tuple[np.ndarray, float, bool]:
    """Minimize ``func`` from ``x0``.

    Returns ``(x, f(x), converged)`` with ``converged`` meaning the simplex
    shrank below ``xtol`` in diameter before the evaluation budget ran out.
    """
    dim = len(x0)
    simplex = np.vstack([x0, x0 + step * np.eye(dim)])
    values = np.array([func(p) for p in simplex])
    evals = dim + 1
    converged = False
    while evals < max_evals:
        order = np.argsort(values, kind="stable")
        simplex, values = simplex[order], values[order]
        if np.max(np.linalg.norm(simplex[1:] - simplex[0], axis=1)) < xtol:
            converged = True
            break
        centroid = simplex[:-1].mean(axis=0)
        worst = simplex[-1]

        reflected = centroid + (centroid - worst)
        f_r = func(reflected)
        evals += 1
        if f_r < values[0]:
            expanded = centroid + 2.0 * (centroid - worst)
            f_e = func(expanded)
            evals += 1
            if f_e < f_r:
                simplex[-1], values[-1] = expanded, f_e
            else:
                simplex[-1], values[-1] = reflected, f_r
            continue
        if f_r < values[-2]:
            simplex[-1], values[-1] = reflected, f_r
            continue
        if f_r < values[-1]:
            contracted = centroid + 0.5 * (reflected - centroid)
        else:
            contracted = centroid + 0.5 * (worst - centroid)
        f_c = func(contracted)
        evals += 1
        if f_c < min(f_r, values[-1]):
            simplex[-1], values[-1] = contracted, f_c
            continue
        # Shrink toward the best vertex.
        simplex[1:] = simplex[0] + 0.5 * (simplex[1:] - simplex[0])
        values[1:] = [func(p) for p in simplex[1:]]
        evals += dim
    best = int(np.argmin(values))
    return simplex[best], float(values[best]), converged


def starting_points(dimension: int, restarts: int, seed: int) -> np.ndarray:
    """Restart ``k`` always gets the same start for a given seed."""
    rng = np.random.default_rng(seed)
    return rng.uniform(0.0, TWO_PI, size=(restarts, dimension))


def optimize(state: TripartiteState, objective: Objective | str,
             param: Parameterization | str, restarts: int = DEFAULT_RESTARTS,
             seed: int = DEFAULT_SEED) -> OptimizationResult:
    objective, param = Objective(objective), Parameterization(param)
    if restarts < 1:
        raise ValueError("restarts must be at least 1")

    def loss(angles):
        return -abs(objective_value(state, objective, param, angles))

    best = None
    for start in starting_points(param.dimension, restarts, seed):
        x, f, ok = nelder_mead(loss, start)
        # Strict comparison: the lowest restart index wins ties.
        if best is None or -f > best[1]:
            best = (x, -f, ok)

    angles = np.mod(best[0], TWO_PI)
    settings = param.settings(angles)
    report = classify(octet_from_settings(state, settings))
    value = abs(objective_value(state, objective, param, angles))
    return OptimizationResult(value, angles, settings, report, restarts, best[2])


def numerical_gradient(state: TripartiteState, objective: Objective | str,
                       param: Parameterization | str, point, step: float = 1e-5) -> np.ndarray:
    """Central-difference gradient of the absolute objective."""
    objective, param = Objective(objective), Parameterization(param)
    point = np.asarray(point, dtype=float)

    def f(p):
        return abs(objective_value(state, objective, param, p))

    grad = np.empty_like(point)
    for i in range(point.size):
        e = np.zeros_like(point)
        e[i] = step
        grad[i] = (f(point + e) - f(point - e)) / (2 * step)
    return grad


def finite_difference_check(state: TripartiteState, objective: Objective | str,
                            param: Parameterization | str, point,
                            direction_vector=None, steps: tuple[float, float] = (1e-4, 1e-5)) -> float:
    """Richardson-style consistency of central differences at two step sizes.

    Returns ``max |g(h1) - g(h2)| / (1 - (h2/h1)**2)``, an estimate of the
    O(h1**2) truncation error of the coarse derivative.  With
    ``direction_vector`` only that directional derivative is checked.
    """
    objective, param = Objective(objective), Parameterization(param)
    point = np.asarray(point, dtype=float)
    value = objective_value(state, objective, param, point)
    if abs(value) <= 1e-6:
        raise NonSmoothPoint(f"|objective| = {abs(value):.3g} is at the kink of the absolute value")

    def f(p):
        return abs(objective_value(state, objective, param, p))

    if direction_vector is None:
        directions = np.eye(point.size)
    else:
        directions = np.asarray(direction_vector, dtype=float).reshape(1, point.size)

    h1, h2 = steps
    worst = 0.0
    for d in directions:
        g1 = (f(point + h1 * d) - f(point - h1 * d)) / (2 * h1)
        g2 = (f(point + h2 * d) - f(point - h2 * d)) / (2 * h2)
        worst = max(worst, abs(g1 - g2) / (1 - (h2 / h1) ** 2))
    return worst
