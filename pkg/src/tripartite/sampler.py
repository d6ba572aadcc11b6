"""Finite-shot simulation of joint +-1 outcomes.

Random numbers come from NumPy's PCG64 bit generator (``numpy.random.Generator``),
seeded per setting combination with ``SeedSequence([seed, index])`` where
``index`` is the canonical octet position.  Each combination therefore has its
own stream and combinations can be sampled in any order with identical results.
Outcomes are drawn by inverse CDF: uniforms in [0, 1) are located in the
cumulative distribution taken in canonical outcome order (bit 0 = +1).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .inequalities import SettingsHextet
from .quantum import BlochDirection, TripartiteState, apply_local, projector

NEGATIVE_DUST = -1e-15

# Product of the three outcomes for each outcome index (bit 0 = +1, bit 1 = -1).
OUTCOME_PRODUCT = np.array([(-1) ** (a + b + c) for a, b, c in product((0, 1), repeat=3)],
                           dtype=float)


@dataclass(frozen=True)
class ShotEstimate:
    mean: float
    std_error: float
    shots: int
    seed: int


def outcome_distribution(state: TripartiteState, d1: BlochDirection, d2: BlochDirection,
                         d3: BlochDirection) -> np.ndarray:
    """P(a, b, c) indexed by outcome bits, +1 -> 0 and -1 -> 1."""
    probs = np.empty(8)
    for idx, outcomes in enumerate(product((1, -1), repeat=3)):
        phi = state.tensor
        for slot, (d, s) in enumerate(zip((d1, d2, d3), outcomes)):
            phi = apply_local(phi, projector(d, s), slot)
        probs[idx] = np.vdot(state.tensor, phi).real
    probs[(probs < 0) & (probs >= NEGATIVE_DUST)] = 0.0
    if np.any(probs < 0):
        raise ArithmeticError(f"negative outcome probability {probs.min():.3g}")
    return probs / probs.sum()


def _sample_setting(probs: np.ndarray, shots: int, seed: int, index: int) -> ShotEstimate:
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, index])))
    cdf = np.cumsum(probs)
    cdf[-1] = 1.0
    outcomes = np.searchsorted(cdf, rng.random(shots), side="right")
    counts = np.bincount(outcomes, minlength=8)
    mean = float(counts @ OUTCOME_PRODUCT) / shots
    std_error = float(np.sqrt(max(1.0 - mean * mean, 0.0) / shots))
    return ShotEstimate(mean, std_error, shots, seed)


def sample_octet(state: TripartiteState, settings: SettingsHextet, shots_per_setting: int,
                 seed: int = 0) -> list[ShotEstimate]:
    if shots_per_setting < 1:
        raise ValueError("shots_per_setting must be at least 1")
    pairs = settings.pairs()
    estimates = []
    for index, (x, y, z) in enumerate(product((0, 1), repeat=3)):
        probs = outcome_distribution(state, pairs[0][x], pairs[1][y], pairs[2][z])
        estimates.append(_sample_setting(probs, shots_per_setting, seed, index))
    return estimates
