"""Correlation octets and the Mermin / Svetlichny combinations.

Octet entries are indexed by setting bits ``(x, y, z)`` in binary order,
with bit 0 selecting the unprimed observable of a party and bit 1 the primed
one::

    E(ABC), E(ABC'), E(AB'C), E(AB'C'), E(A'BC), E(A'BC'), E(A'B'C), E(A'B'C')
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .quantum import BlochDirection, TripartiteState

THRESHOLD_TOL = 1e-9
LHV_BOUND = 2.0
ENTANGLEMENT_BOUND = 2.0 * 2.0 ** 0.5
HYBRID_BOUND = 4.0

LABELS = tuple(
    "E(" + "".join(p + ("'" if bit else "") for p, bit in zip("ABC", bits)) + ")"
    for bits in product((0, 1), repeat=3)
)
SHORT_LABELS = tuple(
    "".join(p.lower() if bit else p for p, bit in zip("ABC", bits))
    for bits in product((0, 1), repeat=3)
)

# Coefficient vectors over the canonical octet order.
MERMIN_M = np.array([0, 1, 1, 0, 1, 0, 0, -1], dtype=float)
MERMIN_M_PRIME = np.array([1, 0, 0, -1, 0, -1, -1, 0], dtype=float)
SVETLICHNY = np.array([1, 1, 1, -1, 1, -1, -1, -1], dtype=float)


@dataclass(frozen=True)
class SettingsHextet:
    a: BlochDirection
    a_prime: BlochDirection
    b: BlochDirection
    b_prime: BlochDirection
    c: BlochDirection
    c_prime: BlochDirection

    def pairs(self) -> tuple[tuple[BlochDirection, BlochDirection], ...]:
        """(unprimed, primed) direction pair for each party."""
        return ((self.a, self.a_prime), (self.b, self.b_prime), (self.c, self.c_prime))

    def swapped(self) -> "SettingsHextet":
        """Primed and unprimed observables exchanged for every party."""
        return SettingsHextet(self.a_prime, self.a, self.b_prime, self.b,
                              self.c_prime, self.c)

    def directions(self) -> tuple[BlochDirection, ...]:
        return (self.a, self.a_prime, self.b, self.b_prime, self.c, self.c_prime)


@dataclass(frozen=True, eq=False)
class CorrelationOctet:
    e: np.ndarray

    def __post_init__(self):
        vec = np.asarray(self.e, dtype=float).reshape(-1)
        if vec.shape != (8,):
            raise ValueError(f"an octet has 8 entries, got {vec.size}")
        if not np.all(np.isfinite(vec)):
            raise ValueError("octet entries must be finite")
        if np.any(np.abs(vec) > 1.0 + THRESHOLD_TOL):
            raise ValueError("octet entries must lie in [-1, 1]")
        vec = vec.copy()
        vec.flags.writeable = False
        object.__setattr__(self, "e", vec)

    def __getitem__(self, bits):
        x, y, z = bits
        return float(self.e[4 * x + 2 * y + z])

    def __eq__(self, other):
        if not isinstance(other, CorrelationOctet):
            return NotImplemented
        return bool(np.array_equal(self.e, other.e))

    def __hash__(self):
        return hash(self.e.tobytes())

    def as_list(self) -> list[float]:
        return [float(v) for v in self.e]


@dataclass(frozen=True)
class InequalityReport:
    m: float
    m_prime: float
    s_v: float
    violates_lhv: bool
    proves_tripartite_entanglement: bool
    proves_tripartite_nonlocality: bool


def octet_array(state: TripartiteState, ops_a, ops_b, ops_c) -> np.ndarray:
    """All eight correlators for stacked (2, 2, 2) operator pairs per party.

    ``ops_a[x]`` is the 2x2 operator for setting ``x`` of particle 1, etc.
    """
    psi = state.tensor
    phi = np.einsum("xij,jkl->xikl", ops_a, psi)
    phi = np.einsum("ykm,ximl->xyikl", ops_b, phi)
    phi = np.einsum("zln,xyikn->xyzikl", ops_c, phi)
    values = np.einsum("ikl,xyzikl->xyz", psi.conj(), phi)
    return values.real.reshape(8)


def octet_from_settings(state: TripartiteState, settings: SettingsHextet) -> CorrelationOctet:
    ops = [np.stack([d.operator for d in pair]) for pair in settings.pairs()]
    values = np.clip(octet_array(state, *ops), -1.0, 1.0)
    return CorrelationOctet(values)


def mermin_m(octet: CorrelationOctet) -> float:
    e = octet.e
    return float(e[1] + e[2] + e[4] - e[7])


def mermin_m_prime(octet: CorrelationOctet) -> float:
    e = octet.e
    return float(e[0] - e[3] - e[5] - e[6])


def svetlichny(octet: CorrelationOctet) -> float:
    # Summed as M + M' so the identity holds bit-for-bit.
    return mermin_m(octet) + mermin_m_prime(octet)


def classify(octet: CorrelationOctet) -> InequalityReport:
    m, mp = mermin_m(octet), mermin_m_prime(octet)
    sv = m + mp
    mermin = max(abs(m), abs(mp))
    nonlocal_ = bool(abs(sv) > HYBRID_BOUND + THRESHOLD_TOL)
    return InequalityReport(
        m=m,
        m_prime=mp,
        s_v=sv,
        violates_lhv=bool(mermin > LHV_BOUND + THRESHOLD_TOL) or nonlocal_,
        proves_tripartite_entanglement=bool(mermin > ENTANGLEMENT_BOUND + THRESHOLD_TOL) or nonlocal_,
        proves_tripartite_nonlocality=nonlocal_,
    )
