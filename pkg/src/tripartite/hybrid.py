"""Hybrid local / two-particle-nonlocal hidden-variable polytope.

A deterministic hybrid strategy for the bipartition ``12|3`` fixes a joint
response ``s(x, y) = +-1`` for the nonlocal pair and a local response
``t(z) = +-1`` for the third particle, giving the full-correlator octet
``e(x, y, z) = s(x, y) t(z)``.  Any hybrid model mixes such strategies, so an
octet is hybrid-explainable exactly when it lies in the convex hull of these
vertices.  Only full correlators enter M, M' and S_V, so working in this
8-dimensional space loses nothing for those quantities.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .inequalities import CorrelationOctet
from .simplex import phase_one

DEFAULT_TOLERANCE = 1e-9

# Octet axis of each party: particle 1 -> x, 2 -> y, 3 -> z.
BIPARTITIONS = {
    "12|3": ((0, 1), 2),
    "13|2": ((0, 2), 1),
    "23|1": ((1, 2), 0),
}
ALL_BIPARTITIONS = tuple(BIPARTITIONS)


class Verdict(str, Enum):
    INSIDE = "Inside"
    OUTSIDE = "Outside"


@dataclass(frozen=True)
class HybridVertex:
    bipartition: str
    pair_sign: tuple[int, int, int, int]
    single_sign: tuple[int, int]
    octet: CorrelationOctet


@dataclass(frozen=True)
class Separator:
    """Affine functional with ``h @ octet > offset >= h @ v`` for every vertex."""

    h: np.ndarray
    offset: float


@dataclass(frozen=True)
class HybridCertificate:
    verdict: Verdict
    weights: np.ndarray | None = None
    separator: Separator | None = None
    bipartitions: tuple[str, ...] = field(default=ALL_BIPARTITIONS)

    def __post_init__(self):
        if self.verdict is Verdict.INSIDE and (self.weights is None or self.separator is not None):
            raise ValueError("an Inside certificate carries weights only")
        if self.verdict is Verdict.OUTSIDE and (self.separator is None or self.weights is not None):
            raise ValueError("an Outside certificate carries a separator only")

    @property
    def inside(self) -> bool:
        return self.verdict is Verdict.INSIDE


def _normalize_bipartitions(bipartitions: Iterable[str] | None) -> tuple[str, ...]:
    if bipartitions is None:
        return ALL_BIPARTITIONS
    chosen = tuple(dict.fromkeys(bipartitions))
    if not chosen:
        raise ValueError("at least one bipartition is required")
    unknown = [bp for bp in chosen if bp not in BIPARTITIONS]
    if unknown:
        raise ValueError(f"unknown bipartition(s) {unknown}; choose from {ALL_BIPARTITIONS}")
    return tuple(bp for bp in ALL_BIPARTITIONS if bp in chosen)


def _vertex_octet(bipartition: str, pair_sign, single_sign) -> np.ndarray:
    (p, q), r = BIPARTITIONS[bipartition]
    out = np.empty(8)
    for idx, bits in enumerate(product((0, 1), repeat=3)):
        out[idx] = pair_sign[2 * bits[p] + bits[q]] * single_sign[bits[r]]
    return out


def enumerate_vertices(bipartitions: Iterable[str] | None = None) -> list[HybridVertex]:
    """Distinct deterministic hybrid octets over the requested bipartitions.

    Each bipartition contributes 64 sign assignments; ``(s, t)`` and
    ``(-s, -t)`` coincide, leaving 32 octets.  Octets shared between
    bipartitions (the fully local ones) are kept once, labelled by the first
    bipartition that produced them.
    """
    seen: set[bytes] = set()
    vertices = []
    for bp in _normalize_bipartitions(bipartitions):
        for pair_sign in product((1, -1), repeat=4):
            for single_sign in product((1, -1), repeat=2):
                octet = _vertex_octet(bp, pair_sign, single_sign)
                key = octet.tobytes()
                if key in seen:
                    continue
                seen.add(key)
                vertices.append(HybridVertex(bp, pair_sign, single_sign, CorrelationOctet(octet)))
    return vertices


def local_vertices() -> list[CorrelationOctet]:
    """Fully local deterministic octets ``s1(x) s2(y) s3(z)``, deduplicated."""
    seen: dict[bytes, CorrelationOctet] = {}
    for s1, s2, s3 in product(product((1, -1), repeat=2), repeat=3):
        octet = np.array([s1[x] * s2[y] * s3[z] for x, y, z in product((0, 1), repeat=3)], dtype=float)
        seen.setdefault(octet.tobytes(), CorrelationOctet(octet))
    return list(seen.values())


def trivial_model_octet() -> CorrelationOctet:
    """Octet of the deterministic 12|3 strategy AB = AB' = A'B = +1, A'B' = -1, C = +1, C' = -1."""
    return CorrelationOctet(_vertex_octet("12|3", (1, 1, 1, -1), (1, -1)))


def _vertex_matrix(vertices: Sequence[HybridVertex]) -> np.ndarray:
    return np.array([v.octet.e for v in vertices]).T


def membership(octet: CorrelationOctet, bipartitions: Iterable[str] | None = None,
               tolerance: float = DEFAULT_TOLERANCE) -> HybridCertificate:
    """Decide whether ``octet`` is a convex mixture of hybrid vertices."""
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    chosen = _normalize_bipartitions(bipartitions)
    vertices = enumerate_vertices(chosen)
    V = _vertex_matrix(vertices)
    A = np.vstack([V, np.ones(V.shape[1])])
    b = np.concatenate([octet.e, [1.0]])

    result = phase_one(A, b, tolerance=tolerance)
    if result.feasible:
        weights = result.x / result.x.sum()
        return HybridCertificate(Verdict.INSIDE, weights=weights, bipartitions=chosen)

    y = result.farkas
    # y @ [v; 1] <= 0 for all vertices and y @ [octet; 1] > 0.
    h, offset = y[:8], -y[8]
    scale = np.max(np.abs(h))
    separator = Separator(h=h / scale, offset=float(offset / scale))
    return HybridCertificate(Verdict.OUTSIDE, separator=separator, bipartitions=chosen)


def verify_certificate(octet: CorrelationOctet, cert: HybridCertificate,
                       vertices: Sequence[HybridVertex] | None = None,
                       tolerance: float = DEFAULT_TOLERANCE) -> bool:
    if vertices is None:
        vertices = enumerate_vertices(cert.bipartitions)
    V = _vertex_matrix(vertices)
    if cert.verdict is Verdict.INSIDE:
        q = np.asarray(cert.weights, dtype=float)
        if q.shape != (V.shape[1],):
            return False
        if np.any(q < -tolerance) or abs(q.sum() - 1.0) > tolerance:
            return False
        return bool(np.max(np.abs(V @ q - octet.e)) <= tolerance)
    sep = cert.separator
    h = np.asarray(sep.h, dtype=float)
    if h.shape != (8,):
        return False
    if h @ octet.e - sep.offset <= tolerance:
        return False
    return bool(np.all(h @ V - sep.offset <= tolerance))
