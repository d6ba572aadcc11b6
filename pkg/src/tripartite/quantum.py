"""Three-qubit state vectors, spin observables and full correlators.

Basis states are bit strings ``b1 b2 b3`` with bit 0 = spin up and bit 1 =
spin down along z; particle 1 is the most significant bit, so amplitude
index ``4*b1 + 2*b2 + b3``.  A Bloch direction ``n`` defines the observable
``sigma(n) = n_x X + n_y Y + n_z Z``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import OutcomeImpossible, ZeroVector

NORM_TOL = 1e-12
ZERO_TOL = 1e-15
PROB_TOL = 1e-12

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY = np.eye(2, dtype=complex)


def _normalized(amplitudes, size: int) -> np.ndarray:
    vec = np.asarray(amplitudes, dtype=complex).reshape(-1)
    if vec.shape != (size,):
        raise ValueError(f"expected {size} amplitudes, got {vec.size}")
    if np.all(np.abs(vec) < ZERO_TOL):
        raise ZeroVector("all amplitudes are zero")
    vec = vec / np.linalg.norm(vec)
    vec.flags.writeable = False
    return vec


@dataclass(frozen=True, eq=False)
class TripartiteState:
    """Normalized pure state of three qubits (8 complex amplitudes)."""

    amplitudes: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "amplitudes", _normalized(self.amplitudes, 8))

    @property
    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape(2, 2, 2)

    def __eq__(self, other):
        if not isinstance(other, TripartiteState):
            return NotImplemented
        return bool(np.allclose(self.amplitudes, other.amplitudes, atol=NORM_TOL))


@dataclass(frozen=True, eq=False)
class BipartiteState:
    """Normalized pure state of two qubits (4 complex amplitudes)."""

    amplitudes: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "amplitudes", _normalized(self.amplitudes, 4))

    def __eq__(self, other):
        if not isinstance(other, BipartiteState):
            return NotImplemented
        return bool(np.allclose(self.amplitudes, other.amplitudes, atol=NORM_TOL))


@dataclass(frozen=True, eq=False)
class BlochDirection:
    """Unit 3-vector selecting the spin observable sigma(n)."""

    n: np.ndarray

    def __post_init__(self):
        vec = np.asarray(self.n, dtype=float).reshape(-1)
        if vec.shape != (3,):
            raise ValueError("a Bloch direction has three components")
        if abs(np.linalg.norm(vec) - 1.0) > NORM_TOL:
            raise ValueError(f"direction {vec} is not a unit vector")
        vec = vec.copy()
        vec.flags.writeable = False
        object.__setattr__(self, "n", vec)

    @property
    def operator(self) -> np.ndarray:
        return spin_operator(self.n)

    def __eq__(self, other):
        if not isinstance(other, BlochDirection):
            return NotImplemented
        return bool(np.allclose(self.n, other.n, atol=NORM_TOL))

    def __repr__(self):
        return "BlochDirection(({:.6g}, {:.6g}, {:.6g}))".format(*self.n)


def spin_operator(n) -> np.ndarray:
    """2x2 matrix n_x X + n_y Y + n_z Z."""
    nx, ny, nz = n
    return np.array([[nz, nx - 1j * ny], [nx + 1j * ny, -nz]], dtype=complex)


def make_state(amplitudes: Sequence[complex]) -> TripartiteState:
    return TripartiteState(np.asarray(amplitudes, dtype=complex))


def ghz() -> TripartiteState:
    """(|000> + |111>)/sqrt(2)."""
    return make_state([1, 0, 0, 0, 0, 0, 0, 1])


def w() -> TripartiteState:
    """(|001> + |010> + |100>)/sqrt(3)."""
    return make_state([0, 1, 1, 0, 1, 0, 0, 0])


def direction(polar: float, azimuth: float) -> BlochDirection:
    st = np.sin(polar)
    return BlochDirection(np.array([st * np.cos(azimuth), st * np.sin(azimuth), np.cos(polar)]))


def xy(azimuth: float) -> BlochDirection:
    """Direction in the x-y plane at the given azimuth."""
    return direction(np.pi / 2, azimuth)


def xz(polar: float) -> BlochDirection:
    """Direction in the x-z plane at the given polar angle."""
    return direction(polar, 0.0)


def apply_local(tensor: np.ndarray, op: np.ndarray, slot: int) -> np.ndarray:
    """Apply a single-qubit operator to axis ``slot`` (0-based) of a qubit tensor."""
    moved = np.tensordot(op, tensor, axes=([1], [slot]))
    return np.moveaxis(moved, 0, slot)


def expectation_product(tensor: np.ndarray, ops: Sequence[np.ndarray]) -> complex:
    """<psi| ops[0] x ops[1] x ... |psi> for a state given as a qubit tensor."""
    phi = tensor
    for slot, op in enumerate(ops):
        phi = apply_local(phi, op, slot)
    return complex(np.vdot(tensor, phi))


def correlator(state: TripartiteState, d1: BlochDirection, d2: BlochDirection,
               d3: BlochDirection) -> float:
    """Full correlator <psi| sigma(d1) x sigma(d2) x sigma(d3) |psi>."""
    value = expectation_product(state.tensor, (d1.operator, d2.operator, d3.operator))
    return float(value.real)


def ghz_correlator_xy(phi1: float, phi2: float, phi3: float) -> float:
    return float(np.cos(phi1 + phi2 + phi3))


def w_correlator_xz(theta1: float, theta2: float, theta3: float) -> float:
    return float(-2.0 / 3.0 * np.cos(theta1 + theta2 + theta3)
                 - 1.0 / 3.0 * np.cos(theta1) * np.cos(theta2) * np.cos(theta3))


def projector(d: BlochDirection, outcome: int) -> np.ndarray:
    if outcome not in (1, -1):
        raise ValueError("outcome must be +1 or -1")
    return (IDENTITY + outcome * d.operator) / 2


def project_particle(state: TripartiteState, particle: int, d: BlochDirection,
                     outcome: int) -> tuple[float, BipartiteState]:
    """Measure one particle along ``d``; return the outcome probability and
    the normalized state of the remaining two particles (ascending index).
    """
    if particle not in (1, 2, 3):
        raise ValueError("particle index must be 1, 2 or 3")
    slot = particle - 1
    proj = projector(d, outcome)
    projected = apply_local(state.tensor, proj, slot)
    prob = float(np.vdot(projected, projected).real)
    if prob < PROB_TOL:
        raise OutcomeImpossible(f"outcome {outcome:+d} on particle {particle} has probability {prob:.3g}")
    # Contract the measured qubit with the post-measurement eigenvector.
    evals, evecs = np.linalg.eigh(proj)
    eigvec = evecs[:, int(np.argmax(evals))]
    residual = np.tensordot(eigvec.conj(), projected, axes=([0], [slot]))
    return prob, BipartiteState(residual.reshape(4))


def concurrence(state: BipartiteState) -> float:
    a, b, c, d = state.amplitudes
    return float(min(1.0, 2 * abs(a * d - b * c)))
