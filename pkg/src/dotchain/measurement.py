"""Projective single-qubit measurement and nearest-neighbor-safe scheduling.

Readout is a charge measurement: pushing one molecule's detuning up moves
the singlet component into the doubly occupied configuration while the
triplet stays put, so the charge sensor resolves the logical state. The
outcome convention follows the charge: +1 is the triplet branch (charge
unmoved), -1 the singlet branch. Arbitrary axes are a prior rotation plus
this z readout, so the Bloch frame here puts the triplet |1> at +z:

    M(axis) = [[-nz, nx + i*ny], [nx - i*ny, nz]]   in the (|0>, |1>) basis.

Pushing the detuning of two adjacent molecules at once would switch their
bond back on, so a measurement round never contains nearest neighbors;
schedule_rounds makes violating that unrepresentable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .rng import stream_rng
from .state import NORM_ATOL, ChainState

X_AXIS = (1.0, 0.0, 0.0)
Y_AXIS = (0.0, 1.0, 0.0)
Z_AXIS = (0.0, 0.0, 1.0)

NAMED_AXES = {"x": X_AXIS, "y": Y_AXIS, "z": Z_AXIS}


@dataclass(frozen=True)
class MeasurementSpec:
    """Measurement of one qubit along a unit Bloch axis (triplet at +z)."""

    qubit: int
    basis: tuple[float, float, float]

    def __post_init__(self) -> None:
        axis = tuple(float(c) for c in self.basis)
        if len(axis) != 3 or not all(math.isfinite(c) for c in axis):
            raise ValueError(f"basis must be a finite 3-vector, got {self.basis}")
        if abs(math.sqrt(sum(c * c for c in axis)) - 1.0) > 1e-10:
            raise ValueError(f"basis axis must be normalized to 1e-10, got {self.basis}")
        object.__setattr__(self, "basis", axis)
        if self.qubit < 0:
            raise ValueError(f"qubit index must be >= 0, got {self.qubit}")


@dataclass(frozen=True)
class MeasurementRecord:
    qubit: int
    outcome: int  # +1 triplet branch, -1 singlet branch
    probability: float
    post_state: ChainState

    def __post_init__(self) -> None:
        if self.outcome not in (-1, +1):
            raise ValueError(f"outcome must be +-1, got {self.outcome}")
        if not 0.0 <= self.probability <= 1.0 + 1e-12:
            raise ValueError(f"probability {self.probability} outside [0, 1]")


@dataclass(frozen=True)
class RoundSchedule:
    """Rounds of simultaneous measurements; no round contains adjacent qubits."""

    rounds: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        seen = set()
        for rnd in self.rounds:
            for q in rnd:
                if q in seen:
                    raise ValueError(f"qubit {q} scheduled more than once")
                seen.add(q)
            present = set(rnd)
            for q in rnd:
                if q + 1 in present:
                    raise ValueError(
                        f"round {rnd} contains nearest neighbors {q} and {q + 1}"
                    )

    @property
    def qubits(self) -> tuple[int, ...]:
        return tuple(q for rnd in self.rounds for q in rnd)


def _measurement_matrix(axis) -> np.ndarray:
    nx, ny, nz = axis
    return np.array(
        [[-nz, nx + 1j * ny], [nx - 1j * ny, nz]], dtype=np.complex128
    )


def _apply_on_qubit(amps: np.ndarray, mat: np.ndarray, qubit: int, n: int) -> np.ndarray:
    psi = amps.reshape([2] * n)
    psi = np.moveaxis(psi, qubit, -1)
    psi = psi @ mat.T
    return np.moveaxis(psi, -1, qubit).reshape(-1)


def project(
    state: ChainState, spec: MeasurementSpec, outcome: int
) -> tuple[float, ChainState | None]:
    """Born probability of the outcome and the renormalized post-state.

    The post-state is None when the probability vanishes. Deterministic
    companion of measure(); also the enumeration oracle used by the tests.
    """
    if outcome not in (-1, +1):
        raise ValueError(f"outcome must be +-1, got {outcome}")
    n = state.n_qubits
    if spec.qubit >= n:
        raise ValueError(f"qubit {spec.qubit} out of range for {n} qubits")
    if abs(state.norm() - 1.0) > NORM_ATOL:
        raise ValueError("state is not normalized")
    mat = _measurement_matrix(spec.basis)
    projector = (np.eye(2) + outcome * mat) / 2.0
    branch = _apply_on_qubit(state.amplitudes, projector, spec.qubit, n)
    prob = float(np.vdot(branch, branch).real)
    prob = min(max(prob, 0.0), 1.0)
    if prob <= 0.0:
        return 0.0, None
    return prob, ChainState(n, branch / math.sqrt(prob))


def measure(
    state: ChainState, spec: MeasurementSpec, seed: int, stream: int = 0
) -> MeasurementRecord:
    """Sample one projective measurement; deterministic per (seed, stream)."""
    p_plus, post_plus = project(state, spec, +1)
    u = stream_rng(seed, stream).random()
    if u < p_plus:
        return MeasurementRecord(spec.qubit, +1, p_plus, post_plus)
    p_minus, post_minus = project(state, spec, -1)
    return MeasurementRecord(spec.qubit, -1, p_minus, post_minus)


def schedule_rounds(requested) -> RoundSchedule:
    """Split requested qubits into rounds with no nearest-neighbor pair.

    One round when no two requested indices are adjacent; otherwise the
    parity 2-coloring (evens, then odds), which is optimal on a path.
    Deterministic: rounds are sorted ascending.
    """
    qubits = list(requested)
    if len(set(qubits)) != len(qubits):
        raise ValueError("requested qubit indices must be distinct")
    if any(q < 0 for q in qubits):
        raise ValueError("qubit indices must be >= 0")
    ordered = sorted(qubits)
    if not ordered:
        return RoundSchedule(rounds=())
    has_conflict = any(b - a == 1 for a, b in zip(ordered, ordered[1:]))
    if not has_conflict:
        return RoundSchedule(rounds=(tuple(ordered),))
    evens = tuple(q for q in ordered if q % 2 == 0)
    odds = tuple(q for q in ordered if q % 2 == 1)
    rounds = tuple(rnd for rnd in (evens, odds) if rnd)
    return RoundSchedule(rounds=rounds)


def run_schedule(
    state: ChainState, schedule: RoundSchedule, bases, seed: int
) -> list[MeasurementRecord]:
    """Execute the rounds in order, ascending qubit index inside each round.

    Within a round the projectors act on non-adjacent qubits and commute, so
    the intra-round order cannot change any joint outcome probability (the
    tests check this by enumeration). bases maps qubit index to a Bloch
    axis; measurement k of the run uses stream k of the seed.
    """
    for q in schedule.qubits:
        if q >= state.n_qubits:
            raise ValueError(f"scheduled qubit {q} out of range for {state.n_qubits} qubits")
    records: list[MeasurementRecord] = []
    current = state
    stream = 0
    for rnd in schedule.rounds:
        for q in sorted(rnd):
            spec = MeasurementSpec(qubit=q, basis=tuple(bases[q]))
            record = measure(current, spec, seed, stream=stream)
            records.append(record)
            current = record.post_state
            stream += 1
    return records
