"""Dense N-qubit state engine in the |0> = singlet, |1> = triplet encoding.

States are complex amplitude vectors of length 2^n with qubit 0 as the most
significant bit of the basis index; that order is fixed and shared by every
CSV dump. The entangling evolution is diagonal: basis state z picks up
exp(i * sum_b phi_b * z_b * z_{b+1}) for bond phases phi. All operations
return new states and preserve the norm.

Capped at 24 qubits: the protocol needs fidelity and stabilizer numerics at
moderate n, not asymptotics.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

MAX_QUBITS = 24
NORM_ATOL = 1e-10


@dataclass
class ChainState:
    n_qubits: int
    amplitudes: np.ndarray  # complex128, length 2**n_qubits, qubit 0 = MSB

    def __post_init__(self) -> None:
        self.amplitudes = np.asarray(self.amplitudes, dtype=np.complex128)
        if not 1 <= self.n_qubits <= MAX_QUBITS:
            raise ValueError(
                f"n_qubits must lie in [1, {MAX_QUBITS}], got {self.n_qubits}"
            )
        if self.amplitudes.shape != (2**self.n_qubits,):
            raise ValueError(
                f"amplitude vector has shape {self.amplitudes.shape}, "
                f"expected ({2**self.n_qubits},)"
            )
        if abs(self.norm() - 1.0) > NORM_ATOL:
            raise ValueError(f"state norm {self.norm()} is not 1 within {NORM_ATOL}")

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def copy(self) -> "ChainState":
        return ChainState(self.n_qubits, self.amplitudes.copy())

    def _tensor(self) -> np.ndarray:
        """View shaped [2]*n; axis k indexes qubit k."""
        return self.amplitudes.reshape([2] * self.n_qubits)


def init_plus_chain(n: int) -> ChainState:
    """Product state with every qubit in (|0> + |1>)/sqrt(2)."""
    if not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"n must lie in [1, {MAX_QUBITS}], got {n}")
    amps = np.full(2**n, 2.0 ** (-n / 2.0), dtype=np.complex128)
    return ChainState(n, amps)


def apply_ising_phases(state: ChainState, bond_phases) -> ChainState:
    """Diagonal evolution: basis state z gains exp(i * sum_b phi_b z_b z_{b+1})."""
    phases = np.asarray(bond_phases, dtype=float)
    n = state.n_qubits
    if phases.shape != (n - 1,):
        raise ValueError(
            f"expected {n - 1} bond phases for {n} qubits, got shape {phases.shape}"
        )
    if phases.size and not np.all(np.isfinite(phases)):
        raise ValueError("bond phases must be finite")
    amps = state.amplitudes.copy()
    psi = amps.reshape([2] * n)
    for b, phi in enumerate(phases):
        sel = [slice(None)] * n
        sel[b] = 1
        sel[b + 1] = 1
        psi[tuple(sel)] *= np.exp(1j * phi)
    return ChainState(n, amps)


def ideal_cluster(n: int) -> ChainState:
    """Linear cluster state: the plus chain with an exact pi phase per bond.

    Built with exact sign flips, so amplitudes are exactly +-2^(-n/2); equal
    (up to global phase) to init_plus_chain followed by apply_ising_phases
    with every bond at pi.
    """
    state = init_plus_chain(n)
    psi = state._tensor()
    for b in range(n - 1):
        sel = [slice(None)] * n
        sel[b] = 1
        sel[b + 1] = 1
        psi[tuple(sel)] *= -1.0
    return state


def stabilizer_expectation(state: ChainState, site: int) -> float:
    """Expectation of X_site * Z_{site-1} * Z_{site+1} (ends drop the missing Z).

    +1 on the ideal cluster at every site; a phase error on a bond pulls
    down exactly the two sites touching that bond.
    """
    n = state.n_qubits
    if not 0 <= site < n:
        raise ValueError(f"site {site} out of range for {n} qubits")
    phi = state.amplitudes.copy().reshape([2] * n)
    for neighbor in (site - 1, site + 1):
        if 0 <= neighbor < n:
            sel = [slice(None)] * n
            sel[neighbor] = 1
            phi[tuple(sel)] *= -1.0
    phi = np.flip(phi, axis=site)  # X on the site
    value = np.vdot(state.amplitudes, phi.reshape(-1))
    return float(value.real)


def state_fidelity(a: ChainState, b: ChainState) -> float:
    """|<a|b>|^2 clipped to [0, 1]; 1 iff the states agree up to global phase."""
    if a.n_qubits != b.n_qubits:
        raise ValueError(f"qubit counts differ: {a.n_qubits} vs {b.n_qubits}")
    return min(float(abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2), 1.0)


def ideal_cluster_fidelity(bond_phases) -> np.ndarray | float:
    """Fidelity to the ideal cluster of the chain prepared with given bond phases.

    The overlap of the two diagonal preparations collapses to
    2^-n * sum_z exp(i * sum_b (phi_b - pi) z_b z_{b+1}), which factorizes
    along the chain; it is evaluated by a left-to-right contraction in O(n)
    instead of materializing 2^n amplitudes. Accepts a batch in the leading
    dimensions: shape (..., n_bonds) returns shape (...,).

    Matches state_fidelity(ideal_cluster(n), apply_ising_phases(plus, phases))
    to machine precision; the dense route is the test oracle for this one.
    """
    phases = np.asarray(bond_phases, dtype=float)
    if phases.ndim == 0 or phases.shape[-1] < 1:
        raise ValueError("need at least one bond phase")
    deltas = phases - math.pi
    n = phases.shape[-1] + 1
    shape = phases.shape[:-1]
    w0 = np.ones(shape, dtype=np.complex128)
    w1 = np.ones(shape, dtype=np.complex128)
    for b in range(n - 1):
        twist = np.exp(1j * deltas[..., b])
        w0, w1 = w0 + w1, w0 + w1 * twist
    overlap = (w0 + w1) / 2.0**n
    fidelity = np.abs(overlap) ** 2
    return float(fidelity) if fidelity.ndim == 0 else fidelity


def write_state_csv(state: ChainState, path) -> None:
    """Dump amplitudes as CSV; the index column name records the bit order."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["basis_index_qubit0_msb", "amplitude_real", "amplitude_imag"])
        for idx, amp in enumerate(state.amplitudes):
            writer.writerow([idx, f"{amp.real:.17g}", f"{amp.imag:.17g}"])
