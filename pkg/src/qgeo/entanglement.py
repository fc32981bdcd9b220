"""Entangling a system qubit with an ancilla, and two-qubit negativity.

Two-qubit operators use the basis ``|00>, |01>, |10>, |11>`` with the
system qubit first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import PauliAxis
from .matrixcore import (
    CNOT,
    HADAMARD,
    I2,
    PHASE_S,
    SIGMA_Z,
    as_matrix,
    eigh,
    partial_transpose_first,
    tensor,
    trace_norm,
)
from .states import BlochVector, DensityMatrix

UNITARY_TOL = 1e-12

# maps |0>, |1> onto the +1, -1 eigenvectors of the named Pauli
_BASIS_CHANGE = {
    PauliAxis.Z: I2,
    PauliAxis.X: HADAMARD,
    PauliAxis.Y: PHASE_S @ HADAMARD,
}


@dataclass(frozen=True, eq=False)
class EntanglingUnitary:
    mat: np.ndarray
    basis_axis: PauliAxis

    def __post_init__(self):
        m = np.array(as_matrix(self.mat))
        if m.shape != (4, 4):
            raise ValueError("entangling unitary must be 4x4")
        defect = np.max(np.abs(m.conj().T @ m - np.eye(4)))
        if defect > UNITARY_TOL:
            raise ValueError(f"matrix is not unitary (defect {defect:.3e})")
        m.flags.writeable = False
        object.__setattr__(self, "mat", m)
        object.__setattr__(self, "basis_axis", PauliAxis(self.basis_axis))


def basis_change(axis) -> np.ndarray:
    return _BASIS_CHANGE[PauliAxis(axis)]


def cnot_in_basis(axis) -> EntanglingUnitary:
    """Copy gate in the eigenbasis of ``sigma_axis``, system as control.

    For ``z`` this is the ordinary CNOT (``|00> -> |00>``, ``|10> -> |11>``).
    For the other axes it is CNOT conjugated by the local basis change, so
    ``|e0 e0> -> |e0 e0>`` and ``|e1 e0> -> |e1 e1>`` for the axis eigenvectors.
    """
    v = basis_change(axis)
    vv = np.kron(v, v)
    return EntanglingUnitary(vv @ CNOT @ vv.conj().T, axis)


def literal_x_unitary() -> EntanglingUnitary:
    """Unitary acting as ``|++> -> |++>`` and ``|+-> -> |-->``.

    Completed by flipping the system in the +/- basis whenever the ancilla
    is ``|->``: ``I (x) |+><+| + sigma_z (x) |-><-|``. In the computational
    basis this is identical to the ordinary CNOT.
    """
    plus = HADAMARD[:, 0]
    minus = HADAMARD[:, 1]
    p_plus = np.outer(plus, plus.conj())
    p_minus = np.outer(minus, minus.conj())
    return EntanglingUnitary(np.kron(I2, p_plus) + np.kron(SIGMA_Z, p_minus), PauliAxis.X)


def ancilla_state(axis) -> DensityMatrix:
    """The +1 eigenstate of ``sigma_axis``, i.e. the copy gate's blank ancilla."""
    e0 = basis_change(axis)[:, 0]
    return DensityMatrix(np.outer(e0, e0.conj()))


def generate_joint_state(
    rho: DensityMatrix, ancilla: DensityMatrix, unitary: EntanglingUnitary
) -> DensityMatrix:
    if rho.dim != 2 or ancilla.dim != 2:
        raise ValueError("system and ancilla must both be qubits")
    u = unitary.mat
    return DensityMatrix(u @ tensor(rho.mat, ancilla.mat) @ u.conj().T)


def negativity(rho_joint: DensityMatrix) -> float:
    """Negativity ``(||rho^T_A||_1 - 1) / 2`` of a two-qubit state.

    Evaluated as the summed magnitude of the negative eigenvalues of the
    partial transpose, which equals the trace-norm form for unit trace
    without the cancellation against 1.
    """
    m = as_matrix(rho_joint)
    if m.shape != (4, 4):
        raise ValueError(f"negativity needs a two-qubit state, got {m.shape}")
    lam = eigh(partial_transpose_first(m)).eigenvalues
    return float(-np.sum(lam[lam < 0.0])) + 0.0


def negativity_trace_norm(rho_joint: DensityMatrix) -> float:
    """Same quantity through the trace norm, for cross-checking."""
    return 0.5 * (trace_norm(partial_transpose_first(as_matrix(rho_joint))) - 1.0)


def _perp_sq(n: BlochVector, axis) -> float:
    along = {PauliAxis.X: n.nx, PauliAxis.Y: n.ny, PauliAxis.Z: n.nz}[PauliAxis(axis)]
    return max(n.norm_sq - along * along, 0.0)


def negativity_closed_form(n: BlochVector, axis=PauliAxis.Z) -> float:
    """``sqrt(nx^2 + ny^2) / 2`` for the z pipeline; the coherence orthogonal
    to ``axis`` in general. Zero at the maximally mixed state."""
    if n.norm_sq == 0.0:
        return 0.0
    return 0.5 * math.sqrt(_perp_sq(n, axis))


def negativity_unsimplified(n: BlochVector) -> float:
    """z-pipeline negativity with its mixedness prefactors left in place:

    ``(1 - sqrt(2M))**-0.5 * (1 - sqrt(1 - |n|^2))**0.5 * sqrt(nx^2+ny^2) / 2``

    where ``M = (1 - |n|^2) / 2``. The two prefactors cancel exactly.
    """
    if n.norm_sq == 0.0:
        return 0.0
    mix = 0.5 * (1.0 - n.norm_sq)
    root = math.sqrt(max(1.0 - n.norm_sq, 0.0))
    return (
        (1.0 - math.sqrt(2.0 * mix)) ** -0.5
        * (1.0 - root) ** 0.5
        * math.sqrt(n.nx**2 + n.ny**2)
        / 2.0
    )
