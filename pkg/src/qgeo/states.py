"""Qubit states: Bloch vectors, density matrices and simple state functionals."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .matrixcore import (
    HERMITIAN_TOL,
    I2,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    as_matrix,
    eigh,
    require_hermitian,
)

BALL_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-12


class InvalidStateError(ValueError):
    pass


class TraceError(InvalidStateError):
    pass


class NegativeEigenvalueError(InvalidStateError):
    pass


class OutsideBallError(InvalidStateError):
    pass


@dataclass(frozen=True)
class BlochVector:
    nx: float
    ny: float
    nz: float

    def __post_init__(self):
        for v in (self.nx, self.ny, self.nz):
            if not math.isfinite(v):
                raise OutsideBallError("Bloch vector has non-finite components")
        if self.norm_sq > 1.0 + BALL_TOL:
            raise OutsideBallError(f"Bloch vector outside ball (|n| = {self.norm:.17g})")

    @classmethod
    def from_seq(cls, values) -> "BlochVector":
        nx, ny, nz = (float(v) for v in values)
        return cls(nx, ny, nz)

    @property
    def norm_sq(self) -> float:
        return self.nx * self.nx + self.ny * self.ny + self.nz * self.nz

    @property
    def norm(self) -> float:
        return math.sqrt(self.norm_sq)

    def as_array(self) -> np.ndarray:
        return np.array([self.nx, self.ny, self.nz])


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite matrix.

    Construction validates; use :func:`validate_state` for an explicit check.
    """

    mat: np.ndarray

    def __post_init__(self):
        m = np.array(as_matrix(self.mat))
        require_hermitian(m, HERMITIAN_TOL)
        tr = np.trace(m)
        if abs(tr - 1.0) > TRACE_TOL:
            raise TraceError(f"trace is {tr.real:.17g}, expected 1")
        lowest = eigh(m).eigenvalues[0]
        if lowest < -PSD_TOL:
            raise NegativeEigenvalueError(f"negative eigenvalue {lowest:.3e}")
        m.flags.writeable = False
        object.__setattr__(self, "mat", m)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]


def validate_state(m) -> DensityMatrix:
    return DensityMatrix(m)


def bloch_to_density(n: BlochVector) -> DensityMatrix:
    return DensityMatrix(0.5 * (I2 + n.nx * SIGMA_X + n.ny * SIGMA_Y + n.nz * SIGMA_Z))


def density_to_bloch(rho: DensityMatrix) -> BlochVector:
    m = as_matrix(rho)
    if m.shape != (2, 2):
        raise ValueError(f"Bloch representation needs a qubit state, got {m.shape}")
    # Tr(rho sigma) = sum_ij rho_ij sigma_ji
    return BlochVector(*(float(np.sum(m * s.T).real) for s in (SIGMA_X, SIGMA_Y, SIGMA_Z)))


def qubit_spectrum(n: BlochVector) -> tuple[float, float]:
    """Eigenvalues ``((1+|n|)/2, (1-|n|)/2)`` of the qubit with Bloch vector ``n``."""
    r = n.norm
    return 0.5 * (1.0 + r), 0.5 * (1.0 - r)


def mixedness(rho: DensityMatrix) -> float:
    """``1 - Tr(rho^2)``; unit trace is guaranteed by validation."""
    m = as_matrix(rho)
    return 1.0 - float(np.vdot(m, m).real)


def purity(rho: DensityMatrix) -> float:
    m = as_matrix(rho)
    return float(np.vdot(m, m).real)


def pure_state(vec) -> DensityMatrix:
    v = np.asarray(vec, dtype=np.complex128)
    v = v / np.linalg.norm(v)
    return DensityMatrix(np.outer(v, v.conj()))
