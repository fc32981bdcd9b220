"""Dense complex matrix kernel.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. The Hermitian
eigensolver is a cyclic complex Jacobi method with a closed-form path for
2x2 input; everything else is a thin wrapper over numpy array arithmetic.
"""

from __future__ import annotations

import cmath
import math
from typing import NamedTuple

import numpy as np

HERMITIAN_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100
JACOBI_TOL = 1e-14

I2 = np.eye(2, dtype=np.complex128)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=np.complex128) / math.sqrt(2)
PHASE_S = np.array([[1, 0], [0, 1j]], dtype=np.complex128)

# computational-basis CNOT, control on the first (system) qubit
CNOT = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=np.complex128
)

for _m in (I2, SIGMA_X, SIGMA_Y, SIGMA_Z, HADAMARD, PHASE_S, CNOT):
    _m.flags.writeable = False


class NotHermitianError(ValueError):
    pass


class ConvergenceError(RuntimeError):
    pass


class EigenDecomposition(NamedTuple):
    """Eigenvalues in ascending order and the matching eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_matrix(m) -> np.ndarray:
    """Coerce ``m`` to a finite square complex128 array."""
    a = np.asarray(getattr(m, "mat", m), dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def _check_same_dim(x: np.ndarray, y: np.ndarray) -> None:
    if x.shape != y.shape:
        raise ValueError(f"dimension mismatch: {x.shape} vs {y.shape}")


def adjoint(m) -> np.ndarray:
    return as_matrix(m).conj().T


def hs_inner(x, y) -> complex:
    """Hilbert-Schmidt inner product ``Tr(x^dagger y)``."""
    x, y = as_matrix(x), as_matrix(y)
    _check_same_dim(x, y)
    # Tr(x^H y) = sum_ij conj(x_ij) y_ij
    return complex(np.vdot(x, y))


def tensor(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def partial_transpose_first(m) -> np.ndarray:
    """Transpose the first tensor factor of a two-qubit operator."""
    m = as_matrix(m)
    if m.shape != (4, 4):
        raise ValueError(f"partial transpose needs a 4x4 matrix, got {m.shape}")
    return m.reshape(2, 2, 2, 2).transpose(2, 1, 0, 3).reshape(4, 4)


def commutator(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    _check_same_dim(a, b)
    return a @ b - b @ a


def matrix_unit(dim: int, i: int, j: int) -> np.ndarray:
    if dim < 1 or not (0 <= i < dim and 0 <= j < dim):
        raise IndexError(f"matrix unit E_({i},{j}) out of range for dim {dim}")
    e = np.zeros((dim, dim), dtype=np.complex128)
    e[i, j] = 1.0
    return e


def hermitian_defect(m) -> float:
    """Max-abs entry of ``m - m^dagger``."""
    m = as_matrix(m)
    return float(np.max(np.abs(m - m.conj().T)))


def is_hermitian(m, tol: float = HERMITIAN_TOL) -> bool:
    return hermitian_defect(m) <= tol


def require_hermitian(m, tol: float = HERMITIAN_TOL) -> np.ndarray:
    m = as_matrix(m)
    defect = hermitian_defect(m)
    if defect > tol:
        raise NotHermitianError(f"matrix is not Hermitian (defect {defect:.3e} > {tol:g})")
    return m


def _eigh2(a: float, b: complex, d: float):
    """Closed-form eigensystem of [[a, b], [conj(b), d]].

    Returns ``(lo, hi, v_lo, v_hi)`` with unit eigenvectors as 2-tuples.
    """
    mean = 0.5 * (a + d)
    half_gap = 0.5 * (a - d)
    babs = abs(b)
    r = math.hypot(half_gap, babs)
    theta = 0.5 * math.atan2(babs, half_gap)
    c, s = math.cos(theta), math.sin(theta)
    phase = cmath.exp(-1j * cmath.phase(b)) if babs > 0.0 else 1.0
    v_lo = (complex(-s), phase * c)
    v_hi = (complex(c), phase * s)
    return mean - r, mean + r, v_lo, v_hi


def _jacobi(a: list[list[complex]], tol: float) -> tuple[list[float], list[list[complex]]]:
    n = len(a)
    v = [[1.0 + 0j if i == j else 0j for j in range(n)] for i in range(n)]
    scale = math.sqrt(sum(abs(x) ** 2 for row in a for x in row))
    if scale == 0.0:
        return [0.0] * n, v
    threshold = tol * scale
    for _ in range(JACOBI_MAX_SWEEPS):
        off = math.sqrt(sum(abs(a[i][j]) ** 2 for i in range(n) for j in range(n) if i != j))
        if off <= threshold:
            return [a[i][i].real for i in range(n)], v
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p][q]
                if apq == 0:
                    continue
                lo, hi, g0, g1 = _eigh2(a[p][p].real, apq, a[q][q].real)
                g00, g10 = g0
                g01, g11 = g1
                # A <- A J, V <- V J  (J embeds the 2x2 block eigenvectors)
                for k in range(n):
                    akp, akq = a[k][p], a[k][q]
                    a[k][p] = akp * g00 + akq * g10
                    a[k][q] = akp * g01 + akq * g11
                    vkp, vkq = v[k][p], v[k][q]
                    v[k][p] = vkp * g00 + vkq * g10
                    v[k][q] = vkp * g01 + vkq * g11
                # A <- J^dagger A
                c00, c10, c01, c11 = g00.conjugate(), g10.conjugate(), g01.conjugate(), g11.conjugate()
                rp, rq = a[p], a[q]
                for k in range(n):
                    apk, aqk = rp[k], rq[k]
                    rp[k] = c00 * apk + c10 * aqk
                    rq[k] = c01 * apk + c11 * aqk
                a[p][p], a[q][q] = complex(lo), complex(hi)
                a[p][q] = a[q][p] = 0j
    raise ConvergenceError(f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps")


def eigh(m) -> EigenDecomposition:
    """Eigen-decompose a Hermitian matrix.

    Eigenvalues come back ascending; column ``k`` of the eigenvector matrix
    belongs to eigenvalue ``k``. Input that is not Hermitian to within
    ``HERMITIAN_TOL`` is rejected rather than symmetrized.
    """
    m = require_hermitian(m)
    n = m.shape[0]
    if n == 1:
        return EigenDecomposition(np.array([m[0, 0].real]), np.ones((1, 1), dtype=np.complex128))
    if n == 2:
        lo, hi, v_lo, v_hi = _eigh2(m[0, 0].real, complex(m[0, 1]), m[1, 1].real)
        vecs = np.array([[v_lo[0], v_hi[0]], [v_lo[1], v_hi[1]]], dtype=np.complex128)
        return EigenDecomposition(np.array([lo, hi]), vecs)
    vals, vecs = _jacobi(m.tolist(), JACOBI_TOL)
    vals = np.array(vals)
    order = np.argsort(vals, kind="stable")
    return EigenDecomposition(vals[order], np.array(vecs, dtype=np.complex128)[:, order])


def trace_norm(m) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    return float(np.sum(np.abs(eigh(m).eigenvalues)))


def haar_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Sample a Haar-random unitary by QR of a complex Ginibre matrix."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))
