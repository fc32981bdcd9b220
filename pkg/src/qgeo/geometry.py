"""Monotone Riemannian metrics on qubit (and general n-level) state space.

A metric is fixed by a Morozova-Chentsov function ``c(lam, mu)`` and its
constant ``C``. For a state with eigenvalues ``lam_i`` and a tangent vector
``A`` written in the state's eigenbasis::

    K(A, A) = C * sum_i A_ii**2 / lam_i + 2 * sum_{i<j} |A_ij|**2 * c(lam_i, lam_j)
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

import numpy as np

from .matrixcore import (
    HERMITIAN_TOL,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    as_matrix,
    commutator,
    eigh,
    require_hermitian,
)
from .states import BlochVector, DensityMatrix, bloch_to_density

TANGENT_TRACE_TOL = 1e-12
POSITIVITY_FLOOR = 1e-10


class BoundaryError(ValueError):
    """The state sits on (or numerically at) the boundary of state space."""


class PauliAxis(str, Enum):
    X = "x"
    Y = "y"
    Z = "z"


_PAULI = {PauliAxis.X: SIGMA_X, PauliAxis.Y: SIGMA_Y, PauliAxis.Z: SIGMA_Z}


def pauli(axis) -> np.ndarray:
    return _PAULI[PauliAxis(axis)]


@dataclass(frozen=True, eq=False)
class TangentVector:
    """Traceless Hermitian matrix."""

    mat: np.ndarray

    def __post_init__(self):
        m = np.array(require_hermitian(self.mat, HERMITIAN_TOL))
        tr = np.trace(m)
        if abs(tr) > TANGENT_TRACE_TOL:
            raise ValueError(f"tangent vector must be traceless (trace {tr.real:.3e})")
        m.flags.writeable = False
        object.__setattr__(self, "mat", m)


def traceless_part(m) -> tuple[np.ndarray, float]:
    """Project a Hermitian matrix onto trace zero; return it and ``|Tr m|``."""
    m = as_matrix(m)
    tr = np.trace(m)
    return m - tr / m.shape[0] * np.eye(m.shape[0]), float(abs(tr))


def tangent_from_observable(rho: DensityMatrix, observable) -> TangentVector:
    """The tangent vector ``i[rho, K]`` generated by a Hermitian observable ``K``."""
    k = require_hermitian(observable)
    return TangentVector(1j * commutator(rho.mat, k))


@dataclass(frozen=True)
class MCFunction:
    """Morozova-Chentsov function with normalization ``c(lam, lam) = C / lam``."""

    name: str
    func: Callable[[float, float], float] = field(repr=False)
    C: float = 1.0
    extension: bool = False

    def __call__(self, lam: float, mu: float) -> float:
        return self.func(lam, mu)


def _wigner_yanase(lam: float, mu: float) -> float:
    return (2.0 / (math.sqrt(lam) + math.sqrt(mu))) ** 2


def _bures(lam: float, mu: float) -> float:
    return 2.0 / (lam + mu)


def _kubo_mori(lam: float, mu: float) -> float:
    x = (lam - mu) / mu
    if abs(x) < 1e-6:
        return (1.0 - x / 2.0 + x * x / 3.0) / mu
    return math.log1p(x) / (lam - mu)


def mc_wigner_yanase() -> MCFunction:
    return MCFunction("wigner-yanase", _wigner_yanase, C=1.0)


def mc_bures() -> MCFunction:
    return MCFunction("bures", _bures, C=1.0, extension=True)


def mc_kubo_mori() -> MCFunction:
    return MCFunction("kubo-mori", _kubo_mori, C=1.0, extension=True)


MC_REGISTRY: dict[str, MCFunction] = {
    f.name: f for f in (mc_wigner_yanase(), mc_bures(), mc_kubo_mori())
}


def metric_eval(rho: DensityMatrix, tangent: TangentVector, c: MCFunction) -> float:
    """Evaluate ``K_rho(A, A)`` in the eigenbasis of ``rho``.

    Raises:
        BoundaryError: if ``rho`` has an eigenvalue at or below ``POSITIVITY_FLOOR``.
    """
    r = as_matrix(rho)
    a = as_matrix(tangent)
    if r.shape != a.shape:
        raise ValueError(f"dimension mismatch: {r.shape} vs {a.shape}")
    lam, vecs = eigh(r)
    if lam[0] <= POSITIVITY_FLOOR:
        raise BoundaryError(f"state is not strictly positive (smallest eigenvalue {lam[0]:.3e})")
    at = vecs.conj().T @ a @ vecs
    n = len(lam)
    diag = at.diagonal().real
    total = c.C * float(np.sum(diag * diag / lam))
    for i in range(n):
        for j in range(i + 1, n):
            w = c.C / lam[i] if lam[i] == lam[j] else c(lam[i], lam[j])
            total += 2.0 * abs(at[i, j]) ** 2 * w
    return float(total)


def metric_wy_qubit(n: BlochVector, axis=PauliAxis.Z) -> float:
    """Closed-form Wigner-Yanase metric of ``i[rho, sigma_axis]`` for a qubit.

    With ``perp`` the squared Bloch component orthogonal to the axis and
    ``r = |n|``, the value is ``8 * perp / (1 + sqrt(1 - r**2))``, the same
    as ``8 * perp * (1 - sqrt(1 - r**2)) / r**2`` but finite at ``n = 0``.
    """
    r2 = n.norm_sq
    if r2 >= 1.0:
        raise BoundaryError("closed-form metric needs |n| < 1")
    along = {PauliAxis.X: n.nx, PauliAxis.Y: n.ny, PauliAxis.Z: n.nz}[PauliAxis(axis)]
    perp = max(r2 - along * along, 0.0)
    return 8.0 * perp / (1.0 + math.sqrt(1.0 - r2))


def metric_wy_qubit_reference(n: BlochVector) -> float:
    """The z-axis metric in the form ``32 (nx^2 + ny^2)(1 - sqrt(1 - |n|^2))``.

    Kept only so reports can quantify how far it sits from :func:`metric_eval`.
    """
    return 32.0 * (n.nx**2 + n.ny**2) * (1.0 - math.sqrt(max(1.0 - n.norm_sq, 0.0)))


def metric_for_bloch(n: BlochVector, axis=PauliAxis.Z, c: MCFunction | None = None) -> float:
    rho = bloch_to_density(n)
    return metric_eval(rho, tangent_from_observable(rho, pauli(axis)), c or mc_wigner_yanase())


@dataclass
class PropertyReport:
    name: str
    samples: int
    symmetry: float
    diagonal_law: float
    homogeneity: float

    def passes(self, tol: float = 1e-12) -> bool:
        return max(self.symmetry, self.diagonal_law, self.homogeneity) <= tol


def check_mc_properties(c: MCFunction, samples: int, seed: int = 0) -> PropertyReport:
    """Largest observed violation of symmetry, diagonal law and homogeneity.

    Violations are relative to the reference value. Pairs ``(lam, mu)`` are
    drawn log-uniformly from ``[1e-3, 1]``, scale factors ``t`` from
    ``[1e-2, 1e2]``.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng(seed)
    lams = 10.0 ** rng.uniform(-3, 0, samples)
    mus = 10.0 ** rng.uniform(-3, 0, samples)
    ts = 10.0 ** rng.uniform(-2, 2, samples)
    sym = diag = hom = 0.0
    for lam, mu, t in zip(lams, mus, ts):
        ref = c(lam, mu)
        sym = max(sym, abs(ref - c(mu, lam)) / abs(ref))
        expected = c.C / lam
        diag = max(diag, abs(c(lam, lam) - expected) / expected)
        hom = max(hom, abs(c(t * lam, t * mu) - ref / t) / abs(ref / t))
    return PropertyReport(c.name, samples, sym, diag, hom)
