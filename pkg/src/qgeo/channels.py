"""Qubit CPTP maps in Kraus form."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import TangentVector, traceless_part
from .matrixcore import I2, SIGMA_X, SIGMA_Y, SIGMA_Z, as_matrix, haar_unitary

TP_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class KrausChannel:
    kraus_ops: tuple[np.ndarray, ...]
    label: str = "channel"

    def __post_init__(self):
        ops = tuple(np.array(as_matrix(k)) for k in self.kraus_ops)
        if not ops:
            raise ValueError("a channel needs at least one Kraus operator")
        dim = ops[0].shape[0]
        if any(k.shape != (dim, dim) for k in ops):
            raise ValueError("Kraus operators must share one square shape")
        residual = tp_residual(ops)
        if residual > TP_TOL:
            raise ValueError(f"Kraus set is not trace preserving (residual {residual:.3e})")
        for k in ops:
            k.flags.writeable = False
        object.__setattr__(self, "kraus_ops", ops)

    @property
    def dim(self) -> int:
        return self.kraus_ops[0].shape[0]


def tp_residual(kraus_ops) -> float:
    """Max-abs entry of ``sum_k K_k^dagger K_k - I``."""
    s = sum(k.conj().T @ k for k in kraus_ops)
    return float(np.max(np.abs(s - np.eye(s.shape[0]))))


def apply(ch: KrausChannel, m) -> np.ndarray:
    m = as_matrix(m)
    if m.shape[0] != ch.dim:
        raise ValueError(f"dimension mismatch: channel on {ch.dim}, matrix {m.shape}")
    return sum(k @ m @ k.conj().T for k in ch.kraus_ops)


def apply_to_tangent(ch: KrausChannel, tangent: TangentVector) -> tuple[TangentVector, float]:
    """Push a tangent vector through the channel.

    Returns the traceless part of the image and the magnitude of the trace
    that was removed (zero up to rounding for trace-preserving channels).
    """
    projected, removed = traceless_part(apply(ch, tangent.mat))
    return TangentVector(projected), removed


def extend_on_second(ch: KrausChannel) -> KrausChannel:
    """``id (x) ch`` acting on a two-qubit operator's second factor."""
    return KrausChannel(tuple(np.kron(I2, k) for k in ch.kraus_ops), f"id*{ch.label}")


def _check_unit(name: str, value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must be in [0, 1], got {value}")


def identity_channel() -> KrausChannel:
    return KrausChannel((I2,), "identity")


def unitary_channel(u) -> KrausChannel:
    return KrausChannel((as_matrix(u),), "unitary")


def depolarizing(p: float) -> KrausChannel:
    _check_unit("p", p)
    a = math.sqrt(max(1.0 - 3.0 * p / 4.0, 0.0))
    b = math.sqrt(p / 4.0)
    return KrausChannel((a * I2, b * SIGMA_X, b * SIGMA_Y, b * SIGMA_Z), f"depolarizing({p:g})")


def amplitude_damping(gamma: float) -> KrausChannel:
    _check_unit("gamma", gamma)
    k0 = np.array([[1.0, 0.0], [0.0, math.sqrt(1.0 - gamma)]], dtype=np.complex128)
    k1 = np.array([[0.0, math.sqrt(gamma)], [0.0, 0.0]], dtype=np.complex128)
    return KrausChannel((k0, k1), f"amplitude_damping({gamma:g})")


def phase_damping(lam: float) -> KrausChannel:
    """Dephasing that scales off-diagonal entries by ``1 - lam``."""
    _check_unit("lam", lam)
    s = math.sqrt(lam)
    ops = (
        math.sqrt(1.0 - lam) * I2,
        s * np.diag([1.0, 0.0]).astype(np.complex128),
        s * np.diag([0.0, 1.0]).astype(np.complex128),
    )
    return KrausChannel(ops, f"phase_damping({lam:g})")


def random_channel(seed: int, n_kraus: int = 4) -> KrausChannel:
    """Qubit channel read off a random isometry ``C^2 -> C^(2 n_kraus)``.

    The isometry is the Q factor of a seeded complex Gaussian matrix, so the
    stacked Kraus operators satisfy ``sum K^dagger K = V^dagger V = I``.
    """
    if not 1 <= n_kraus <= 4:
        raise ValueError("n_kraus must be between 1 and 4")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((2 * n_kraus, 2)) + 1j * rng.standard_normal((2 * n_kraus, 2))
    v, _ = np.linalg.qr(g)
    ops = tuple(v[2 * k : 2 * k + 2, :] for k in range(n_kraus))
    return KrausChannel(ops, f"random({seed})")


def random_unitary_channel(seed: int) -> KrausChannel:
    return unitary_channel(haar_unitary(np.random.default_rng(seed), 2))
