import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qgeo.matrixcore import (
    I2,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    NotHermitianError,
    adjoint,
    commutator,
    eigh,
    hs_inner,
    matrix_unit,
    partial_transpose_first,
    tensor,
    trace_norm,
)
from qgeo.states import BlochVector, bloch_to_density

from conftest import random_hermitian, random_unitary

BELL = 0.5 * np.array([[1, 0, 0, 1], [0, 0, 0, 0], [0, 0, 0, 0], [1, 0, 0, 1]], dtype=complex)

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def test_adjoint_examples():
    assert np.array_equal(adjoint(I2), I2)
    assert np.array_equal(adjoint(SIGMA_Y), SIGMA_Y)
    assert np.array_equal(adjoint([[0, 1], [0, 0]]), np.array([[0, 0], [1, 0]]))


def test_adjoint_conjugates():
    m = np.array([[1 + 2j, 3], [4j, 5]])
    assert np.array_equal(adjoint(m), np.array([[1 - 2j, -4j], [3, 5]]))


def test_hs_inner_examples():
    assert hs_inner(SIGMA_X, SIGMA_X) == 2
    assert hs_inner(SIGMA_X, SIGMA_Z) == 0
    with pytest.raises(ValueError):
        hs_inner(I2, np.eye(4))


def test_hs_inner_is_trace_of_adjoint_product(rng):
    x = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    y = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    assert hs_inner(x, y) == pytest.approx(np.trace(x.conj().T @ y), abs=1e-13)


@settings(max_examples=50)
@given(seeds)
def test_hs_inner_unitary_invariance(seed):
    rng = np.random.default_rng(seed)
    x, y = random_hermitian(rng, 4), random_hermitian(rng, 4)
    u = random_unitary(rng, 4)
    ux, uy = u @ x @ u.conj().T, u @ y @ u.conj().T
    assert abs(hs_inner(ux, uy) - hs_inner(x, y)) < 1e-10


@settings(max_examples=50)
@given(seeds)
def test_hs_inner_positive_definite(seed):
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    assert hs_inner(x, x).real > 0
    assert hs_inner(np.zeros((2, 2)), np.zeros((2, 2))) == 0


def test_tensor_examples():
    assert np.array_equal(tensor(I2, I2), np.eye(4))
    p0 = np.diag([1, 0])
    assert np.array_equal(tensor(p0, p0), np.diag([1, 0, 0, 0]))
    expected = np.zeros((4, 4))
    expected[0, 2], expected[1, 3], expected[2, 0], expected[3, 1] = 1, -1, 1, -1
    assert np.array_equal(tensor(SIGMA_X, SIGMA_Z), expected)


def test_partial_transpose_examples(rng):
    assert np.array_equal(partial_transpose_first(np.eye(4)), np.eye(4))
    a = bloch_to_density(BlochVector(0.1, 0.5, -0.3)).mat
    b = bloch_to_density(BlochVector(-0.4, 0.2, 0.6)).mat
    assert np.allclose(partial_transpose_first(np.kron(a, b)), np.kron(a.T, b), atol=1e-15)
    lam = np.linalg.eigvalsh(partial_transpose_first(BELL))
    assert np.allclose(lam, [-0.5, 0.5, 0.5, 0.5], atol=1e-15)
    with pytest.raises(ValueError):
        partial_transpose_first(I2)


def test_partial_transpose_index_rule(rng):
    m = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    pt = partial_transpose_first(m)
    for i, j, k, l in np.ndindex(2, 2, 2, 2):
        assert pt[2 * i + j, 2 * k + l] == m[2 * k + j, 2 * i + l]


@settings(max_examples=50)
@given(seeds)
def test_partial_transpose_involution(seed):
    rng = np.random.default_rng(seed)
    m = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    assert np.array_equal(partial_transpose_first(partial_transpose_first(m)), m)


def test_eigh_examples():
    lam, v = eigh(np.diag([0.25, 0.75]))
    assert np.array_equal(lam, [0.25, 0.75])
    assert np.allclose(np.abs(v), np.eye(2))

    lam, v = eigh(SIGMA_X)
    assert np.allclose(lam, [-1, 1], atol=1e-15)
    s = 1 / np.sqrt(2)
    assert abs(abs(np.vdot(v[:, 0], [s, -s])) - 1) < 1e-15
    assert abs(abs(np.vdot(v[:, 1], [s, s])) - 1) < 1e-15

    lam, _ = eigh(bloch_to_density(BlochVector(0.6, 0, 0.8)).mat)
    assert np.allclose(lam, [0, 1], atol=1e-15)


def test_eigh_rejects_non_hermitian():
    with pytest.raises(NotHermitianError):
        eigh(np.array([[0, 1], [0, 0]]))
    with pytest.raises(NotHermitianError):
        eigh(np.eye(4) + 1e-11 * np.eye(4, k=1))


def test_eigh_degenerate_and_zero():
    lam, v = eigh(np.zeros((4, 4)))
    assert np.array_equal(lam, np.zeros(4))
    lam, v = eigh(np.diag([2.0, 1.0, 2.0, 1.0]).astype(complex))
    assert np.array_equal(lam, [1, 1, 2, 2])
    assert np.allclose(v.conj().T @ v, np.eye(4), atol=1e-15)


@pytest.mark.parametrize("dim", [2, 3, 4, 6])
def test_eigh_matches_numpy(rng, dim):
    for _ in range(200):
        h = random_hermitian(rng, dim)
        lam, v = eigh(h)
        assert np.all(np.diff(lam) >= 0)
        assert np.allclose(lam, np.linalg.eigvalsh(h), atol=1e-12)
        assert np.max(np.abs(v @ np.diag(lam) @ v.conj().T - h)) < 1e-10
        assert np.max(np.abs(v.conj().T @ v - np.eye(dim))) < 1e-12


@settings(max_examples=100)
@given(seeds, st.sampled_from([2, 4]), st.floats(min_value=1e-6, max_value=1e6))
def test_eigh_reconstructs_across_scales(seed, dim, scale):
    h = random_hermitian(np.random.default_rng(seed), dim, scale)
    lam, v = eigh(h)
    assert np.max(np.abs(v @ np.diag(lam) @ v.conj().T - h)) < 1e-10 * max(scale, 1.0)
    assert np.max(np.abs(v.conj().T @ v - np.eye(dim))) < 1e-12


def test_trace_norm_examples():
    rho = bloch_to_density(BlochVector(0.3, -0.2, 0.5))
    assert trace_norm(rho.mat) == pytest.approx(1.0, abs=1e-15)
    assert trace_norm(SIGMA_Z) == 2
    assert trace_norm(partial_transpose_first(BELL)) == pytest.approx(2.0, abs=1e-15)


@settings(max_examples=50)
@given(seeds)
def test_trace_norm_bounds_trace(seed):
    h = random_hermitian(np.random.default_rng(seed), 4)
    assert trace_norm(h) >= abs(np.trace(h).real) - 1e-12
    assert trace_norm(h) == pytest.approx(np.abs(np.linalg.eigvalsh(h)).sum(), rel=1e-12)


def test_commutator_examples():
    assert np.array_equal(commutator(SIGMA_Z, SIGMA_Z), np.zeros((2, 2)))
    assert np.allclose(commutator(SIGMA_X, SIGMA_Z), -2j * SIGMA_Y)
    assert np.array_equal(commutator(np.diag([0.3, 0.7]), np.diag([2.0, -1.0])), np.zeros((2, 2)))
    with pytest.raises(ValueError):
        commutator(I2, np.eye(3))


@settings(max_examples=50)
@given(seeds)
def test_commutator_antisymmetric(seed):
    rng = np.random.default_rng(seed)
    a, b = random_hermitian(rng, 4), random_hermitian(rng, 4)
    assert np.array_equal(commutator(a, b), -commutator(b, a))


def test_matrix_units():
    assert np.array_equal(matrix_unit(2, 0, 0), np.diag([1, 0]))
    assert np.array_equal(matrix_unit(2, 0, 0) + matrix_unit(2, 1, 1), np.eye(2))
    assert np.array_equal(matrix_unit(2, 0, 1) @ matrix_unit(2, 1, 0), matrix_unit(2, 0, 0))
    with pytest.raises(IndexError):
        matrix_unit(2, 2, 0)
    with pytest.raises(IndexError):
        matrix_unit(2, 0, -1)


def test_rejects_non_finite_entries():
    with pytest.raises(ValueError):
        adjoint(np.array([[np.nan, 0], [0, 1]]))
