import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qgeo.channels import (
    KrausChannel,
    amplitude_damping,
    apply,
    apply_to_tangent,
    depolarizing,
    identity_channel,
    phase_damping,
    random_channel,
    tp_residual,
    unitary_channel,
)
from qgeo.geometry import TangentVector, mc_wigner_yanase, metric_eval
from qgeo.matrixcore import SIGMA_X, SIGMA_Y, SIGMA_Z
from qgeo.states import BlochVector, DensityMatrix, bloch_to_density, density_to_bloch

from conftest import random_bloch, random_unitary

seeds = st.integers(min_value=0, max_value=2**32 - 1)
unit = st.floats(min_value=0, max_value=1)
WY = mc_wigner_yanase()


def bloch_of(m):
    return density_to_bloch(DensityMatrix(m)).as_array()


def test_identity_channel():
    rho = bloch_to_density(BlochVector(0.1, 0.2, 0.3)).mat
    assert np.array_equal(apply(identity_channel(), rho), rho)


def test_depolarizing_examples():
    assert np.allclose(apply(depolarizing(1.0), bloch_to_density(BlochVector(0.2, -0.5, 0.7)).mat), np.eye(2) / 2)
    rho = bloch_to_density(BlochVector(0.8, 0, 0)).mat
    assert np.allclose(bloch_of(apply(depolarizing(0.0), rho)), [0.8, 0, 0], atol=1e-15)
    assert np.allclose(bloch_of(apply(depolarizing(1.0), rho)), [0, 0, 0], atol=1e-15)
    assert np.allclose(bloch_of(apply(depolarizing(0.5), rho)), [0.4, 0, 0], atol=1e-15)


def test_amplitude_damping_examples():
    one = np.diag([0.0, 1.0])
    assert np.allclose(apply(amplitude_damping(1.0), one), np.diag([1, 0]))
    assert np.allclose(apply(amplitude_damping(0.36), one), np.diag([0.36, 0.64]), atol=1e-15)
    rho = bloch_to_density(BlochVector(0.3, 0.1, -0.2)).mat
    assert np.allclose(apply(amplitude_damping(0.0), rho), rho)
    assert np.allclose(apply(amplitude_damping(1.0), rho), np.diag([1, 0]), atol=1e-15)


def test_phase_damping_examples():
    rho = bloch_to_density(BlochVector(0.8, 0, 0)).mat
    assert np.allclose(apply(phase_damping(0.0), rho), rho)
    assert np.allclose(apply(phase_damping(1.0), bloch_to_density(BlochVector(1, 0, 0)).mat), np.eye(2) / 2)
    assert np.allclose(bloch_of(apply(phase_damping(0.5), rho)), [0.4, 0, 0], atol=1e-15)


@pytest.mark.parametrize("factory", [depolarizing, amplitude_damping, phase_damping])
def test_parameter_range(factory):
    for bad in (-0.1, 1.1):
        with pytest.raises(ValueError):
            factory(bad)


def test_random_channel_contract():
    for seed in range(50):
        ch = random_channel(seed)
        assert tp_residual(ch.kraus_ops) < 1e-12
        again = random_channel(seed)
        assert all(np.array_equal(a, b) for a, b in zip(ch.kraus_ops, again.kraus_ops))
        DensityMatrix(apply(ch, np.eye(2) / 2))


def test_channel_rejects_non_trace_preserving():
    with pytest.raises(ValueError):
        KrausChannel((0.5 * np.eye(2),))
    with pytest.raises(ValueError):
        KrausChannel(())
    with pytest.raises(ValueError):
        apply(identity_channel(), np.eye(4))


@settings(max_examples=50)
@given(seeds, unit)
def test_channels_preserve_states(seed, p):
    rng = np.random.default_rng(seed)
    rho = bloch_to_density(random_bloch(rng, 1.0)).mat
    for ch in (depolarizing(p), amplitude_damping(p), phase_damping(p), random_channel(seed)):
        assert tp_residual(ch.kraus_ops) < 1e-12
        out = apply(ch, rho)
        assert np.max(np.abs(out - out.conj().T)) < 1e-12
        assert abs(np.trace(out) - 1) < 1e-12
        assert np.linalg.eigvalsh(out).min() >= -1e-10


def test_apply_to_tangent_keeps_tracelessness():
    a = TangentVector(0.3 * SIGMA_X - 0.7 * SIGMA_Y + 0.2 * SIGMA_Z)
    mapped, removed = apply_to_tangent(amplitude_damping(0.4), a)
    assert removed < 1e-15
    assert abs(np.trace(mapped.mat)) < 1e-15


@settings(max_examples=80)
@given(seeds, st.floats(min_value=0, max_value=0.99))
def test_wy_contractivity(seed, p):
    rng = np.random.default_rng(seed)
    rho = bloch_to_density(random_bloch(rng, 0.95))
    coeffs = rng.standard_normal(3)
    a = TangentVector(coeffs[0] * SIGMA_X + coeffs[1] * SIGMA_Y + coeffs[2] * SIGMA_Z)
    k = metric_eval(rho, a, WY)
    for ch in (depolarizing(p), amplitude_damping(p), phase_damping(p), random_channel(seed)):
        mapped, _ = apply_to_tangent(ch, a)
        assert metric_eval(DensityMatrix(apply(ch, rho.mat)), mapped, WY) <= k + 1e-10


def test_unitary_channel_is_an_isometry(rng):
    for _ in range(50):
        rho = bloch_to_density(random_bloch(rng, 0.95))
        a = TangentVector(rng.standard_normal() * SIGMA_X + rng.standard_normal() * SIGMA_Z)
        ch = unitary_channel(random_unitary(rng, 2))
        mapped, _ = apply_to_tangent(ch, a)
        k0 = metric_eval(rho, a, WY)
        assert metric_eval(DensityMatrix(apply(ch, rho.mat)), mapped, WY) == pytest.approx(k0, abs=1e-9)
