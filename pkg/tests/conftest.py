import numpy as np
import pytest

from qgeo.states import BlochVector


def random_hermitian(rng, dim, scale=1.0):
    x = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return scale * (x + x.conj().T) / 2


def random_bloch(rng, max_radius=0.95):
    d = rng.standard_normal(3)
    d /= np.linalg.norm(d)
    return BlochVector(*(max_radius * rng.uniform() ** (1 / 3) * d))


def random_unitary(rng, dim):
    # independent of qgeo.matrixcore.haar_unitary: exponentiate a random Hermitian
    w, v = np.linalg.eigh(random_hermitian(rng, dim, scale=3.0))
    return v @ np.diag(np.exp(1j * w)) @ v.conj().T


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(RESULTS, key=lambda s: s[7:9]):
            terminalreporter.write_line(line)
