import numpy as np
import pytest
from scipy.stats import unitary_group

from holonomy import Frame, HamiltonianSchedule


def random_hermitian(d, rng, scale=1.0):
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return scale * (a + a.conj().T) / 2


def random_unitary(n, rng):
    return unitary_group.rvs(n, random_state=rng) if n > 1 else np.exp(1j * rng.uniform(0, 2 * np.pi)) * np.eye(1)


def eig_expm(h, t):
    """exp(-i t h) from an independent eigendecomposition."""
    w, v = np.linalg.eigh(h)
    return v @ np.diag(np.exp(-1j * t * w)) @ v.conj().T


def qubit_loop(a, b, eps0=0.0, eps1=1.0):
    """The two-level example: constant diag(eps0, eps1) driving a|0> + b|1> for one period."""
    tau = 2 * np.pi / (eps1 - eps0)
    return HamiltonianSchedule.constant(np.diag([eps0, eps1]), tau), Frame(np.array([[a], [b]]))


def commensurate_loop(d, n, rng):
    """Constant H with integer spectrum, so every subspace returns at tau = 2 pi."""
    v = random_unitary(d, rng)
    h = v @ np.diag(rng.integers(-2, 3, size=d).astype(float)) @ v.conj().T
    f0 = np.linalg.qr(rng.normal(size=(d, n)) + 1j * rng.normal(size=(d, n)))[0]
    return HamiltonianSchedule.constant(h, 2 * np.pi), Frame(f0)


@pytest.fixture
def rng():
    return np.random.default_rng(20261014)
