import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from holonomy import (
    HamiltonianSchedule,
    LambdaOneQubit,
    LambdaTwoQubit,
    PulseEnvelope,
    ValidationError,
    certify_optimality,
    drive_subspace,
    one_qubit_hamiltonian,
    two_qubit_hamiltonian,
)
from holonomy.gates import HADAMARD, gamma1, gamma2
from holonomy.lambda_system import one_qubit_coupling, one_qubit_frame, two_qubit_coupling, two_qubit_frame

ENVELOPES = [PulseEnvelope.square, PulseEnvelope.sin2]


def test_zero_envelope_gives_zero_schedule():
    env = PulseEnvelope.square(1.0, 0.0)
    for build, p in ((one_qubit_hamiltonian, LambdaOneQubit(0.3, 0.1)),
                     (two_qubit_hamiltonian, LambdaTwoQubit(0.3, 0.1))):
        sched = build(p, env, samples=11)
        assert np.allclose(sched.matrices, 0)


def test_envelope_areas():
    assert PulseEnvelope.square(2.0).area == pytest.approx(np.pi)
    assert PulseEnvelope.sin2(0.7, 2 * np.pi).area == pytest.approx(2 * np.pi)
    t = np.linspace(0, 1, 101)
    assert PulseEnvelope.custom(t, np.pi * np.ones_like(t)).area == pytest.approx(np.pi)
    with pytest.raises(ValidationError):
        PulseEnvelope.custom(t, -np.ones_like(t))


def test_hadamard_from_square_pulse():
    sched = one_qubit_hamiltonian(LambdaOneQubit(np.pi / 4, 0.0), PulseEnvelope.square(1.0))
    report = certify_optimality(sched, one_qubit_frame())
    assert np.linalg.norm(report.holonomy.matrix - HADAMARD) <= 1e-6


@pytest.mark.parametrize("make_env", ENVELOPES)
@pytest.mark.parametrize("alpha, beta", [(0.4, 0.0), (1.3, 2.2), (2.8, -0.9)])
def test_one_qubit_holonomy_and_optimality(make_env, alpha, beta):
    report = certify_optimality(one_qubit_hamiltonian(LambdaOneQubit(alpha, beta), make_env(1.0)), one_qubit_frame())
    assert np.linalg.norm(report.holonomy.matrix - gamma1(alpha, beta)) <= 1e-6
    assert report.bound == pytest.approx(np.pi, abs=1e-9)
    assert report.length == pytest.approx(np.pi, abs=1e-4)
    assert report.ratio == pytest.approx(1.0, abs=1e-3)
    assert report.optimal


@pytest.mark.parametrize("alpha, beta", [(0.6, 0.3), (2.0, -1.5)])
def test_two_qubit_holonomy_and_optimality(alpha, beta):
    report = certify_optimality(two_qubit_hamiltonian(LambdaTwoQubit(alpha, beta), PulseEnvelope.sin2(1.0)),
                                two_qubit_frame())
    assert np.linalg.norm(report.holonomy.matrix - gamma2(alpha, beta)) <= 1e-6
    assert report.length == pytest.approx(np.pi, abs=1e-4)
    assert report.ratio == pytest.approx(1.0, abs=1e-3)


def test_two_qubit_alpha_pi():
    report = certify_optimality(two_qubit_hamiltonian(LambdaTwoQubit(np.pi, 0.0), PulseEnvelope.square(1.0)),
                                two_qubit_frame())
    assert np.allclose(report.holonomy.matrix, np.diag([-1, 1, 1, 1]), atol=1e-6)


def test_envelope_invariance():
    p = LambdaOneQubit(1.1, 0.7)
    r_sq = certify_optimality(one_qubit_hamiltonian(p, PulseEnvelope.square(1.0)), one_qubit_frame())
    r_s2 = certify_optimality(one_qubit_hamiltonian(p, PulseEnvelope.sin2(1.0)), one_qubit_frame())
    assert np.linalg.norm(r_sq.holonomy.matrix - r_s2.holonomy.matrix) <= 1e-6
    assert r_sq.length == pytest.approx(r_s2.length, abs=1e-5)


def test_custom_envelope_with_area_pi():
    t = np.linspace(0, 2.0, 401)
    y = t * (2 - t)
    y *= np.pi / np.trapezoid(y, t)  # linear interpolation has area exactly pi
    env = PulseEnvelope.custom(t, y)
    p = LambdaOneQubit(0.9, 0.0)
    report = certify_optimality(one_qubit_hamiltonian(p, env), one_qubit_frame())
    assert env.area == pytest.approx(np.pi, rel=1e-12)
    assert np.linalg.norm(report.holonomy.matrix - gamma1(0.9, 0.0)) <= 1e-6


def test_double_area_traverses_twice():
    sched = one_qubit_hamiltonian(LambdaOneQubit(0.8, 0.5), PulseEnvelope.square(1.0, 2 * np.pi))
    report = certify_optimality(sched, one_qubit_frame())
    assert report.closure_residual <= 1e-8
    assert np.allclose(report.holonomy.matrix, np.eye(2), atol=1e-6)
    assert report.bound == 0.0
    assert report.length == pytest.approx(2 * np.pi, abs=1e-4)
    assert report.length / np.pi == pytest.approx(2.0, abs=1e-3)
    assert not report.optimal


@settings(max_examples=30, deadline=None)
@given(st.floats(0, 2 * np.pi), st.floats(-np.pi, np.pi))
def test_eigenstructure(alpha, beta):
    assert np.allclose(np.sort(np.linalg.eigvals(gamma1(alpha, beta)).real), [-1, 1], atol=1e-9)
    assert np.allclose(np.sort(np.linalg.eigvals(gamma2(alpha, beta)).real), [-1, 1, 1, 1], atol=1e-9)


@pytest.mark.parametrize("scheme", ["one", "two"])
def test_parallel_transport_along_lift(scheme):
    if scheme == "one":
        sched, frame = one_qubit_hamiltonian(LambdaOneQubit(1.2, 0.4), PulseEnvelope.sin2(1.0)), one_qubit_frame()
    else:
        sched, frame = two_qubit_hamiltonian(LambdaTwoQubit(1.2, 0.4), PulseEnvelope.sin2(1.0)), two_qubit_frame()
    curve, frames = drive_subspace(sched, frame, 2000)
    h = sched.at(curve.times)
    assert np.abs(frames.conj().transpose(0, 2, 1) @ h @ frames).max() <= 1e-8


def test_dark_state_count():
    p = LambdaOneQubit(0.7, 1.9)
    h = one_qubit_coupling(p)
    assert np.linalg.matrix_rank(h, tol=1e-10) == 2
    dark = np.array([p.omega1, -p.omega0, 0])
    assert np.allclose(h @ dark, 0, atol=1e-12)
    bright = np.array([np.conj(p.omega0), np.conj(p.omega1), 0])
    assert abs(h @ bright)[2] == pytest.approx(1.0)


def test_two_qubit_coupling_structure():
    h = two_qubit_coupling(LambdaTwoQubit(0.5, 0.2))
    assert np.allclose(h, h.conj().T)
    comp = [0, 1, 3, 4]
    assert np.allclose(h[np.ix_(comp, comp)], 0)


def test_driven_curve_is_rank_two_in_three_dims():
    sched = one_qubit_hamiltonian(LambdaOneQubit(0.2, 0.0), PulseEnvelope.square(1.0), samples=3)
    assert isinstance(sched, HamiltonianSchedule) and sched.dim == 3
