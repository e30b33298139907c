import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import commensurate_loop, eig_expm, qubit_loop, random_unitary
from holonomy import (
    ClosureError,
    DimensionError,
    Frame,
    HamiltonianSchedule,
    PreconditionError,
    ProjectorCurve,
    ResolutionError,
    connection_form,
    drive_subspace,
    dynamical_operator,
    holonomy_from_any_lift,
    holonomy_of_curve,
    horizontal_lift,
    propagator,
)


def test_connection_form_examples():
    f = np.array([[1.0], [0.0]])
    assert np.allclose(connection_form(f, np.zeros((2, 1))), 0)
    assert np.allclose(connection_form(f, np.array([[1j], [0]])), [[1j]])
    assert np.allclose(connection_form(f, np.array([[0], [1.0]])), [[0]])


def test_connection_form_shape_mismatch():
    with pytest.raises(DimensionError):
        connection_form(np.eye(3)[:, :2], np.zeros((3, 1)))


def test_constant_curve_lift_and_holonomy(rng):
    f0 = np.linalg.qr(rng.normal(size=(4, 2)) + 0j)[0]
    p = f0 @ f0.conj().T
    curve = ProjectorCurve(np.linspace(0, 1, 11), np.repeat(p[None], 11, axis=0))
    lift = horizontal_lift(curve, f0)
    assert np.allclose(lift, f0, atol=1e-12)
    assert np.allclose(holonomy_of_curve(curve, f0).matrix, np.eye(2), atol=1e-12)


def test_qubit_loop_phase():
    b = np.sqrt(1 / 3)
    sched, f0 = qubit_loop(np.sqrt(2 / 3), b)
    curve, _ = drive_subspace(sched, f0, 2000)
    gamma = holonomy_of_curve(curve, f0).matrix[0, 0]
    assert abs(gamma - np.exp(2j * np.pi / 3)) <= 1e-6


def test_lift_is_horizontal_and_spans(rng):
    sched, f0 = commensurate_loop(4, 2, rng)
    curve, _ = drive_subspace(sched, f0, 2000)
    lift = horizontal_lift(curve, f0)
    assert np.allclose(lift @ lift.conj().transpose(0, 2, 1), curve.projectors, atol=1e-9)
    vel = np.gradient(lift, curve.times, axis=0, edge_order=2)
    a = np.array([connection_form(lift[i], vel[i]) for i in range(1, len(lift) - 1, 50)])
    assert np.abs(a).max() <= 1e-4


def test_any_lift_of_horizontal_frames_reduces_to_overlap(rng):
    sched, f0 = commensurate_loop(4, 2, rng)
    curve, _ = drive_subspace(sched, f0, 2000)
    lift = horizontal_lift(curve, f0)
    got = holonomy_from_any_lift(lift, curve.times).matrix
    assert np.linalg.norm(got - lift[0].conj().T @ lift[-1]) <= 1e-8


def test_vertical_motion_has_trivial_holonomy(rng):
    f0 = np.linalg.qr(rng.normal(size=(3, 2)) + 1j * rng.normal(size=(3, 2)))[0]
    v = random_unitary(2, rng)
    w = v @ np.diag([1j, -2j]) @ v.conj().T  # e^{2 pi W} = I
    t = np.linspace(0, 2 * np.pi, 801)
    frames = np.array([f0 @ eig_expm(1j * w, ti) for ti in t])
    assert np.allclose(holonomy_from_any_lift(frames, t).matrix, np.eye(2), atol=1e-10)


def test_non_horizontal_qubit_lift_gives_same_phase():
    a, b = np.sqrt(0.7), np.sqrt(0.3)
    sched, f0 = qubit_loop(a, b, 0.0, 1.0)
    curve, frames = drive_subspace(sched, f0, 2000)
    t = curve.times
    # re-gauge with a smooth phase that returns to itself
    twisted = frames * np.exp(1j * (np.sin(t) + 0.3 * np.cos(3 * t)))[:, None, None]
    expected = holonomy_of_curve(curve, f0).matrix
    got = holonomy_from_any_lift(twisted, t).matrix
    assert abs(got[0, 0] - np.exp(2j * np.pi * 0.3)) <= 1e-6
    assert np.linalg.norm(got - expected) <= 1e-6


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_lift_consistency(seed):
    rng = np.random.default_rng(seed)
    sched, f0 = commensurate_loop(4, 2, rng)
    curve, frames = drive_subspace(sched, f0, 2000)
    g_any = holonomy_from_any_lift(frames, curve.times).matrix
    g_hor = holonomy_of_curve(curve, f0).matrix
    assert np.linalg.norm(g_any - g_hor) <= 1e-6


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_gauge_covariance(seed):
    rng = np.random.default_rng(seed)
    sched, f0 = commensurate_loop(4, 2, rng)
    curve, _ = drive_subspace(sched, f0, 1000)
    v = random_unitary(2, rng)
    g = holonomy_of_curve(curve, f0).matrix
    gv = holonomy_of_curve(curve, f0.columns @ v).matrix
    assert np.abs(gv - v.conj().T @ g @ v).max() <= 1e-8


def test_holonomy_is_unitary(rng):
    for _ in range(5):
        sched, f0 = commensurate_loop(5, 2, rng)
        curve, _ = drive_subspace(sched, f0, 1000)
        g = holonomy_of_curve(curve, f0).matrix
        assert np.linalg.norm(g.conj().T @ g - np.eye(2)) <= 1e-8


def test_convergence_order(rng):
    sched, f0 = commensurate_loop(3, 1, rng)
    g = {m: holonomy_of_curve(drive_subspace(sched, f0, m)[0], f0).matrix for m in (200, 400, 800, 1600)}
    ref = (16 * g[1600] - g[800]) / 15
    e1, e2 = np.linalg.norm(g[200] - ref), np.linalg.norm(g[400] - ref)
    assert e1 / e2 >= 3.5


def test_lift_matches_polar_oracle_on_gentle_loop(rng):
    # the oracle F_{i+1} = polar(P_{i+1} F_i) is first order, so keep the loop short
    h = np.diag([0.0, 1.0, 2.0])
    f0 = Frame(np.array([[0.95], [0.3], [0.1j]]) / np.linalg.norm([0.95, 0.3, 0.1]))
    curve, _ = drive_subspace(HamiltonianSchedule.constant(h, 2 * np.pi), f0, 2000)
    lift = horizontal_lift(curve, f0)
    f = f0.columns
    for p in curve.projectors[1:]:
        u, _, vh = np.linalg.svd(p @ f, full_matrices=False)
        f = u @ vh
    assert np.linalg.norm(lift[-1] - f) <= 1e-4


def test_dynamical_operator_parallel_transport_is_identity():
    sched = HamiltonianSchedule.constant(np.array([[0, 1], [1, 0]]), np.pi)
    d = dynamical_operator(sched, np.array([[1.0], [0.0]]), 2000)
    assert np.allclose(d.matrix, np.eye(1), atol=1e-10)


def test_dynamical_operator_stationary_subspace():
    lam = np.array([0.3, 1.2, 2.5])
    tau = 1.7
    d = dynamical_operator(HamiltonianSchedule.constant(np.diag(lam), tau), np.eye(3)[:, :2], 100)
    assert np.allclose(d.matrix, np.diag(np.exp(-1j * lam[:2] * tau)), atol=1e-12)


def test_decomposition_identity(rng):
    sched, f0 = commensurate_loop(4, 2, rng)
    curve, _ = drive_subspace(sched, f0, 2000)
    gamma = holonomy_of_curve(curve, f0).matrix
    dyn = dynamical_operator(sched, f0, 2000).matrix
    u = propagator(sched, 2000)[-1]
    assert np.linalg.norm(f0.columns.conj().T @ u @ f0.columns - gamma @ dyn) <= 1e-6


def test_open_curve_raises_closure_error(rng):
    sched = HamiltonianSchedule.constant(np.array([[0, 1], [1, 0]]), 1.0)
    curve, _ = drive_subspace(sched, np.array([[1.0], [0.0]]), 100)
    with pytest.raises(ClosureError) as info:
        holonomy_of_curve(curve, np.array([[1.0], [0.0]]))
    assert info.value.residual > 0.1
    with pytest.raises(ClosureError):
        dynamical_operator(sched, np.array([[1.0], [0.0]]), 100)


def test_frame_must_span_initial_projector():
    sched, f0 = qubit_loop(np.sqrt(0.5), np.sqrt(0.5))
    curve, _ = drive_subspace(sched, f0, 100)
    with pytest.raises(PreconditionError):
        horizontal_lift(curve, np.array([[1.0], [0.0]]))


def test_coarse_sampling_raises_resolution_error():
    sched, f0 = qubit_loop(np.sqrt(0.5), np.sqrt(0.5))
    curve, _ = drive_subspace(sched, f0, 2)
    with pytest.raises(ResolutionError):
        horizontal_lift(curve, f0)
