import math

import numpy as np
import pytest

import camel_lab as cl


def test_state_round_trip():
    u = cl.sample_ball(3, 6, 1.5)
    assert u.order == 6
    assert cl.e_norm(u) <= 1.5
    assert cl.PhaseVector.from_csv(u.to_csv()) == u
    with pytest.raises(cl.ValidationError):
        cl.PhaseVector(1, [0.0], [0.0, 0.0, 0.0])
    with pytest.raises(ValueError):
        cl.f_theta_norm(u, 0.5)


def test_linear_block_is_symplectic():
    for j in (-3, 0, 2):
        m = cl.exp_block(j, 0.7)
        assert np.linalg.det(m) == pytest.approx(1.0, abs=1e-12)
    assert np.allclose(cl.exp_block(0, 2.0), [[1.0, 2.0], [0.0, 1.0]])


def test_zero_nonlinearity_flow_is_linear():
    u = cl.sample_ball(5, 4, 1.0)
    out = cl.flow_final(u, cl.NonlinearitySpec.zero(), 4, 1e-2, 1.0)
    assert cl.e_norm(out - cl.apply_exp_tJA(u, 1.0)) < 1e-12


def test_sine_gordon_gradient_bound():
    sg = cl.NonlinearitySpec.sine_gordon()
    for seed in range(20):
        u = cl.sample_ball(seed, 8, 10.0)
        assert cl.e_norm(cl.grad_h(sg, 0.0, u, cl.min_grid_size(8))) <= 1.0
    pi_state = cl.PhaseVector(0, [math.pi], [0.0])
    assert cl.h_value(sg, 0.0, pi_state, 4) == pytest.approx(2.0)


def test_strang_matches_picard():
    sg = cl.NonlinearitySpec.sine_gordon()
    u = cl.sample_ball(2, 4, 1.0)
    ref = cl.picard_mild(u, 0.5, sg, 4, 32, 1e-11)
    out = cl.flow_final(u, sg, 4, 1e-3, 0.5)
    assert cl.e_norm(out - ref) < 1e-5


def test_epsilon_curve_decreases():
    rep = cl.epsilon_curve(cl.NonlinearitySpec.sine_gordon(), 1.0, 1.0, [2, 4, 8], 20, 1, 32)
    iso = rep["isotonic_errors"]
    assert iso[0] >= iso[1] >= iso[2]
    assert rep["errors"][-1] < rep["errors"][0]


def test_geometry():
    center, radius = cl.min_enclosing_ball(np.array([[1.0, 1.0], [1.0, -1.0], [-1.0, 1.0], [-1.0, -1.0]]))
    assert radius == pytest.approx(math.sqrt(2.0))
    assert np.allclose(center, 0.0)
    assert cl.camel_bound(1.0, 0.0, 1.0, math.log(1.5)) == pytest.approx(2.0)
    assert cl.capacity("ball", 1.0) == pytest.approx((math.pi, math.pi))
    assert cl.capacity("coisotropic", n=3, k=1) == (0.0, 0.0)
    assert cl.capacity_table_consistent([0.5, 2.0])


def test_camel_experiment():
    rep = cl.camel_experiment(starts=8)
    assert len(rep["points"]) > 0
    assert rep["violations"] == 0 and rep["envelope_violations"] == 0
    assert rep["max_norm"] <= rep["bound"]
    assert all(len(z) == 2 for z in rep["reduced"])


def test_demos():
    rep = cl.displacement_demo(2000)
    assert rep["violations"] == 0
    assert rep["energy_bound"] == 2.0
    compose, inverse = cl.algebra_check(2)
    assert compose < 1e-6 and inverse < 1e-6


def test_maximize_mode_linear_optimum():
    state, value = cl.maximize_mode(cl.NonlinearitySpec.zero(), 1, 1.0, 1.0, 4, starts=2)
    sigma = np.linalg.svd(cl.exp_block(1, 1.0), compute_uv=False)[0]
    assert value == pytest.approx(sigma, rel=1e-4)
    assert state.order == 4
