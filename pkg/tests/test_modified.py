import json
import math

import numpy as np
import pytest

from grover_lab import (
    GroverLabError,
    ReducedState,
    apply_A_reduced,
    build_operators,
    decompose,
    lift_apply_A,
    make_instance,
    mismatch_probability,
    oracle_flip,
    random_instance,
    run_modified_known_m,
    solution_probability,
    uniform_state,
)
from grover_lab.modified import lift_apply_X, operators_from_angle, prepare_modified
from grover_lab.statevector import StateVector, recombine, split, subspace_basis

from conftest import random_unit_vector

# mpmath, 40 digits: cos^2(asin(1/4) - asin(sqrt(2)/4))
MISMATCH_16_1_2 = 0.98823360571811872474


def test_build_operators_n4():
    ops = build_operators(1, 4)
    assert ops.theta_assumed == pytest.approx(math.pi / 6, abs=1e-15)
    r3 = math.sqrt(3) / 2
    np.testing.assert_allclose(ops.A, [[0.5, -r3], [r3, 0.5]], atol=1e-15)
    np.testing.assert_allclose(ops.X, [[0.5, r3], [r3, -0.5]], atol=1e-15)
    np.testing.assert_array_equal(ops.O, [[1, 0], [0, -1]])


def test_build_operators_all_solutions_is_identity():
    ops = build_operators(8, 8)
    assert ops.theta_assumed == math.pi / 2
    np.testing.assert_array_equal(ops.A, np.eye(2))


@pytest.mark.parametrize("m, N", [(0, 4), (5, 4)])
def test_build_operators_bad_count(m, N):
    with pytest.raises(GroverLabError) as exc:
        build_operators(m, N)
    assert exc.value.code == "bad-count"


def test_operator_identities(rng):
    for _ in range(300):
        N = 2 ** int(rng.integers(1, 30))
        m = int(rng.integers(1, N + 1))
        ops = build_operators(m, N)
        assert np.abs(ops.X @ ops.O - ops.A).max() <= 1e-14
        for U in (ops.O, ops.X, ops.A):
            assert np.abs(U.T @ U - np.eye(2)).max() <= 1e-14
        # A is the rotation by pi/2 - theta
        k = math.pi / 2 - ops.theta_assumed
        rot = np.array([[math.cos(k), -math.sin(k)], [math.sin(k), math.cos(k)]])
        np.testing.assert_allclose(ops.A, rot, atol=1e-14)


def test_operator_dump():
    d = json.loads(build_operators(1, 4).to_json())
    assert set(d) == {"theta", "O", "X", "A"}
    assert d["O"] == [[1.0, 0.0], [0.0, -1.0]]


def test_apply_A_reduced_hits_solution_axis(rng):
    for _ in range(50):
        N = 2 ** int(rng.integers(1, 20))
        m = int(rng.integers(1, N + 1))
        ops = build_operators(m, N)
        out = apply_A_reduced(ops, ReducedState.from_angle(ops.theta_assumed))
        assert out.c0 == pytest.approx(0, abs=1e-12)
        assert out.c1 == pytest.approx(1, abs=1e-12)


def test_apply_A_reduced_identity_when_all_solutions():
    s = ReducedState(0.6, 0.8)
    assert apply_A_reduced(build_operators(4, 4), s) == s


def test_apply_A_reduced_mismatch():
    ops = build_operators(2, 16)
    out = apply_A_reduced(ops, ReducedState.from_angle(math.asin(0.25)))
    assert out.c1**2 == pytest.approx(MISMATCH_16_1_2, abs=1e-12)
    # direct 2x2 product, written out by hand
    st, ct = 0.25, math.sqrt(15) / 4
    sm, cm = math.sqrt(2) / 4, math.sqrt(14) / 4
    assert (cm * ct + sm * st) ** 2 == pytest.approx(MISMATCH_16_1_2, abs=1e-12)


@pytest.mark.parametrize("n, sols", [(2, {2}), (5, {0, 9, 31}), (10, {5, 9, 100}), (6, range(63))])
def test_lift_uniform_lands_on_uniform_solutions(n, sols):
    inst = make_instance(n, sols)
    out = lift_apply_A(uniform_state(n), inst, build_operators(inst.M, inst.N)).amplitudes
    np.testing.assert_allclose(out[inst.mask], 1 / math.sqrt(inst.M), atol=1e-10)
    np.testing.assert_allclose(out[~inst.mask], 0, atol=1e-10)


def test_lift_leaves_orthogonal_complement_alone():
    inst = make_instance(3, {0})
    psi = np.zeros(8, dtype=complex)
    psi[2], psi[5] = 1j / math.sqrt(2), -1j / math.sqrt(2)
    out = lift_apply_A(StateVector(psi), inst, build_operators(1, 8))
    np.testing.assert_allclose(out.amplitudes, psi, atol=1e-12)


def test_lift_is_unitary(rng):
    inst = random_instance(9, 13, seed=4)
    ops = build_operators(7, inst.N)
    for _ in range(20):
        u = random_unit_vector(rng, inst.N)
        v = random_unit_vector(rng, inst.N)
        lu = lift_apply_A(StateVector(u), inst, ops).amplitudes
        lv = lift_apply_A(StateVector(v), inst, ops).amplitudes
        assert abs(np.linalg.norm(lu) - 1) <= 1e-12
        assert abs(np.vdot(lu, lv) - np.vdot(u, v)) <= 1e-10


def test_lift_matches_dense_matrix(rng):
    # independent construction: A on span{alpha, beta}, identity on the complement
    inst = make_instance(4, {1, 6, 11})
    ops = build_operators(2, 16)
    alpha, beta = subspace_basis(inst)
    B = np.column_stack([alpha, beta])
    dense = np.eye(16) - B @ B.T + B @ ops.A @ B.T
    psi = random_unit_vector(rng, 16)
    out = lift_apply_A(StateVector(psi), inst, ops).amplitudes
    np.testing.assert_allclose(out, dense @ psi, atol=1e-12)


def test_lift_factorizes_as_X_after_oracle(rng):
    inst = random_instance(8, 6, seed=1)
    ops = build_operators(4, inst.N)
    for _ in range(10):
        a, b = random_unit_vector(rng, 2)
        psi = StateVector(recombine(a, b, np.zeros(inst.N), inst))
        via_A = lift_apply_A(psi, inst, ops).amplitudes
        via_XO = lift_apply_X(oracle_flip(psi, inst), inst, ops).amplitudes
        np.testing.assert_allclose(via_A, via_XO, atol=1e-12)


def test_lift_rejects_other_dimension():
    with pytest.raises(GroverLabError) as exc:
        lift_apply_A(uniform_state(3), make_instance(3, {1}), build_operators(1, 16))
    assert exc.value.code == "shape-error"


def test_mismatch_probability_examples():
    assert mismatch_probability(0.3, 0.3) == 1
    assert mismatch_probability(math.pi / 6, math.pi / 2) == pytest.approx(0.25, abs=1e-15)
    inst = make_instance(4, {3})
    state = prepare_modified(inst, 2)
    assert solution_probability(state, inst) == pytest.approx(MISMATCH_16_1_2, abs=1e-9)
    assert mismatch_probability(math.asin(0.25), math.asin(math.sqrt(2) / 4)) == pytest.approx(
        MISMATCH_16_1_2, abs=1e-12
    )


@pytest.mark.parametrize("seed", range(10))
def test_reduced_full_equivalence(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 13))
    N = 2**n
    inst = random_instance(n, int(rng.integers(1, N)) if N > 2 else 1, seed)
    m = int(rng.integers(1, N + 1))
    ops = build_operators(m, N)
    c = decompose(lift_apply_A(uniform_state(n), inst, ops), inst)
    red = apply_A_reduced(ops, ReducedState.from_angle(math.asin(math.sqrt(inst.M / N))))
    assert c.a == pytest.approx(red.c0, abs=1e-10)
    assert c.b == pytest.approx(red.c1, abs=1e-10)
    assert c.residual_norm <= 1e-10


def test_skewed_angle_loses_exactness():
    inst = make_instance(6, {10})
    ops = operators_from_angle(build_operators(1, 64).theta_assumed + 0.01, 64)
    p = solution_probability(lift_apply_A(uniform_state(6), inst, ops), inst)
    assert p == pytest.approx(math.cos(0.01) ** 2, abs=1e-12)


def test_run_known_m_n2():
    r = run_modified_known_m(make_instance(2, {2}), shots=100, seed=0)
    assert r.histogram == {2: 100}
    assert r.oracle_queries == 1 and r.iterations == 1
    assert r.step_count == 2 + 2


def test_run_known_m_three_solutions():
    shots = 10**4
    sols = [5, 9, 100]
    r = run_modified_known_m(make_instance(10, sols), shots=shots, seed=1)
    assert set(r.histogram) == set(sols)
    assert r.success_fraction == 1.0
    sigma = math.sqrt((1 / 3) * (2 / 3) / shots)
    for x in sols:
        assert abs(r.histogram[x] / shots - 1 / 3) <= 5 * sigma


def test_run_known_m_all_solutions():
    r = run_modified_known_m(make_instance(2, range(4)), shots=4000, seed=2)
    assert r.success_fraction == 1.0
    assert set(r.histogram) == {0, 1, 2, 3}
    sigma = math.sqrt(0.25 * 0.75 / 4000)
    assert all(abs(c / 4000 - 0.25) <= 5 * sigma for c in r.histogram.values())


def test_split_and_lift_do_not_mutate_input(rng):
    inst = random_instance(5, 3, seed=0)
    psi = random_unit_vector(rng, 32)
    s = StateVector(psi)
    split(s, inst)
    lift_apply_A(s, inst, build_operators(2, 32))
    np.testing.assert_array_equal(s.amplitudes, psi)
