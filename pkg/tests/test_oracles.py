import math

import numpy as np
import pytest

from polylearn import (
    VPolytope,
    audit_answer,
    dist_to_hull,
    exact_oracle,
    find_consistent_needles,
    gen_lkp,
    gen_well_separated_polytope,
    needle_oracle,
    noisy_oracle,
    subset_smoothing_oracle,
)


def _unit(rng, d):
    g = rng.standard_normal(d)
    return g / np.linalg.norm(g)


def segment():
    return VPolytope(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_exact_oracle_argmax_and_tiebreak():
    oracle = exact_oracle(segment())
    assert np.allclose(oracle.query(np.array([1.0, 0.0])), [1.0, 0.0])
    # u = (0,1) ties both endpoints; lowest index wins
    assert np.allclose(oracle.query(np.array([0.0, 1.0])), [0.0, 0.0])


def test_exact_oracle_matches_vertex_scan():
    rng = np.random.default_rng(0)
    K = VPolytope(rng.standard_normal((4, 5)))
    oracle = exact_oracle(K)
    for _ in range(50):
        u = _unit(rng, 4)
        scores = u @ K.vertices.entries
        assert np.allclose(oracle.query(u), K.vertices.column(int(np.argmax(scores))))


def test_exact_oracle_rejects_non_unit():
    oracle = exact_oracle(segment())
    with pytest.raises(ValueError):
        oracle.query(np.array([2.0, 0.0]))
    with pytest.raises(ValueError):
        oracle.query(np.array([1.0, 0.0, 0.0]))


def test_exact_oracle_audits_at_zero_epsilon():
    rng = np.random.default_rng(1)
    K = VPolytope(rng.standard_normal((3, 6)))
    oracle = exact_oracle(K)
    for _ in range(50):
        u = _unit(rng, 3)
        audit = audit_answer(K, u, oracle.query(u), epsilon=0.0, tol=1e-9)
        assert audit.passed


def test_noisy_oracle_zero_epsilon_is_exact():
    rng = np.random.default_rng(2)
    K = VPolytope(rng.standard_normal((3, 4)))
    noisy = noisy_oracle(K, 0.0, seed=5)
    exact = exact_oracle(K)
    for _ in range(100):
        u = _unit(rng, 3)
        assert np.array_equal(noisy.query(u), exact.query(u))


def test_noisy_oracle_respects_contract():
    rng = np.random.default_rng(3)
    K = segment()
    eps = 0.05
    oracle = noisy_oracle(K, eps, seed=9)
    exact = exact_oracle(K)
    worst = 0.0
    for _ in range(1000):
        u = _unit(rng, 2)
        x = oracle.query(u)
        worst = max(worst, float(np.linalg.norm(x - exact.query(u))))
        audit = audit_answer(K, u, x, epsilon=eps, tol=1e-9)
        assert audit.passed
    assert worst <= eps * K.diameter() + 1e-12


def test_noisy_oracle_deterministic_per_query():
    K = segment()
    oracle = noisy_oracle(K, 0.3, seed=11)
    u1 = np.array([0.6, 0.8])
    u2 = np.array([-0.8, 0.6])
    a = oracle.query(u1).copy()
    b = oracle.query(u2).copy()
    # interleaved re-queries return bit-identical answers
    assert np.array_equal(oracle.query(u2), b)
    assert np.array_equal(oracle.query(u1), a)
    fresh = noisy_oracle(K, 0.3, seed=11)
    assert np.array_equal(fresh.query(u1), a)
    different_seed = noisy_oracle(K, 0.3, seed=12)
    assert not np.array_equal(different_seed.query(u1), a)


def test_noisy_oracle_epsilon_range():
    with pytest.raises(ValueError):
        noisy_oracle(segment(), 1.5, seed=0)


def test_subset_smoothing_top1_and_full_mean():
    A = np.array([[0.0, 2.0], [0.0, 0.0]])
    oracle = subset_smoothing_oracle(A, fraction=0.5)
    u = np.array([1.0, 0.0])
    assert np.allclose(oracle.query(u), [2.0, 0.0])
    full = subset_smoothing_oracle(A, fraction=1.0)
    for direction in ([1.0, 0.0], [0.0, 1.0], [-0.7, 0.2]):
        assert np.allclose(full.query(np.array(direction)), A.mean(axis=1))


def test_subset_smoothing_tie_break_lowest_index():
    A = np.array([[1.0, 1.0, 0.0], [0.0, 0.0, 5.0]])
    oracle = subset_smoothing_oracle(A, fraction=1 / 3)
    # columns 0 and 1 tie on u; stable order keeps column 0
    assert np.allclose(oracle.query(np.array([1.0, 0.0])), [1.0, 0.0])


def test_subset_smoothing_scale_equivariance():
    rng = np.random.default_rng(4)
    A = rng.standard_normal((3, 40))
    oracle = subset_smoothing_oracle(A, fraction=0.2)
    for _ in range(20):
        u = rng.standard_normal(3)
        assert np.array_equal(oracle.query(u), oracle.query(3.7 * u))


def test_subset_smoothing_answer_in_hull():
    rng = np.random.default_rng(5)
    A = rng.standard_normal((3, 30))
    oracle = subset_smoothing_oracle(A, fraction=0.25)
    for _ in range(10):
        u = _unit(rng, 3)
        d, _ = dist_to_hull(oracle.query(u), A, tol=1e-8)
        assert d <= 1e-7


def test_subset_smoothing_lkp_audit():
    # data-backed oracle audits against the true polytope with
    # eps = 4*sigma0/(diam*sqrt(w0)) on 1000 random directions
    M = gen_well_separated_polytope(20, 3, 0.4, seed=6)
    inst = gen_lkp(M, 400, 0.2, noise_scale=0.05, seed=7)
    oracle = subset_smoothing_oracle(inst.A, fraction=inst.w0)
    delta_k = inst.M.diameter()
    eps = 4.0 * inst.sigma0 / (delta_k * math.sqrt(inst.w0))
    rng = np.random.default_rng(8)
    for _ in range(1000):
        u = _unit(rng, 20)
        audit = audit_answer(inst.M, u, oracle.query(u), epsilon=eps, tol=1e-9)
        assert audit.passed


def test_needle_oracle_zero_answers_and_log():
    oracle = needle_oracle(50)
    rng = np.random.default_rng(9)
    for _ in range(100):
        assert not np.any(oracle.query(_unit(rng, 50)))
    assert oracle.query_count == 100
    assert oracle.queries.shape == (100, 50)


def test_needle_oracle_dim_floor():
    with pytest.raises(ValueError):
        needle_oracle(3)


def test_needle_consistency_small():
    d = 64
    oracle = needle_oracle(d)
    rng = np.random.default_rng(10)
    for _ in range(500):
        oracle.query(_unit(rng, d))
    log = oracle.queries
    needles = find_consistent_needles(log, d, count=2, seed=11)
    threshold = 4.0 * math.log(d) / math.sqrt(d)
    eps = 8.0 * math.log(d) / math.sqrt(d)
    for u in needles:
        assert float(np.abs(log.astype(np.float64) @ u).max()) <= threshold
        K = VPolytope(np.column_stack([-u, u]))
        for i in range(0, 500, 50):
            audit = audit_answer(K, log[i].astype(np.float64), np.zeros(d), epsilon=eps)
            assert audit.passed
    assert np.linalg.norm(needles[0] - needles[1]) >= 0.1
    assert np.linalg.norm(needles[0] + needles[1]) >= 0.1


def test_needle_answers_valid_for_any_direction_below_half_budget():
    # any needle direction u with max |u.v_i| <= eps*diam/2 keeps answer 0 valid
    d = 100
    eps = 8.0 * math.log(d) / math.sqrt(d)
    rng = np.random.default_rng(12)
    V = rng.standard_normal((20, d))
    V /= np.linalg.norm(V, axis=1, keepdims=True)
    for _ in range(10):
        u = _unit(rng, d)
        if float(np.abs(V @ u).max()) <= eps * 2.0 / 2.0:
            K = VPolytope(np.column_stack([-u, u]))
            for v in V:
                assert audit_answer(K, v, np.zeros(d), epsilon=eps).passed


def test_audit_detects_violations():
    K = segment()
    eps = 0.01
    u = np.array([1.0, 0.0])
    vertex = np.array([1.0, 0.0])
    # outward offset of 2*eps*diam breaks containment
    bad_far = vertex + np.array([2.0 * eps * K.diameter(), 0.0])
    audit = audit_answer(K, u, bad_far, epsilon=eps, tol=1e-9)
    assert not audit.passed and audit.containment_slack > 1e-9
    # second-best vertex with gap > eps*diam breaks optimality
    second = np.array([0.0, 0.0])
    audit2 = audit_answer(K, u, second, epsilon=eps, tol=1e-9)
    assert not audit2.passed and audit2.optimality_slack < -1e-9
    # gap here is exactly 1 - eps*diam
    assert audit2.optimality_slack == pytest.approx(-(1.0 - eps), abs=1e-12)


def test_audit_dimension_mismatch():
    with pytest.raises(ValueError):
        audit_answer(segment(), np.array([1.0, 0.0, 0.0]), np.zeros(3), 0.1)
