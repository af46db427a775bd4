import math

import numpy as np
import pytest

from polylearn import (
    LkpInstance,
    PointMatrix,
    VPolytope,
    dist_to_hull,
    fixtures,
    gen_lkp,
    gen_two_gaussian_mixture,
    gen_well_separated_polytope,
    spectral_norm,
    well_separation,
)


def test_spectral_norm_matches_dense_svd():
    rng = np.random.default_rng(0)
    for n in (20, 120, 500):
        B = rng.standard_normal((15, n))
        dense = float(np.linalg.svd(B, compute_uv=False)[0])
        assert spectral_norm(B) == pytest.approx(dense, rel=1e-4)
    assert spectral_norm(np.zeros((4, 7))) == 0.0


def test_gen_polytope_k2_and_target():
    K = gen_well_separated_polytope(5, 2, 0.9, seed=1)
    assert well_separation(K) == pytest.approx(1.0, abs=1e-9)
    K4 = gen_well_separated_polytope(2, 4, 0.2, seed=2)
    assert K4.count == 4 and K4.dim == 2  # coplanar, more than d+1 vertices allowed
    assert well_separation(K4) >= 0.2


def test_gen_polytope_budget_exhaustion():
    with pytest.raises(RuntimeError, match="attempts"):
        gen_well_separated_polytope(2, 6, 0.45, seed=3, max_attempts=25)


def test_gen_lkp_noiseless():
    M = gen_well_separated_polytope(6, 3, 0.4, seed=4)
    inst = gen_lkp(M, 200, 0.2, noise_scale=0.0, seed=5)
    assert inst.sigma0 == 0.0
    assert np.array_equal(inst.A.entries, inst.P.entries)
    inst.validate()


def test_gen_lkp_invariants_and_sigma0():
    M = gen_well_separated_polytope(10, 3, 0.4, seed=6)
    inst = gen_lkp(M, 300, 0.15, noise_scale=0.2, seed=7)
    inst.validate()
    expected = float(np.linalg.svd(inst.P.entries - inst.A.entries, compute_uv=False)[0])
    assert inst.sigma0 == pytest.approx(expected / math.sqrt(300), rel=1e-4)
    for ell, idx in enumerate(inst.cluster_sets):
        assert idx.size >= 0.15 * 300
        assert np.allclose(inst.P.entries[:, idx], M.vertices.entries[:, [ell]])
    for j in range(0, 300, 37):
        d, _ = dist_to_hull(inst.P.entries[:, j], M.vertices, tol=1e-8)
        assert d <= 1e-7 * M.diameter()


def test_gen_lkp_infeasible_layout():
    M = gen_well_separated_polytope(4, 3, 0.4, seed=8)
    with pytest.raises(ValueError, match="w0\\*k"):
        gen_lkp(M, 10, 0.5, 0.1, seed=9)


def test_gen_lkp_random_matrix_scale():
    # Gaussian noise: sigma0 lands near noise_scale*(sqrt(d)+sqrt(n))/sqrt(n)
    M = gen_well_separated_polytope(100, 3, 0.3, seed=10)
    inst = gen_lkp(M, 2000, 0.1, noise_scale=1.0, seed=11)
    typical = (math.sqrt(100) + math.sqrt(2000)) / math.sqrt(2000)
    assert 0.7 * typical <= inst.sigma0 <= 1.3 * typical


def test_two_gaussian_basic_properties():
    inst = gen_two_gaussian_mixture(100, 10_000, seed=12)
    assert inst.M.diameter() == pytest.approx(20.0, abs=1e-9)
    assert inst.sigma0 <= 3.0
    assert inst.w0 == 0.5
    sizes = sorted(idx.size for idx in inst.cluster_sets)
    assert sizes == [5000, 5000]
    # ambient ratio stays order-one while the projected pipeline still works
    ratio = inst.sigma0 / (inst.M.diameter() * math.sqrt(inst.w0))
    assert 0.02 <= ratio <= 1.0


def test_two_gaussian_requires_even_n():
    with pytest.raises(ValueError, match="even"):
        gen_two_gaussian_mixture(10, 11, seed=0)


def test_two_gaussian_custom_norm():
    inst = gen_two_gaussian_mixture(20, 400, v_norm=3.0, seed=13)
    assert inst.M.diameter() == pytest.approx(6.0, abs=1e-9)
    norms = np.linalg.norm(inst.M.vertices.entries, axis=0)
    assert np.allclose(norms, 3.0)


def test_fixtures_deterministic_and_shapes():
    fx1 = fixtures()
    fx2 = fixtures()
    assert set(fx1) == {
        "two-cluster",
        "two-rings",
        "square-plus-midpoint",
        "needle-pair",
        "example1-segment",
        "example2-sphere",
    }
    for name in fx1:
        assert np.array_equal(fx1[name].entries, fx2[name].entries)
    assert fx1["two-cluster"].count == 10
    assert fx1["two-rings"].count == 16
    assert fx1["square-plus-midpoint"].count == 5
    assert fx1["example1-segment"].dim == 50
    assert fx1["example2-sphere"].count == 16


def test_square_plus_midpoint_geometry():
    W = fixtures()["square-plus-midpoint"].entries
    v3, v4, v5 = W[:, 2], W[:, 3], W[:, 4]
    assert np.allclose(v5, (v3 + v4) / 2.0)


def test_segment_fixture_geometry():
    seg = fixtures()["example1-segment"]
    assert np.linalg.norm(seg.entries[:, 0] - seg.entries[:, 1]) == pytest.approx(1.0)


def test_sphere_fixture_geometry():
    sph = VPolytope(fixtures()["example2-sphere"])
    a = np.zeros(8)
    a[0] = 1.0
    d, _ = dist_to_hull(a, sph.vertices, tol=1e-8)
    assert d == pytest.approx(1.0, abs=1e-6)
    assert sph.diameter() == pytest.approx(2.0, abs=1e-12)


def test_validate_rejects_corruption():
    M = gen_well_separated_polytope(5, 3, 0.4, seed=14)
    inst = gen_lkp(M, 100, 0.2, noise_scale=0.1, seed=15)
    bad_P = inst.P.entries.copy()
    bad_P[:, 0] = M.vertices.column(0) * 10.0  # escape the hull
    corrupted = LkpInstance(
        M=inst.M,
        P=PointMatrix(bad_P),
        A=inst.A,
        w0=inst.w0,
        sigma0=inst.sigma0,
        cluster_sets=inst.cluster_sets,
    )
    with pytest.raises(ValueError):
        corrupted.validate()
