import json

import numpy as np
import pytest

import hexflow as hf
from conftest import (K_PANTS_R1, PANTS_DOC, disjoint_union,
                      fd_curvature_jacobian, sample_valid_states)


@pytest.fixture
def pants_r1(pants):
    return hf.state_from_radii(pants, [1.0, 1.0, 1.0])


class TestCurvature:
    def test_pants_equilateral(self, pants, pants_r1):
        k = hf.curvature(pants, pants_r1)
        assert np.allclose(k, K_PANTS_R1, rtol=1e-13)
        assert k[0] == k[1] == k[2]

    def test_relabeling_equivariance(self, pants):
        # rotate the boundary labels 1 -> 2 -> 3 -> 1
        doc = json.loads(json.dumps(PANTS_DOC))
        perm = {1: 2, 2: 3, 3: 1}
        for e in doc["edges"]:
            e["ends"] = [perm[v] for v in e["ends"]]
        for f in doc["faces"]:
            f["opposite_vertices"] = [perm[v] for v in f["opposite_vertices"]]
        permuted = hf.parse_mesh(json.dumps(doc))

        u = np.array([-0.3, -0.5, -0.7])
        k = hf.curvature(pants, hf.validate_state(pants, u))
        u_perm = np.empty(3)
        for src, dst in perm.items():
            u_perm[dst - 1] = u[src - 1]
        k_perm = hf.curvature(permuted, hf.validate_state(permuted, u_perm))
        for src, dst in perm.items():
            assert k_perm[dst - 1] == pytest.approx(k[src - 1], rel=1e-14)

    def test_doubling_mesh_concatenates(self, pants):
        double = hf.parse_mesh(json.dumps(disjoint_union(PANTS_DOC, PANTS_DOC)))
        u = np.array([-0.3, -0.5, -0.7])
        k = hf.curvature(pants, hf.validate_state(pants, u))
        k2 = hf.curvature(double, hf.validate_state(double, np.tile(u, 2)))
        assert np.array_equal(k2, np.tile(k, 2))

    def test_deterministic(self, pants):
        s = hf.validate_state(pants, [-0.31, -0.52, -0.73])
        assert np.array_equal(hf.curvature(pants, s), hf.curvature(pants, s))
        assert np.array_equal(hf.laplacian(pants, s), hf.laplacian(pants, s))

    def test_torus_single_component(self, torus):
        s = hf.state_from_radii(torus, [1.0])
        k = hf.curvature(torus, s)
        assert k.shape == (1,)
        # six corner slots all accumulate at the single boundary component
        assert k[0] == pytest.approx(3 * K_PANTS_R1, rel=1e-13)


class TestLaplacian:
    def test_equilateral_structure(self, pants, pants_r1):
        a = hf.laplacian(pants, pants_r1)
        assert np.allclose(np.diag(a), a[0, 0], rtol=1e-13)
        off = a[~np.eye(3, dtype=bool)]
        assert np.allclose(off, off[0], rtol=1e-13)

    @pytest.mark.parametrize("mesh_name", ["pants", "torus"])
    def test_matches_finite_differences(self, request, mesh_name):
        m = request.getfixturevalue(mesh_name)
        rng = np.random.default_rng(23)
        for s in sample_valid_states(m, 10, rng):
            a = hf.laplacian(m, s)
            fd = fd_curvature_jacobian(m, s.u)
            assert np.max(np.abs(a - fd) / np.abs(fd)) < 1e-6

    @pytest.mark.parametrize("mesh_name", ["pants", "torus"])
    def test_symmetric_negative_definite(self, request, mesh_name):
        m = request.getfixturevalue(mesh_name)
        rng = np.random.default_rng(29)
        for s in sample_valid_states(m, 100, rng):
            a = hf.laplacian(m, s)
            assert np.max(np.abs(a - a.T)) <= 1e-10
            assert np.max(np.linalg.eigvalsh(a)) < 0


class TestCalabiEnergy:
    def test_zero_at_target(self):
        assert hf.calabi_energy([1.0, 2.0], [1.0, 2.0]) == 0.0

    def test_single_coordinate(self):
        assert hf.calabi_energy([3.0, 2.0, 2.0], [2.0, 2.0, 2.0]) == 0.5

    def test_pants_value(self, pants, pants_r1):
        k = hf.curvature(pants, pants_r1)
        # 3/2 (K - 2)^2 at the equilateral state, oracle value from mpmath
        assert hf.calabi_energy(k, [2.0, 2.0, 2.0]) == pytest.approx(
            2.704769955990439e-04, rel=1e-10)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            hf.calabi_energy([1.0], [1.0, 2.0])


class TestRicciPotential:
    KBAR = np.array([2.0, 2.0, 2.0])

    def test_zero_at_anchor(self, pants, pants_r1):
        assert hf.ricci_potential(pants, pants_r1, pants_r1, self.KBAR) == 0.0

    def test_gradient_is_negative_residual(self, pants, pants_r1):
        rng = np.random.default_rng(31)
        h = 1e-4
        for s in sample_valid_states(pants, 5, rng, lo=-0.8, hi=-0.3):
            grad = np.empty(3)
            for j in range(3):
                up, um = s.u.copy(), s.u.copy()
                up[j] += h
                um[j] -= h
                ep = hf.ricci_potential(pants, hf.validate_state(pants, up),
                                        pants_r1, self.KBAR)
                em = hf.ricci_potential(pants, hf.validate_state(pants, um),
                                        pants_r1, self.KBAR)
                grad[j] = (ep - em) / (2 * h)
            expected = -(hf.curvature(pants, s) - self.KBAR)
            # norm-wise relative error: individual components may vanish
            assert np.max(np.abs(grad - expected)) < 1e-4 * np.max(np.abs(expected))

    def test_additivity_along_states(self, pants):
        s0 = hf.validate_state(pants, [-0.7, -0.7, -0.7])
        s1 = hf.validate_state(pants, [-0.5, -0.6, -0.4])
        s2 = hf.validate_state(pants, [-0.3, -0.8, -0.5])
        e01 = hf.ricci_potential(pants, s1, s0, self.KBAR)
        e12 = hf.ricci_potential(pants, s2, s1, self.KBAR)
        e02 = hf.ricci_potential(pants, s2, s0, self.KBAR)
        assert e01 + e12 == pytest.approx(e02, abs=1e-8)

    def test_strictly_convex_along_segment(self, pants):
        s0 = hf.validate_state(pants, [-0.8, -0.6, -0.5])
        s1 = hf.validate_state(pants, [-0.3, -0.4, -0.7])
        ts = np.linspace(0.0, 1.0, 9)
        vals = [hf.ricci_potential(
            pants, hf.validate_state(pants, s0.u + t * (s1.u - s0.u)), s0,
            self.KBAR) for t in ts]
        second = np.diff(vals, 2)
        assert np.all(second > 0)
