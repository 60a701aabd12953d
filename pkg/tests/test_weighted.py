"""Weighted generalized inverses: fixture, reductions, routes, blocks."""

import numpy as np
import pytest

from coreep.classic import core, core_ep, drazin, index, one_three
from coreep.harness import fixture_expected, fixture_pair
from coreep.matrix import (
    DEFAULT_TOL,
    adjoint,
    eq_residual,
    fro,
    is_nilpotent,
    mats_close,
    pinv,
)
from coreep.weighted import (
    PreconditionViolation,
    WeightedPair,
    annihilator_equivalence,
    bc_inverse,
    block_triangular_core_ep,
    core_ep_decompose,
    polar_projection,
    w_core,
    w_core_ep_13w,
    w_core_ep_13w_candidates,
    w_core_ep_direct,
    w_core_ep_gdrazin,
    w_core_via_solver,
    w_gdrazin,
    w_one_three,
)
from conftest import pair_with, random_complex

J2 = np.array([[0, 1], [0, 0]], dtype=complex)


class TestWeightedPair:
    def test_validates_shapes(self, rng):
        with pytest.raises(ValueError):
            WeightedPair(random_complex(rng, 2), random_complex(rng, 3))
        with pytest.raises(ValueError):
            WeightedPair(random_complex(rng, 2, 3), np.eye(3))


class TestWGDrazin:
    def test_identity_weight_reduces_to_drazin(self, rng):
        for t in range(10):
            pr = pair_with(4, t % 4, "identity", seed=100 + t)
            cert = w_gdrazin(pr)
            assert cert.exists
            assert mats_close(cert.value, drazin(pr.A).value)

    def test_nilpotent_identity_weight(self):
        cert = w_gdrazin(WeightedPair(J2, np.eye(2)))
        assert np.allclose(cert.value, 0.0)

    def test_random_weighted_defining_equations(self):
        for t in range(10):
            pr = pair_with(5, 2, "random_invertible", seed=200 + t)
            a, w = pr.A, pr.W
            cert = w_gdrazin(pr)
            x = cert.value
            assert max(cert.residuals.values()) <= 1e-9 * max(1.0, fro(a) ** 2)
            assert mats_close(a @ w @ x, x @ w @ a)
            assert mats_close(x @ w @ a @ w @ x, x)
            flag, _ = is_nilpotent((a - a @ w @ x @ w @ a) @ w)
            assert flag


class TestWCore:
    def test_paper_fixture(self):
        pr = fixture_pair()
        cert = w_core(pr)
        assert cert.exists
        assert eq_residual(cert.value, fixture_expected()) <= 1e-10
        assert all(v <= 1e-10 for v in cert.residuals.values())
        assert eq_residual(pr.W @ pr.A @ pr.W @ cert.value, np.eye(2)) <= 1e-12

    def test_identity_weight_invertible(self, rng):
        a = random_complex(rng, 3)
        cert = w_core(WeightedPair(a, np.eye(3)))
        assert cert.exists
        assert np.allclose(cert.value, np.linalg.inv(a), atol=1e-8)

    def test_index_two_does_not_exist(self):
        cert = w_core(WeightedPair(J2, np.eye(2)))
        assert not cert.exists

    def test_identity_weight_equals_core(self, rng):
        for t in range(10):
            pr = pair_with(4, t % 2, "identity", seed=300 + t)
            assert mats_close(w_core(pr).value, core(pr.A).value)

    def test_oracle_route_agrees(self):
        for t in range(10):
            pr = pair_with(4, t % 2, "random_invertible", seed=400 + t)
            cert = w_core(pr)
            assert cert.exists
            assert eq_residual(cert.value, w_core_via_solver(pr)) <= 1e-8


class TestWOneThree:
    def test_identity_weight_gives_one_three(self, rng):
        a = random_complex(rng, 3)
        a[:, 0] = a[:, 1]
        cert = w_one_three(WeightedPair(a, np.eye(3)))
        assert cert.exists
        assert mats_close(a @ cert.value @ a, a)
        assert mats_close(adjoint(a @ cert.value), a @ cert.value)
        # minimum-norm representative coincides with the pseudoinverse
        assert eq_residual(cert.value, one_three(a).value) <= 1e-9

    def test_invertible_pair_feasible(self, rng):
        a = random_complex(rng, 3)
        w = random_complex(rng, 3)
        cert = w_one_three(WeightedPair(a, w))
        assert cert.exists
        assert max(cert.residuals.values()) <= 1e-8 * max(1.0, fro(a) * fro(w) ** 2)

    def test_gdrazin_value_is_feasible(self):
        pr = pair_with(5, 2, "random_invertible", seed=17)
        g = w_gdrazin(pr).value
        cert = w_one_three(WeightedPair(g, pr.W))
        assert cert.exists


class TestBCInverse:
    def test_invertible_identity_frames(self, rng):
        a = random_complex(rng, 3)
        cert = bc_inverse(a, np.eye(3), np.eye(3))
        assert cert.exists
        assert np.allclose(cert.value, np.linalg.inv(a), atol=1e-8)

    def test_zero_frames(self, rng):
        a = random_complex(rng, 3)
        zero = np.zeros((3, 3))
        cert = bc_inverse(a, zero, zero)
        assert cert.exists
        assert np.array_equal(cert.value, zero)

    def test_core_inverse_cross_check(self):
        # with frames ((AW)^D, ((WA)^D)*) applied to WAW, the (b,c)-inverse
        # recovers the w-core inverse for index <= 1 pairs
        for t in range(10):
            pr = pair_with(4, t % 2, "random_invertible", seed=500 + t)
            a, w = pr.A, pr.W
            wc = w_core(pr)
            assert wc.exists
            cert = bc_inverse(
                w @ a @ w, drazin(a @ w).value, adjoint(drazin(w @ a).value)
            )
            assert cert.exists
            assert eq_residual(cert.value, wc.value) <= 1e-8

    def test_shape_validation(self, rng):
        with pytest.raises(ValueError):
            bc_inverse(random_complex(rng, 2), np.eye(3), np.eye(2))


class TestThreeRoutes:
    def test_fixture_all_routes(self):
        pr = fixture_pair()
        expected = fixture_expected()
        for fn in (w_core_ep_direct, w_core_ep_gdrazin, w_core_ep_13w):
            cert = fn(pr)
            assert cert.exists
            assert eq_residual(cert.value, expected) <= 1e-10

    def test_identity_weight_reduces_to_core_ep(self):
        for t in range(10):
            pr = pair_with(4, t % 4, "identity", seed=600 + t)
            ep = core_ep(pr.A).value
            assert eq_residual(w_core_ep_direct(pr).value, ep) <= 1e-8

    def test_routes_agree_on_mixed_modes(self):
        for t, mode in enumerate(
            ("identity", "random_invertible", "random_singular") * 5
        ):
            pr = pair_with(2 + t % 5, t % 4, mode, seed=700 + t)
            d = w_core_ep_direct(pr).value
            g = w_core_ep_gdrazin(pr).value
            s = w_core_ep_13w(pr).value
            assert eq_residual(d, g) <= 1e-8
            assert eq_residual(d, s) <= 1e-8

    def test_statement_variant_differs_under_weight(self):
        # on the fixture the plain-square candidate misses the direct value
        pr = fixture_pair()
        cands = w_core_ep_13w_candidates(pr)
        direct = w_core_ep_direct(pr).value
        assert eq_residual(cands["(GW)^2 T"], direct) <= 1e-10
        assert eq_residual(cands["G^2 T"], direct) > 1e-2

    def test_uniqueness_perturbation_breaks_residuals(self, rng):
        # the defining system pins the value: a 1e-3 nudge in a random
        # direction must violate some defining equation by at least 1e-4
        pr = pair_with(4, 2, "random_invertible", seed=42)
        a, w = pr.A, pr.W
        cert = w_core_ep_direct(pr)
        x = cert.value
        k = max(index(a @ w), index(w @ a))
        awk = np.linalg.matrix_power(a @ w, k)
        def defining_residuals(xx):
            wxx = w @ xx
            wawx = w @ a @ w @ xx
            return (
                eq_residual(a @ wxx @ wxx, xx),
                eq_residual(adjoint(wawx), wawx),
                eq_residual(awk, xx @ w @ np.linalg.matrix_power(a @ w, k + 1)),
            )
        base = defining_residuals(x)
        for _ in range(5):
            d = random_complex(rng, 4)
            d = d / fro(d)
            bumped = defining_residuals(x + 1e-3 * d)
            assert max(b - a0 for a0, b in zip(base, bumped)) >= 1e-4


class TestDecomposition:
    def test_invertible_identity(self, rng):
        a = random_complex(rng, 3)
        dec = core_ep_decompose(WeightedPair(a, np.eye(3)))
        assert eq_residual(dec.z, a) <= 1e-8
        assert fro(dec.y) <= 1e-8

    def test_nilpotent_identity(self):
        dec = core_ep_decompose(WeightedPair(J2, np.eye(2)))
        assert fro(dec.z) <= 1e-12
        assert eq_residual(dec.y, J2) <= 1e-12

    def test_random_pairs_all_residuals(self):
        for t in range(10):
            pr = pair_with(6, 3, "random_invertible", seed=800 + t)
            dec = core_ep_decompose(pr)
            assert eq_residual(dec.z + dec.y, pr.A) == 0.0  # exact by construction
            assert dec.residuals["yWz=0"] <= 1e-8
            assert dec.residuals["(Wz)*(Wy)=0"] <= 1e-8
            assert dec.residuals["yW nilpotent"] <= 1e-8
            assert dec.residuals["yW witness"] <= pr.n
            assert dec.residuals["z has w-core inverse"] == 0.0
            assert dec.residuals["w-core(z)=w-core-EP(A)"] <= 1e-8


class TestPolar:
    def test_invertible_identity_gives_zero_projection(self, rng):
        a = random_complex(rng, 3)
        cert = polar_projection(WeightedPair(a, np.eye(3)), m_max=3)
        assert fro(cert.p) <= 1e-8
        for m, margin in enumerate(cert.invertibility_margins, start=1):
            ref = np.linalg.svd(np.linalg.matrix_power(a, m), compute_uv=False)[-1]
            assert margin == pytest.approx(ref, rel=1e-6, abs=1e-9)

    def test_nilpotent_identity_gives_identity_projection(self):
        cert = polar_projection(WeightedPair(J2, np.eye(2)), m_max=2)
        assert eq_residual(cert.p, np.eye(2)) <= 1e-10
        assert all(m > 1e-8 for m in cert.invertibility_margins)

    def test_random_pair_certificate(self):
        pr = pair_with(6, 2, "random_invertible", seed=900)
        cert = polar_projection(pr, m_max=pr.n)
        assert cert.projection_residual <= 1e-9
        assert cert.commute_residual <= 1e-8
        assert cert.nilpotency_witness <= pr.n
        assert all(m > 1e-8 for m in cert.invertibility_margins)
        assert isinstance(cert.complement_in_w_range, bool)

    def test_matches_direct_projection_form(self):
        # p agrees with I - WAW X by the idempotency of WAWX
        pr = pair_with(5, 2, "random_invertible", seed=901)
        cert = polar_projection(pr, m_max=2)
        x = w_core_ep_direct(pr).value
        p2 = np.eye(pr.n) - pr.W @ pr.A @ pr.W @ x
        assert eq_residual(cert.p, p2) <= 1e-8

    def test_rejects_bad_m_max(self):
        with pytest.raises(ValueError):
            polar_projection(fixture_pair(), m_max=0)


class TestAnnihilators:
    def test_zero_vector_all_true(self):
        pr = pair_with(4, 2, "random_invertible", seed=1000)
        got = annihilator_equivalence(pr, np.zeros((4, 4)))
        assert got == (True, True, True)

    def test_in_range_all_true(self, rng):
        pr = pair_with(5, 2, "random_invertible", seed=1001)
        wa = pr.W @ pr.A
        b = wa @ drazin(wa).value @ random_complex(rng, 5)
        assert annihilator_equivalence(pr, b) == (True, True, True)

    def test_out_of_range_all_false(self, rng):
        pr = pair_with(5, 2, "random_invertible", seed=1002)
        b = random_complex(rng, 5)
        got = annihilator_equivalence(pr, b)
        assert got == (False, False, False)


class TestBlockTriangular:
    def test_zero_corner_invertible_blocks(self, rng):
        a = random_complex(rng, 3)
        d = random_complex(rng, 3)
        w = np.eye(3)
        cert = block_triangular_core_ep(a, np.zeros((3, 3)), d, w)
        assert cert.exists
        expected = np.zeros((6, 6), dtype=complex)
        expected[:3, :3] = np.linalg.inv(a)
        expected[3:, 3:] = np.linalg.inv(d)
        assert eq_residual(cert.value, expected) <= 1e-8

    def test_invertible_a_nilpotent_d(self, rng):
        # (wa)^pi = 0 frees b; the nilpotent block kills the corner
        a = random_complex(rng, 2)
        b = random_complex(rng, 2)
        cert = block_triangular_core_ep(a, b, J2, np.eye(2))
        assert cert.exists
        expected = np.zeros((4, 4), dtype=complex)
        expected[:2, :2] = np.linalg.inv(a)
        assert eq_residual(cert.value, expected) <= 1e-8

    def test_in_range_corner_identity_weight(self, rng):
        pr_a = pair_with(3, 1, "identity", seed=1100)
        pr_d = pair_with(3, 2, "identity", seed=1101)
        a, d = pr_a.A, pr_d.A
        b = a @ drazin(a).value @ random_complex(rng, 3)
        cert = block_triangular_core_ep(a, b, d, np.eye(3))
        assert cert.exists
        assert cert.residuals["X=M^(od,W2) formula"] <= 1e-8

    def test_lower_variant(self, rng):
        pr_a = pair_with(3, 1, "identity", seed=1102)
        pr_d = pair_with(3, 1, "identity", seed=1103)
        a, d = pr_a.A, pr_d.A
        c = d @ drazin(d).value @ random_complex(rng, 3)
        cert = block_triangular_core_ep(a, c, d, np.eye(3), lower=True)
        assert cert.exists
        # lower-left corner populated, upper-right empty
        assert fro(cert.value[:3, 3:]) <= 1e-10

    def test_precondition_violation_raises(self, rng):
        pr_a = pair_with(3, 2, "identity", seed=1104)
        a = pr_a.A
        pi = np.eye(3) - a @ drazin(a).value
        b_bad = pi @ random_complex(rng, 3)
        assert fro(pi @ b_bad) > 1e-4
        with pytest.raises(PreconditionViolation):
            block_triangular_core_ep(a, b_bad, a.copy(), np.eye(3))
