"""Matrix-core operations and their defining properties."""

import numpy as np
import pytest

from coreep.matrix import (
    DEFAULT_TOL,
    ToleranceConfig,
    adjoint,
    eq_residual,
    is_invertible,
    is_nilpotent,
    mats_close,
    min_singular_value,
    pinv,
    power,
    power_flushed,
    rank,
)
from coreep.harness import fixture_shift8
from conftest import random_complex

J2 = np.array([[0, 1], [0, 0]], dtype=complex)
A11 = np.array([[1, 1], [0, 0]], dtype=complex)


class TestToleranceConfig:
    def test_defaults(self):
        tol = ToleranceConfig()
        assert tol.rank_rtol is None
        assert tol.eq_atol == 1e-10 and tol.eq_rtol == 1e-8

    @pytest.mark.parametrize("kwargs", [
        {"rank_rtol": -1e-3},
        {"eq_atol": -1.0},
        {"eq_rtol": float("nan")},
        {"eq_atol": float("inf")},
    ])
    def test_rejects_bad_fields(self, kwargs):
        with pytest.raises(ValueError):
            ToleranceConfig(**kwargs)

    def test_explicit_rank_rtol_used(self):
        tol = ToleranceConfig(rank_rtol=0.5)
        assert rank(np.diag([1.0, 0.4]), tol) == 1


class TestAdjoint:
    def test_diagonal_conjugate(self):
        a = np.array([[1j, 0], [0, 1]], dtype=complex)
        assert np.array_equal(adjoint(a), np.array([[-1j, 0], [0, 1]]))

    def test_real_transpose(self):
        assert np.array_equal(adjoint(J2), np.array([[0, 0], [1, 0]]))

    def test_involution_and_product_reversal(self, rng):
        a = random_complex(rng, 3)
        b = random_complex(rng, 3)
        assert np.array_equal(adjoint(adjoint(a)), a)
        assert np.allclose(adjoint(a @ b), adjoint(b) @ adjoint(a))

    def test_rejects_nonfinite(self):
        with pytest.raises(ValueError):
            adjoint(np.array([[np.nan, 0], [0, 1]]))


class TestRank:
    def test_identity(self):
        assert rank(np.eye(4)) == 4

    def test_zero(self):
        assert rank(np.zeros((3, 3))) == 0

    def test_one_nonzero_row(self):
        assert rank(A11) == 1

    def test_rank_equals_adjoint_rank(self, rng):
        for _ in range(20):
            n = int(rng.integers(1, 7))
            a = random_complex(rng, n)
            if rng.uniform() < 0.5 and n > 1:
                a[:, -1] = a[:, 0]
            assert rank(a) == rank(adjoint(a))


class TestPinv:
    def test_invertible(self, rng):
        a = random_complex(rng, 4)
        assert np.allclose(pinv(a), np.linalg.inv(a), atol=1e-10)

    def test_zero(self):
        assert np.array_equal(pinv(np.zeros((3, 3))), np.zeros((3, 3)))

    def test_half_matrix_frozen_value(self):
        # independent derivation: A+ = A*(AA*)+; AA* = diag(2,0), so
        # A+ = [[.5,0],[.5,0]]; cross-checked by the equation-solver oracle
        # in test_solver.py
        expected = np.array([[0.5, 0.0], [0.5, 0.0]])
        assert np.allclose(pinv(A11), expected, atol=1e-14)

    def test_penrose_equations(self, rng):
        for _ in range(10):
            a = random_complex(rng, 5)
            if rng.uniform() < 0.5:
                a[:, 0] = a[:, 1]
            x = pinv(a)
            assert mats_close(a @ x @ a, a)
            assert mats_close(x @ a @ x, x)
            assert mats_close(adjoint(a @ x), a @ x)
            assert mats_close(adjoint(x @ a), x @ a)

    def test_double_pinv_restores(self, rng):
        a = random_complex(rng, 5)
        a[:, 2] = 0.0
        assert eq_residual(pinv(pinv(a)), a) <= 1e-10 * np.linalg.norm(a)


class TestPower:
    def test_zeroth_power(self, rng):
        a = random_complex(rng, 3)
        assert np.array_equal(power(a, 0), np.eye(3))

    def test_nilpotent_shift(self):
        assert np.array_equal(power(J2, 2), np.zeros((2, 2)))

    def test_cubed(self, rng):
        a = random_complex(rng, 4)
        assert np.allclose(power(a, 3), a @ a @ a)

    def test_exponent_addition(self, rng):
        a = random_complex(rng, 3) * 0.5
        assert mats_close(power(a, 5), power(a, 2) @ power(a, 3))

    def test_rejects_nonsquare_and_bad_exponent(self, rng):
        with pytest.raises(ValueError):
            power(random_complex(rng, 2, 3), 2)
        with pytest.raises(ValueError):
            power(np.eye(2), -1)
        with pytest.raises(ValueError):
            power(np.eye(2), 1.5)


class TestIsNilpotent:
    def test_strict_upper_triangular(self, rng):
        a = np.triu(random_complex(rng, 3), 1)
        flag, witness = is_nilpotent(a)
        assert flag and witness <= 3

    def test_identity(self):
        flag, witness = is_nilpotent(np.eye(4))
        assert not flag and witness == 5

    def test_shift8_fixture(self):
        # 8x8 truncation of the weighted shift with entries 1/3..1/9
        flag, witness = is_nilpotent(fixture_shift8())
        assert flag and witness <= 8

    def test_nilpotent_implies_zero_rank_power(self, rng):
        a = np.triu(random_complex(rng, 5), 1)
        flag, _ = is_nilpotent(a)
        assert flag
        assert rank(power_flushed(a, 5)) == 0


class TestMinSingularValue:
    def test_identity(self):
        assert min_singular_value(np.eye(5)) == pytest.approx(1.0)

    def test_zero(self):
        assert min_singular_value(np.zeros((2, 2))) == 0.0

    def test_diagonal(self):
        assert min_singular_value(np.diag([3.0, 0.5])) == pytest.approx(0.5)

    def test_invertibility_certificate(self, rng):
        a = random_complex(rng, 4)
        assert is_invertible(a)
        a[:, 0] = a[:, 1]
        assert not is_invertible(a)


class TestEqualityRule:
    def test_close_and_far(self):
        x = np.eye(3)
        assert mats_close(x, x + 1e-12)
        assert not mats_close(x, x + 1e-3)

    def test_scale_invariance(self, rng):
        x = random_complex(rng, 4) * 1e6
        assert mats_close(x, x * (1 + 1e-12))
