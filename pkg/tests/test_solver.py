"""Equation-solver oracle: vectorized least squares over matrix constraints."""

import numpy as np
import pytest

from coreep.matrix import DEFAULT_TOL, adjoint, eq_residual, pinv
from coreep.solver import MatrixConstraint, affine, hermitian, solve_constraints
from conftest import random_complex

A11 = np.array([[1, 1], [0, 0]], dtype=complex)
I2 = np.eye(2)


def penrose_system(a):
    n = a.shape[0]
    eye = np.eye(n)
    return [
        affine([(a, a)], a),
        hermitian([(a, eye)]),
        hermitian([(eye, a)]),
    ]


def test_identity_coefficients_recover_target():
    target = np.array([[1, 2], [3, 4]], dtype=complex)
    res = solve_constraints((2, 2), [affine([(I2, I2)], target)])
    assert res.feasible
    assert res.residual <= 1e-12
    assert np.allclose(res.solution, target, atol=1e-12)


def test_penrose_half_matrix():
    # minimum-norm solution of the linear Penrose system is the
    # pseudoinverse: frozen expected value [[.5, 0], [.5, 0]]
    res = solve_constraints((2, 2), penrose_system(A11))
    assert res.feasible
    assert np.allclose(res.solution, [[0.5, 0.0], [0.5, 0.0]], atol=1e-10)


def test_infeasible_zero_system():
    zero = np.zeros((2, 2))
    res = solve_constraints((2, 2), [affine([(zero, zero)], I2)])
    assert not res.feasible
    assert res.residual == pytest.approx(np.sqrt(2.0))


def test_unique_solution_random_full_rank(rng):
    for _ in range(10):
        a = random_complex(rng, 4)
        res = solve_constraints((4, 4), penrose_system(a))
        assert res.feasible
        assert res.residual <= DEFAULT_TOL.eq_atol
        assert np.allclose(res.solution, np.linalg.inv(a), atol=1e-8)


def test_penrose_matches_pinv_rank_deficient(rng):
    for _ in range(10):
        a = random_complex(rng, 3)
        a[:, 0] = a[:, 1] * (1 + 1j)
        res = solve_constraints((3, 3), penrose_system(a))
        assert res.feasible
        assert eq_residual(res.solution, pinv(a)) <= 1e-9


def test_minimum_norm_property(rng):
    # pinning the returned solution with an extra constraint must not
    # reduce the residual
    a = random_complex(rng, 3)
    a[:, 2] = 0.0
    system = [affine([(a, a)], a), hermitian([(a, np.eye(3))])]
    first = solve_constraints((3, 3), system)
    pinned = system + [affine([(np.eye(3), np.eye(3))], first.solution)]
    second = solve_constraints((3, 3), pinned)
    assert second.residual >= first.residual - 1e-12
    assert eq_residual(second.solution, first.solution) <= 1e-9


def test_minimum_norm_among_feasible(rng):
    # any other feasible solution of an underdetermined system has larger norm
    a = random_complex(rng, 3)
    a[:, 0] = a[:, 1]
    res = solve_constraints((3, 3), [affine([(a, a)], a)])
    x0 = res.solution
    for _ in range(5):
        z = random_complex(rng, 3)
        other = x0 + z - pinv(a) @ a @ z @ a @ pinv(a)
        if eq_residual(a @ other @ a, a) <= 1e-8 and eq_residual(other, x0) > 1e-10:
            assert np.linalg.norm(other) >= np.linalg.norm(x0) - 1e-12


def test_hermitian_constraint_linearization(rng):
    # solving {L X = (L X)*} with an extra anchor equals direct reasoning:
    # X = L^{-1} H for Hermitian H; anchoring X fixes the answer
    l = random_complex(rng, 3)
    h = random_complex(rng, 3)
    h = h + adjoint(h)
    x_true = np.linalg.solve(l, h)
    res = solve_constraints(
        (3, 3),
        [hermitian([(l, np.eye(3))]), affine([(np.eye(3), np.eye(3))], x_true)],
    )
    assert res.feasible
    assert eq_residual(res.solution, x_true) <= 1e-9
    assert eq_residual(l @ res.solution, adjoint(l @ res.solution)) <= 1e-9


def test_multi_term_affine(rng):
    # Sylvester-style: A X + X B = C with known X
    a = random_complex(rng, 3)
    b = random_complex(rng, 3)
    x_true = random_complex(rng, 3)
    c = a @ x_true + x_true @ b
    eye = np.eye(3)
    res = solve_constraints((3, 3), [affine([(a, eye), (eye, b)], c)])
    assert res.feasible
    assert eq_residual(a @ res.solution + res.solution @ b, c) <= 1e-9


def test_validation_errors(rng):
    with pytest.raises(ValueError):
        solve_constraints((2, 2), [])
    with pytest.raises(ValueError):
        solve_constraints((2, 2), [affine([(np.eye(3), np.eye(2))], np.eye(3))])
    with pytest.raises(ValueError):
        MatrixConstraint("affine", ((np.eye(2), np.eye(2)),))  # missing target
    with pytest.raises(ValueError):
        MatrixConstraint("bogus", ((np.eye(2), np.eye(2)),))
    with pytest.raises(ValueError):  # nonsquare hermitian expression
        solve_constraints((3, 3), [hermitian([(random_complex(rng, 2, 3), np.eye(3))])])
