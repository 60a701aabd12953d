"""Brute-force oracle for systems of linear matrix equations.

Solves systems of constraints on a single unknown matrix X:

* affine:     sum_i  L_i @ X @ R_i == C
* hermitian:  E(X) == E(X)*  for the affine expression E(X) = sum_i L_i @ X @ R_i

by vectorization into one real least-squares problem.  Affine constraints
use ``vec(L X R) = (R^T kron L) vec(X)`` (column-stacking vec); hermitian
constraints are linearized as ``E(X) - E(X)* = 0``, which is real-linear in
X.  Complex entries are split into real and imaginary parts, and the
minimum-norm least-squares solution of the stacked system is returned, so
underdetermined families (e.g. (1,3)-inverses) resolve to a deterministic
representative.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import lstsq

from .matrix import DEFAULT_TOL, ToleranceConfig, as_matrix, fro


@dataclass(frozen=True)
class MatrixConstraint:
    """One constraint on the unknown X.

    ``terms`` are (left, right) coefficient pairs of the affine expression
    ``E(X) = sum_i left_i @ X @ right_i``.  ``kind`` is ``"affine"``
    (``E(X) == target``) or ``"hermitian"`` (``E(X) == E(X)*``, target None).
    """

    kind: str
    terms: tuple[tuple[np.ndarray, np.ndarray], ...]
    target: np.ndarray | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("affine", "hermitian"):
            raise ValueError(f"unknown constraint kind {self.kind!r}")
        if not self.terms:
            raise ValueError("constraint needs at least one coefficient term")
        if self.kind == "affine" and self.target is None:
            raise ValueError("affine constraint needs a target")
        if self.kind == "hermitian" and self.target is not None:
            raise ValueError("hermitian constraint takes no target")


def affine(terms, target) -> MatrixConstraint:
    terms = tuple((as_matrix(l), as_matrix(r)) for l, r in terms)
    return MatrixConstraint("affine", terms, as_matrix(target))


def hermitian(terms) -> MatrixConstraint:
    terms = tuple((as_matrix(l), as_matrix(r)) for l, r in terms)
    return MatrixConstraint("hermitian", terms)


@dataclass(frozen=True)
class SolveResult:
    solution: np.ndarray
    residual: float
    feasible: bool


def _vec(m: np.ndarray) -> np.ndarray:
    return np.asarray(m).reshape(-1, order="F")


def _unvec(z: np.ndarray, shape: tuple[int, int]) -> np.ndarray:
    return z.reshape(shape, order="F")


def _transpose_perm(rows: int, cols: int) -> np.ndarray:
    """Permutation p with vec(X^T)[k] = vec(X)[p[k]] for X of given shape."""
    p = np.empty(rows * cols, dtype=np.intp)
    for i in range(rows):
        for j in range(cols):
            p[j + i * cols] = i + j * rows
    return p


def _check_terms(con: MatrixConstraint, shape: tuple[int, int]) -> tuple[int, int]:
    """Validate conformability; return the output shape of E(X)."""
    out = None
    for left, right in con.terms:
        if left.shape[1] != shape[0] or right.shape[0] != shape[1]:
            raise ValueError(
                f"coefficient shapes {left.shape} x {shape} x {right.shape} do not conform"
            )
        o = (left.shape[0], right.shape[1])
        if out is not None and o != out:
            raise ValueError("all terms of one constraint must produce the same shape")
        out = o
    if con.kind == "hermitian" and out[0] != out[1]:
        raise ValueError("hermitian constraint needs a square expression")
    if con.kind == "affine" and con.target.shape != out:
        raise ValueError(f"target shape {con.target.shape} does not match expression {out}")
    return out


def _expression(con: MatrixConstraint, x: np.ndarray) -> np.ndarray:
    e = None
    for left, right in con.terms:
        term = left @ x @ right
        e = term if e is None else e + term
    return e


def _kron_map(con: MatrixConstraint) -> np.ndarray:
    """Complex matrix M with vec(E(X)) = M @ vec(X)."""
    m = None
    for left, right in con.terms:
        k = np.kron(right.T, left)
        m = k if m is None else m + k
    return m


def _conj_map(con: MatrixConstraint, shape: tuple[int, int]) -> np.ndarray:
    """Complex matrix N with vec(E(X)*) = N @ conj(vec(X))."""
    m = None
    for left, right in con.terms:
        k = np.kron(left.conj(), right.conj().T)
        m = k if m is None else m + k
    perm = _transpose_perm(*shape)
    return m[:, np.argsort(perm)]


def _real_block(mc: np.ndarray) -> np.ndarray:
    """Real form of z -> M @ z acting on stacked [Re z; Im z]."""
    return np.block([[mc.real, -mc.imag], [mc.imag, mc.real]])


def _conj_block(nc: np.ndarray) -> np.ndarray:
    """Real form of z -> N @ conj(z) acting on stacked [Re z; Im z]."""
    return np.block([[nc.real, nc.imag], [nc.imag, -nc.real]])


def _fast_path(constraints) -> bool:
    """Single-term affine constraints with identity right coefficients.

    Such systems decouple column-by-column; the minimum-norm solution of
    the stacked complex system equals the minimum-norm solution of the
    vectorized real system, so the generic Kronecker assembly can be
    bypassed without changing the result.
    """
    for con in constraints:
        if con.kind != "affine" or len(con.terms) != 1:
            return False
        right = con.terms[0][1]
        if right.shape[0] != right.shape[1]:
            return False
        if not np.array_equal(right, np.eye(right.shape[0])):
            return False
    return True


def solve_constraints(
    shape: tuple[int, int],
    constraints: list[MatrixConstraint] | tuple[MatrixConstraint, ...],
    tol: ToleranceConfig = DEFAULT_TOL,
) -> SolveResult:
    """Minimum-norm least-squares solution X of the stacked constraint system.

    The reported residual is the Frobenius norm of the stacked constraint
    violation of the returned X, recomputed in matrix space.  ``feasible``
    means ``residual <= eq_atol + eq_rtol * max(input Frobenius norms)``.
    """
    if not constraints:
        raise ValueError("empty constraint list")
    rows, cols = shape
    if rows < 1 or cols < 1:
        raise ValueError(f"invalid unknown shape {shape}")
    for con in constraints:
        _check_terms(con, (rows, cols))

    # complete orthogonal factorization returns the minimum-norm solution
    # for the rank it detects; the machine-precision default cond is too
    # tight for degenerate stacked systems (the rank can be misjudged and a
    # non-minimal solution returned), so the truncation follows the same
    # relative rank rule used everywhere else in the package
    cond = tol.rank_rtol if tol.rank_rtol is not None else 2.0 * rows * cols * 2.0**-36
    if _fast_path(constraints):
        lhs = np.vstack([con.terms[0][0] for con in constraints])
        rhs = np.vstack([con.target for con in constraints])
        x, *_ = lstsq(lhs, rhs, cond=cond, lapack_driver="gelsy")
    else:
        blocks = []
        rhs_parts = []
        for con in constraints:
            mc = _kron_map(con)
            if con.kind == "affine":
                blocks.append(_real_block(mc))
                tv = _vec(con.target)
                rhs_parts.append(np.concatenate([tv.real, tv.imag]))
            else:
                nc = _conj_map(con, (rows, cols))
                blk = _real_block(mc) - _conj_block(nc)
                blocks.append(blk)
                rhs_parts.append(np.zeros(blk.shape[0]))
        a_real = np.vstack(blocks)
        b_real = np.concatenate(rhs_parts)
        z, *_ = lstsq(a_real, b_real, cond=cond, lapack_driver="gelsy")
        u, v = z[: rows * cols], z[rows * cols :]
        x = _unvec(u + 1j * v, (rows, cols))

    viol = 0.0
    inputs: list[np.ndarray] = []
    for con in constraints:
        e = _expression(con, x)
        other = con.target if con.kind == "affine" else e.conj().T
        viol += fro(e - other) ** 2
        for left, right in con.terms:
            inputs.extend((left, right))
        if con.target is not None:
            inputs.append(con.target)
    residual = float(np.sqrt(viol))
    scale = max((fro(m) for m in inputs), default=0.0)
    feasible = residual <= tol.eq_atol + tol.eq_rtol * scale
    return SolveResult(solution=np.ascontiguousarray(x), residual=residual, feasible=feasible)
