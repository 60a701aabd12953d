"""Dense complex matrix kernel.

Arithmetic, conjugate transpose, rank, Moore-Penrose pseudoinverse, matrix
powers, nilpotency and invertibility tests.  Matrices are plain complex128
numpy arrays validated by :func:`as_matrix`; all operations are pure
functions and every floating-point decision (rank, equality) is governed
solely by a :class:`ToleranceConfig`.

The rank-revealing factorization is a one-sided Jacobi SVD (see
``coreep.kernel``), deterministic for fixed input bits.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernel

_EPS = float(np.finfo(np.float64).eps)  # 2**-52


_RANK_RTOL_UNIT = 2.0**-36


@dataclass(frozen=True)
class ToleranceConfig:
    """Thresholds governing rank and matrix-equality decisions.

    ``rank_rtol=None`` selects the default ``n * 2**-36`` relative to the
    largest singular value, where ``n`` is the larger matrix dimension.
    The bare machine-precision cutoff ``n * 2**-52`` sits exactly at the
    rounding-noise floor of three-factor matrix products, where index
    decisions flicker; ``2**-36`` keeps a wide margin on both sides, since
    genuine core singular values of the matrices handled here stay at
    least five orders above it.

    Two matrices are considered equal when
    ``||X - Y||_F <= eq_atol + eq_rtol * max(||X||_F, ||Y||_F)``; this one
    rule is used everywhere.
    """

    rank_rtol: float | None = None
    eq_atol: float = 1e-10
    eq_rtol: float = 1e-8

    def __post_init__(self) -> None:
        for name in ("rank_rtol", "eq_atol", "eq_rtol"):
            val = getattr(self, name)
            if val is None:
                continue
            if not np.isfinite(val) or val < 0.0:
                raise ValueError(f"{name} must be a nonnegative finite real, got {val!r}")

    def rank_cutoff(self, shape: tuple[int, int], sigma_max: float) -> float:
        """Singular values above this cutoff count toward the rank."""
        rtol = self.rank_rtol if self.rank_rtol is not None else max(shape) * _RANK_RTOL_UNIT
        return rtol * sigma_max


DEFAULT_TOL = ToleranceConfig()


def as_matrix(a) -> np.ndarray:
    """Coerce to a 2-d complex128 array, rejecting empty or non-finite input."""
    arr = np.asarray(a, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"expected a nonempty 2-d matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix entries must be finite (no NaN/Inf)")
    return arr


def as_square(a) -> np.ndarray:
    arr = as_matrix(a)
    if arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    return arr


def fro(a: np.ndarray) -> float:
    """Frobenius norm."""
    return float(np.linalg.norm(a))


def eq_residual(x: np.ndarray, y: np.ndarray) -> float:
    return fro(np.asarray(x) - np.asarray(y))


def eq_bound(tol: ToleranceConfig, *mats: np.ndarray) -> float:
    scale = max((fro(m) for m in mats), default=0.0)
    return tol.eq_atol + tol.eq_rtol * scale


def mats_close(x: np.ndarray, y: np.ndarray, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """The one matrix-equality rule used throughout the package."""
    return eq_residual(x, y) <= eq_bound(tol, x, y)


def adjoint(a) -> np.ndarray:
    """Conjugate transpose (the involution of the *-algebra)."""
    return as_matrix(a).conj().T


def rank(a, tol: ToleranceConfig = DEFAULT_TOL) -> int:
    """Number of singular values exceeding ``rank_rtol * sigma_max``."""
    arr = as_matrix(a)
    s = kernel.singular_values(arr)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > tol.rank_cutoff(arr.shape, float(s[0]))))


def pinv(a, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Moore-Penrose pseudoinverse via the Jacobi SVD.

    Satisfies AXA=A, XAX=X, (AX)*=AX, (XA)*=XA within the equality
    tolerances; singular values at or below the rank cutoff are dropped.
    """
    arr = as_matrix(a)
    u, s, vh = kernel.svd(arr)
    if s.size == 0 or s[0] == 0.0:
        return np.zeros((arr.shape[1], arr.shape[0]), dtype=np.complex128)
    cutoff = tol.rank_cutoff(arr.shape, float(s[0]))
    inv = np.zeros_like(s)
    keep = s > cutoff
    inv[keep] = 1.0 / s[keep]
    return vh.conj().T @ (inv[:, None] * u.conj().T)


def power(a, k: int) -> np.ndarray:
    """Matrix power by repeated squaring, with ``A**0 = I``."""
    arr = as_square(a)
    if not isinstance(k, (int, np.integer)) or isinstance(k, bool) or k < 0:
        raise ValueError(f"exponent must be a nonnegative integer, got {k!r}")
    result = np.eye(arr.shape[0], dtype=np.complex128)
    base = arr.copy()
    e = int(k)
    while e:
        if e & 1:
            result = result @ base
        e >>= 1
        if e:
            base = base @ base
    return result


def power_flushed(a, k: int, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """A**k, flushed to the exact zero matrix when the quasinilpotency
    surrogate declares it zero: ``||A**k||_F <= eq_atol + eq_rtol *
    max(1, ||A||_F)**k``.

    Powers of a numerically nilpotent matrix consist of rounding noise at
    that scale; a purely relative rank rule would see such noise as full
    rank, so callers that feed powers into rank or pseudoinverse decisions
    use this form.  Consistent with :func:`is_nilpotent`: whenever that
    test declares A nilpotent with witness k, ``power_flushed(a, k)`` is
    exactly zero.
    """
    arr = as_square(a)
    p = power(arr, k)
    if k >= 1:
        base = max(1.0, fro(arr))
        if fro(p) <= tol.eq_atol + tol.eq_rtol * base**k:
            return np.zeros_like(p)
    return p


def is_nilpotent(a, tol: ToleranceConfig = DEFAULT_TOL) -> tuple[bool, int]:
    """Finite-dimensional quasinilpotency test.

    In C^{n x n} quasinilpotent is equivalent to nilpotent of index <= n;
    ``A**k`` is declared zero when
    ``||A**k||_F <= eq_atol + eq_rtol * max(1, ||A||_F)**k``.
    Returns ``(flag, witness)`` where witness is the smallest such k, or
    ``n + 1`` when the matrix is not nilpotent.
    """
    arr = as_square(a)
    n = arr.shape[0]
    base = max(1.0, fro(arr))
    p = arr.copy()
    for k in range(1, n + 1):
        if fro(p) <= tol.eq_atol + tol.eq_rtol * base**k:
            return True, k
        if k < n:
            p = p @ arr
    return False, n + 1


def min_singular_value(a) -> float:
    """Smallest singular value of a square matrix."""
    arr = as_square(a)
    return float(kernel.singular_values(arr)[-1])


def is_invertible(a, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Invertibility certificate: smallest singular value above the rank cutoff."""
    arr = as_square(a)
    s = kernel.singular_values(arr)
    if s[0] == 0.0:
        return False
    return float(s[-1]) > tol.rank_cutoff(arr.shape, float(s[0]))
