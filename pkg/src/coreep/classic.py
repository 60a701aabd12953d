"""Unweighted generalized inverses.

Drazin index, Drazin, group, core, core-EP, (1,3)-inverse and spectral
projection, each with a residual certificate.  Every inverse also has an
independent oracle path (``*_via_solver``) that recovers it from a linear
defining system through the equation solver; range conditions are imposed
by the substitution X = A**k @ Y so the system stays linear with a unique
reconstruction.
"""

from __future__ import annotations

import numpy as np

from .certificate import InverseCertificate
from .matrix import (
    DEFAULT_TOL,
    ToleranceConfig,
    adjoint,
    as_square,
    eq_bound,
    eq_residual,
    fro,
    is_nilpotent,
    pinv,
    power,
    power_flushed,
    rank,
)
from .solver import affine, hermitian, solve_constraints


def _eq_entry(lhs: np.ndarray, rhs: np.ndarray, tol: ToleranceConfig) -> tuple[float, bool]:
    r = eq_residual(lhs, rhs)
    return r, r <= eq_bound(tol, lhs, rhs)


# Bounded memo for pure, frequently repeated computations (routes and
# certificates recompute indices and Drazin inverses of the same products).
# Results are treated as immutable by every caller.
_MEMO_LIMIT = 4096


def memo_key(tol: ToleranceConfig, *mats: np.ndarray):
    parts = [(tol.rank_rtol, tol.eq_atol, tol.eq_rtol)]
    parts.extend((m.shape[0], m.tobytes()) for m in mats)
    return tuple(parts)


def memoized(cache: dict, key, compute):
    hit = cache.get(key)
    if hit is not None:
        return hit
    value = compute()
    if len(cache) >= _MEMO_LIMIT:
        cache.clear()
    cache[key] = value
    return value


_INDEX_MEMO: dict = {}
_DRAZIN_MEMO: dict = {}


def index(a, tol: ToleranceConfig = DEFAULT_TOL) -> int:
    """Drazin index: smallest k >= 0 with rank(A**k) == rank(A**(k+1)).

    Powers that pass the quasinilpotency zero test count as rank 0, so a
    numerically nilpotent matrix reports its nilpotency index rather than
    the rank of rounding noise.
    """
    arr = as_square(a)
    return memoized(_INDEX_MEMO, memo_key(tol, arr), lambda: _index_impl(arr, tol))


def _index_impl(arr: np.ndarray, tol: ToleranceConfig) -> int:
    n = arr.shape[0]
    base = max(1.0, fro(arr))
    p = np.eye(n, dtype=np.complex128)
    r_prev = n
    for k in range(n + 1):
        p = p @ arr
        if fro(p) <= tol.eq_atol + tol.eq_rtol * base ** (k + 1):
            p = np.zeros_like(p)
            r_next = 0
        else:
            r_next = rank(p, tol)
        if r_next == r_prev:
            return k
        r_prev = r_next
    return n


def drazin(a, tol: ToleranceConfig = DEFAULT_TOL) -> InverseCertificate:
    """Drazin inverse via A**k (A**(2k+1))^+ A**k with k the Drazin index."""
    arr = as_square(a)
    k = index(arr, tol)
    ak = power_flushed(arr, k, tol)
    x = ak @ pinv(power_flushed(arr, 2 * k + 1, tol), tol) @ ak
    return _drazin_certificate(arr, x, tol)


def _drazin_certificate(arr: np.ndarray, x: np.ndarray, tol: ToleranceConfig) -> InverseCertificate:
    r_comm, ok_comm = _eq_entry(arr @ x, x @ arr, tol)
    r_inner, ok_inner = _eq_entry(x @ arr @ x, x, tol)
    y = arr - arr @ x @ arr
    nilp, witness = is_nilpotent(y, tol)
    residuals = {
        "AX=XA": r_comm,
        "XAX=X": r_inner,
        "A-AXA nilpotent": fro(power(y, min(witness, y.shape[0]))),
    }
    exists = ok_comm and ok_inner and nilp
    return InverseCertificate("drazin", x, residuals, exists)


def moore_penrose(a, tol: ToleranceConfig = DEFAULT_TOL) -> InverseCertificate:
    """Moore-Penrose pseudoinverse with the four-equation certificate."""
    arr = as_square(a)
    x = pinv(arr, tol)
    r1, ok1 = _eq_entry(arr @ x @ arr, arr, tol)
    r2, ok2 = _eq_entry(x @ arr @ x, x, tol)
    ax = arr @ x
    xa = x @ arr
    r3, ok3 = _eq_entry(adjoint(ax), ax, tol)
    r4, ok4 = _eq_entry(adjoint(xa), xa, tol)
    residuals = {"AXA=A": r1, "XAX=X": r2, "(AX)*=AX": r3, "(XA)*=XA": r4}
    return InverseCertificate("moore_penrose", x, residuals, ok1 and ok2 and ok3 and ok4)


def group(a, tol: ToleranceConfig = DEFAULT_TOL) -> InverseCertificate:
    """Group inverse; exists iff the Drazin index is at most 1."""
    arr = as_square(a)
    k = index(arr, tol)
    x = drazin(arr, tol).value
    r1, ok1 = _eq_entry(arr @ x @ arr, arr, tol)
    r2, ok2 = _eq_entry(x @ arr @ x, x, tol)
    r3, ok3 = _eq_entry(arr @ x, x @ arr, tol)
    residuals = {"AXA=A": r1, "XAX=X": r2, "AX=XA": r3}
    return InverseCertificate("group", x, residuals, k <= 1 and ok1 and ok2 and ok3)


def one_three(a, tol: ToleranceConfig = DEFAULT_TOL) -> InverseCertificate:
    """Canonical (1,3)-inverse: the Moore-Penrose pseudoinverse.

    The (1,3) family is infinite; the pseudoinverse is its minimum-norm
    member and gives a deterministic representative.
    """
    arr = as_square(a)
    x = pinv(arr, tol)
    r1, ok1 = _eq_entry(arr @ x @ arr, arr, tol)
    ax = arr @ x
    r2, ok2 = _eq_entry(adjoint(ax), ax, tol)
    return InverseCertificate("one_three", x, {"AXA=A": r1, "(AX)*=AX": r2}, ok1 and ok2)


def core(a, tol: ToleranceConfig = DEFAULT_TOL) -> InverseCertificate:
    """Core inverse A^# A A^+; exists iff the Drazin index is at most 1."""
    arr = as_square(a)
    k = index(arr, tol)
    x = drazin(arr, tol).value @ arr @ pinv(arr, tol)
    r1, ok1 = _eq_entry(arr @ x @ x, x, tol)
    ax = arr @ x
    r2, ok2 = _eq_entry(adjoint(ax), ax, tol)
    r3, ok3 = _eq_entry(x @ arr @ arr, arr, tol)
    residuals = {"AX^2=X": r1, "(AX)*=AX": r2, "XA^2=A": r3}
    return InverseCertificate("core", x, residuals, k <= 1 and ok1 and ok2 and ok3)


def core_ep(a, tol: ToleranceConfig = DEFAULT_TOL) -> InverseCertificate:
    """Core-EP inverse A^D A**k (A**k)^+ with k the Drazin index; always exists."""
    arr = as_square(a)
    k = index(arr, tol)
    ak = power_flushed(arr, k, tol)
    x = drazin(arr, tol).value @ ak @ pinv(ak, tol)
    r1, ok1 = _eq_entry(x @ arr @ x, x, tol)
    rk = rank(ak, tol)
    d_range = abs(rank(np.hstack([x, ak]), tol) - rk)
    d_rank = abs(rank(x, tol) - rk)
    d_adj = abs(rank(np.hstack([adjoint(x), ak]), tol) - rk)
    residuals = {
        "XAX=X": r1,
        "rank[X|A^k]=rank(A^k)": float(d_range),
        "rank(X)=rank(A^k)": float(d_rank),
        "rank[X*|A^k]=rank(A^k)": float(d_adj),
    }
    exists = ok1 and d_range == 0 and d_rank == 0 and d_adj == 0
    return InverseCertificate("core_ep", x, residuals, exists)


def spectral_projection(a, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Projection I - A A^D onto the nilpotent part along the core part."""
    arr = as_square(a)
    return np.eye(arr.shape[0], dtype=np.complex128) - arr @ drazin(arr, tol).value


def drazin_via_solver(a, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Oracle route: X = A**k @ Y where A**(2k+1) Y = A**k.

    The substitution forces range(X) inside range(A**k); any least-squares
    solution Y then reconstructs the same X = A^D.
    """
    arr = as_square(a)
    n = arr.shape[0]
    k = index(arr, tol)
    ak = power_flushed(arr, k, tol)
    eye = np.eye(n)
    res = solve_constraints((n, n), [affine([(power_flushed(arr, 2 * k + 1, tol), eye)], ak)], tol)
    return ak @ res.solution


def core_via_solver(a, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Oracle route for the core inverse: X = A @ Y with

    { A Y A^2 = A,  A^2 Y Hermitian }, i.e. the defining system
    {AX^2=X, (AX)*=AX, XA^2=A} with the range condition substituted.
    """
    arr = as_square(a)
    n = arr.shape[0]
    eye = np.eye(n)
    cons = [
        affine([(arr, arr @ arr)], arr),
        hermitian([(arr @ arr, eye)]),
    ]
    res = solve_constraints((n, n), cons, tol)
    return arr @ res.solution


def core_ep_via_solver(a, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Oracle route for the core-EP inverse: X = A**k @ Y where
    A**(k+1) Y = A**k (A**k)^+."""
    arr = as_square(a)
    n = arr.shape[0]
    k = index(arr, tol)
    ak = power_flushed(arr, k, tol)
    proj = ak @ pinv(ak, tol)
    res = solve_constraints((n, n), [affine([(power_flushed(arr, k + 1, tol), np.eye(n))], proj)], tol)
    return ak @ res.solution


def pinv_via_solver(a, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Oracle route for the pseudoinverse: minimum-norm solution of the
    linear Penrose equations {AXA=A, AX Hermitian, XA Hermitian}."""
    arr = as_square(a)
    n = arr.shape[0]
    eye = np.eye(n)
    cons = [
        affine([(arr, arr)], arr),
        hermitian([(arr, eye)]),
        hermitian([(eye, arr)]),
    ]
    return solve_constraints((n, n), cons, tol).solution
