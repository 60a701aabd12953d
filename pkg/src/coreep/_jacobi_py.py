"""Pure-Python one-sided Jacobi SVD, fallback for the compiled kernel.

Same cyclic sweep order and rotation formulas as ``coreep._jacobi``; results
may differ from the compiled path only by floating-point reassociation in
the column dot products.  Deterministic for fixed input bits.

Column squared norms are cached per sweep and updated through the exact
rotation identities (alpha' = alpha - t|g|, beta' = beta + t|g|), so each
pair visit costs one column dot product instead of three.
"""

from __future__ import annotations

import math

import numpy as np

_EPS = 2.220446049250313e-16
_MAX_SWEEPS = 60


def jacobi_svd(a: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """One-sided Jacobi SVD of a complex matrix with rows >= cols.

    Returns ``(u, s, vh)`` with ``s`` descending and ``a = (u * s) @ vh``.
    Columns of ``u`` belonging to zero singular values are zero vectors
    (reduced decomposition).
    """
    g, v = _sweeps(a, want_v=True)
    return _finish(g, v)


def jacobi_sv(a: np.ndarray) -> np.ndarray:
    """Descending singular values only; skips the transform accumulation."""
    g, _ = _sweeps(a, want_v=False)
    s = np.linalg.norm(g, axis=0)
    return np.sort(s)[::-1]


def _sweeps(a: np.ndarray, want_v: bool):
    m, n = a.shape
    if m < n:
        raise ValueError("jacobi_svd requires rows >= cols")
    g = np.array(a, dtype=np.complex128, order="F", copy=True)
    v = np.asfortranarray(np.eye(n, dtype=np.complex128)) if want_v else None
    thresh = m * _EPS
    for _ in range(_MAX_SWEEPS):
        rotated = False
        sq = np.einsum("ij,ij->j", g.real, g.real) + np.einsum("ij,ij->j", g.imag, g.imag)
        for p in range(n - 1):
            for q in range(p + 1, n):
                gp = g[:, p]
                gq = g[:, q]
                apq = complex(np.vdot(gp, gq))
                mag = abs(apq)
                if mag == 0.0 or mag <= thresh * math.sqrt(sq[p] * sq[q]):
                    continue
                rotated = True
                phase = apq / mag
                zeta = (sq[q] - sq[p]) / (2.0 * mag)
                sgn = 1.0 if zeta >= 0.0 else -1.0
                t = sgn / (abs(zeta) + math.hypot(1.0, zeta))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = c * t
                ph_c = phase.conjugate()
                new_p = c * gp - (s * ph_c) * gq
                g[:, q] = (s * phase) * gp + c * gq
                g[:, p] = new_p
                sq[p] -= t * mag
                sq[q] += t * mag
                if want_v:
                    vp = v[:, p].copy()
                    v[:, p] = c * vp - (s * ph_c) * v[:, q]
                    v[:, q] = (s * phase) * vp + c * v[:, q]
        if not rotated:
            break
    return g, v


def _finish(g: np.ndarray, v: np.ndarray):
    """Sort by descending column norm and normalize into (u, s, vh)."""
    m, n = g.shape
    s = np.linalg.norm(g, axis=0)
    order = np.argsort(-s, kind="stable")
    s = s[order]
    g = g[:, order]
    v = v[:, order]
    u = np.zeros((m, n), dtype=np.complex128)
    nz = s > 0.0
    u[:, nz] = g[:, nz] / s[nz]
    return u, s, v.conj().T
