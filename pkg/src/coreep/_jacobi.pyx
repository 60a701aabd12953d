# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled one-sided Jacobi SVD kernel.

Identical sweep order and rotation formulas to ``coreep._jacobi_py``; the
inner column updates run as C loops over Fortran-ordered memoryviews.
Column squared norms are cached per sweep and updated through the exact
rotation identities, so each pair visit costs one column dot product.
"""

import numpy as np

from libc.math cimport fabs, hypot, sqrt

from coreep._jacobi_py import _finish

_EPS = 2.220446049250313e-16
_MAX_SWEEPS = 60


def jacobi_svd(a):
    """One-sided Jacobi SVD of a complex matrix with rows >= cols.

    Returns ``(u, s, vh)`` with ``s`` descending and ``a = (u * s) @ vh``.
    Columns of ``u`` belonging to zero singular values are zero vectors.
    """
    g_arr, v_arr = _sweeps(a, True)
    return _finish(g_arr, v_arr)


def jacobi_sv(a):
    """Descending singular values only; skips the transform accumulation."""
    g_arr, _ = _sweeps(a, False)
    s = np.linalg.norm(g_arr, axis=0)
    return np.sort(s)[::-1]


def _sweeps(a, bint want_v):
    cdef Py_ssize_t m = a.shape[0]
    cdef Py_ssize_t n = a.shape[1]
    if m < n:
        raise ValueError("jacobi_svd requires rows >= cols")
    g_arr = np.array(a, dtype=np.complex128, order="F", copy=True)
    v_arr = np.asfortranarray(np.eye(n, dtype=np.complex128)) if want_v else None
    sq_arr = np.empty(n, dtype=np.float64)
    cdef double complex[::1, :] g = g_arr
    cdef double complex[::1, :] v = g_arr if v_arr is None else v_arr
    cdef double[::1] sq = sq_arr
    cdef double thresh = m * 2.220446049250313e-16
    cdef Py_ssize_t sweep, p, q, i
    cdef double mag, zeta, sgn, t, c, s, apq_re, apq_im
    cdef double complex apq, phase, ph_c, gp_i, gq_i, vp_i
    cdef bint rotated
    for sweep in range(_MAX_SWEEPS):
        rotated = False
        for i in range(n):
            sq[i] = 0.0
        for p in range(n):
            for i in range(m):
                gp_i = g[i, p]
                sq[p] += gp_i.real * gp_i.real + gp_i.imag * gp_i.imag
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq_re = 0.0
                apq_im = 0.0
                for i in range(m):
                    gp_i = g[i, p]
                    gq_i = g[i, q]
                    # conj(gp) * gq accumulated in parts
                    apq_re += gp_i.real * gq_i.real + gp_i.imag * gq_i.imag
                    apq_im += gp_i.real * gq_i.imag - gp_i.imag * gq_i.real
                mag = sqrt(apq_re * apq_re + apq_im * apq_im)
                if mag == 0.0 or mag <= thresh * sqrt(sq[p] * sq[q]):
                    continue
                rotated = True
                apq = apq_re + 1j * apq_im
                phase = apq / mag
                zeta = (sq[q] - sq[p]) / (2.0 * mag)
                sgn = 1.0 if zeta >= 0.0 else -1.0
                t = sgn / (fabs(zeta) + hypot(1.0, zeta))
                c = 1.0 / sqrt(1.0 + t * t)
                s = c * t
                ph_c = phase.conjugate()
                for i in range(m):
                    gp_i = g[i, p]
                    gq_i = g[i, q]
                    g[i, p] = c * gp_i - (s * ph_c) * gq_i
                    g[i, q] = (s * phase) * gp_i + c * gq_i
                sq[p] -= t * mag
                sq[q] += t * mag
                if want_v:
                    for i in range(n):
                        vp_i = v[i, p]
                        v[i, p] = c * vp_i - (s * ph_c) * v[i, q]
                        v[i, q] = (s * phase) * vp_i + c * v[i, q]
        if not rotated:
            break
    return g_arr, v_arr
