"""Kernel selection for the rank-revealing factorization.

The package computes every rank, pseudoinverse and singular-value question
through a one-sided Jacobi SVD.  The compiled extension is preferred and
chosen once at import time; set ``COREEP_PURE_PYTHON=1`` to force the
pure-Python fallback.  Both implementations are deterministic for fixed
input bits.
"""

from __future__ import annotations

import os

import numpy as np

if os.environ.get("COREEP_PURE_PYTHON"):
    from . import _jacobi_py as _impl

    COMPILED = False
else:
    try:
        from . import _jacobi as _impl  # type: ignore[no-redef]

        COMPILED = True
    except ImportError:
        from . import _jacobi_py as _impl  # type: ignore[no-redef]

        COMPILED = False


def backend_name() -> str:
    return "compiled" if COMPILED else "python"


def svd(a: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Full one-sided Jacobi SVD ``(u, s, vh)`` of a 2-d complex array.

    Singular values are descending; wide matrices are handled by
    factoring the conjugate transpose and swapping the factors.
    """
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2:
        raise ValueError("svd expects a 2-d array")
    m, n = a.shape
    if m >= n:
        return _impl.jacobi_svd(a)
    u, s, vh = _impl.jacobi_svd(a.conj().T)
    return vh.conj().T, s, u.conj().T


def singular_values(a: np.ndarray) -> np.ndarray:
    """Descending singular values via the cheaper no-transform sweep."""
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2:
        raise ValueError("singular_values expects a 2-d array")
    m, n = a.shape
    return _impl.jacobi_sv(a if m >= n else a.conj().T)
