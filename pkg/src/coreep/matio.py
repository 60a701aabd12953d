"""Matrix file format shared by all tools.

A matrix is stored as the JSON object
``{"rows": n, "cols": n, "data": [[re, im], ...]}`` with ``data``
row-major of length ``n * n`` and every entry a 2-array of finite doubles.
Writers emit exactly this shape; readers reject anything else.  Doubles are
serialized with full round-trip precision, so written matrices re-parse to
bit-identical values.
"""

from __future__ import annotations

import json
import math
from typing import Any

import numpy as np

from .matrix import as_square


class MatrixFormatError(ValueError):
    """Raised when a matrix file does not match the required shape."""


def matrix_to_obj(a: np.ndarray) -> dict[str, Any]:
    arr = as_square(a)
    n = arr.shape[0]
    data = [[float(z.real), float(z.imag)] for z in arr.reshape(-1)]
    return {"rows": n, "cols": n, "data": data}


def matrix_from_obj(obj: Any) -> np.ndarray:
    if not isinstance(obj, dict):
        raise MatrixFormatError("matrix document must be a JSON object")
    if set(obj.keys()) != {"rows", "cols", "data"}:
        raise MatrixFormatError("matrix object must have exactly the keys rows, cols, data")
    rows, cols, data = obj["rows"], obj["cols"], obj["data"]
    for name, val in (("rows", rows), ("cols", cols)):
        if isinstance(val, bool) or not isinstance(val, int) or val < 1:
            raise MatrixFormatError(f"{name} must be a positive integer")
    if rows != cols:
        raise MatrixFormatError("only square matrices are supported")
    if not isinstance(data, list) or len(data) != rows * cols:
        raise MatrixFormatError(f"data must be a list of length rows*cols = {rows * cols}")
    out = np.empty(rows * cols, dtype=np.complex128)
    for i, entry in enumerate(data):
        if not isinstance(entry, list) or len(entry) != 2:
            raise MatrixFormatError(f"data[{i}] must be a 2-array [re, im]")
        re, im = entry
        for part in (re, im):
            if isinstance(part, bool) or not isinstance(part, (int, float)) or not math.isfinite(part):
                raise MatrixFormatError(f"data[{i}] entries must be finite doubles")
        out[i] = complex(re, im)
    return out.reshape(rows, cols)


def save_matrix(path: str, a: np.ndarray) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(matrix_to_obj(a), fh)
        fh.write("\n")


def load_matrix(path: str) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise MatrixFormatError(f"not valid JSON: {exc}") from exc
    return matrix_from_obj(obj)
