"""Matrix JSON format: strict reading, full-precision round trips."""

import json

import numpy as np
import pytest

from coreep.matio import MatrixFormatError, load_matrix, matrix_from_obj, matrix_to_obj, save_matrix
from conftest import random_complex


def test_round_trip_bit_identical(tmp_path, rng):
    a = random_complex(rng, 5) * np.pi
    path = tmp_path / "a.json"
    save_matrix(str(path), a)
    b = load_matrix(str(path))
    assert np.array_equal(a, b)
    # a second write of the re-parsed matrix is byte-identical
    path2 = tmp_path / "b.json"
    save_matrix(str(path2), b)
    assert path.read_text() == path2.read_text()


def test_object_shape():
    obj = matrix_to_obj(np.array([[1 + 2j]]))
    assert obj == {"rows": 1, "cols": 1, "data": [[1.0, 2.0]]}


@pytest.mark.parametrize(
    "obj",
    [
        [],
        {},
        {"rows": 1, "cols": 1},
        {"rows": 1, "cols": 1, "data": [[0.0, 0.0]], "extra": 1},
        {"rows": 0, "cols": 0, "data": []},
        {"rows": True, "cols": 1, "data": [[0.0, 0.0]]},
        {"rows": 2, "cols": 1, "data": [[0.0, 0.0], [0.0, 0.0]]},  # nonsquare
        {"rows": 2, "cols": 2, "data": [[0.0, 0.0]]},  # wrong length
        {"rows": 1, "cols": 1, "data": [[0.0]]},  # not a 2-array
        {"rows": 1, "cols": 1, "data": [[0.0, "x"]]},
        {"rows": 1, "cols": 1, "data": [[0.0, float("nan")]]},
        {"rows": 1, "cols": 1, "data": [[0.0, float("inf")]]},
        {"rows": 1, "cols": 1, "data": [[0.0, True]]},
    ],
)
def test_reader_rejects_malformed(obj):
    with pytest.raises(MatrixFormatError):
        matrix_from_obj(obj)


def test_loader_rejects_invalid_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("not json at all")
    with pytest.raises(MatrixFormatError):
        load_matrix(str(p))


def test_reader_accepts_integer_entries(tmp_path):
    p = tmp_path / "ints.json"
    p.write_text(json.dumps({"rows": 1, "cols": 1, "data": [[1, 0]]}))
    assert load_matrix(str(p))[0, 0] == 1.0 + 0.0j
