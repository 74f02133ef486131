"""Deterministic serialization: digit counts, round trips, stability."""
from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bisurf import serialization


def test_format_float_digit_counts():
    assert serialization.format_float(math.pi) == "3.1415926535897931"
    assert serialization.format_float(math.pi, 9) == "3.14159265"
    assert serialization.format_float(0.1) == "0.10000000000000001"


def test_format_float_rejects_non_finite():
    with pytest.raises(ValueError):
        serialization.format_float(float("nan"))
    with pytest.raises(ValueError):
        serialization.format_float(float("inf"))


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_json_float_round_trip_exact(x):
    """17 significant digits reproduce any IEEE double exactly."""
    assert float(serialization.format_float(x)) == x


def test_dumps_json_is_deterministic():
    obj = {"b": [1.0, 2.5, float(np.float64(0.3))], "a": {"nested": True}}
    assert serialization.dumps_json(obj) == serialization.dumps_json(obj)


def test_json_write_read_round_trip(tmp_path):
    obj = {
        "name": "demo",
        "values": [1.0, 1e-300, -2.75],
        "count": 3,
        "flag": False,
        "missing": None,
    }
    path = serialization.write_json(obj, tmp_path / "demo.json")
    assert serialization.read_json(path) == obj


def test_json_normalizes_numpy_types(tmp_path):
    obj = {
        "arr": np.arange(3, dtype=float),
        "scalar": np.float64(0.5),
        "int": np.int64(7),
        "flag": np.bool_(True),
    }
    loaded = serialization.read_json(
        serialization.write_json(obj, tmp_path / "np.json")
    )
    assert loaded == {"arr": [0.0, 1.0, 2.0], "scalar": 0.5, "int": 7, "flag": True}


def test_csv_round_trip(tmp_path):
    rows = [[0.0, 1.25], [0.5, -3.5]]
    path = serialization.write_csv(tmp_path / "t.csv", ["s", "v"], rows)
    header, data = serialization.read_csv(path)
    assert header == ["s", "v"]
    np.testing.assert_allclose(data, rows, rtol=1e-8)


def test_csv_significant_digits(tmp_path):
    path = serialization.write_csv(tmp_path / "d.csv", ["x"], [[math.pi]])
    body = path.read_text().splitlines()[1]
    assert body == "3.14159265"


def test_no_timestamps_in_output(tmp_path):
    """Identical inputs produce byte-identical files across writes."""
    obj = {"vals": [math.e, math.pi]}
    p1 = serialization.write_json(obj, tmp_path / "a.json")
    p2 = serialization.write_json(obj, tmp_path / "b.json")
    assert p1.read_bytes() == p2.read_bytes()
