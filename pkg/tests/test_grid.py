import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from gatedpcc.grid import Axis, SignalGrid, grid_from_csv, grid_from_json, grid_to_csv, grid_to_json, read_grid, write_grid


def small_grid(values=None, meta=None):
    a1 = Axis("w1", "cm-1", [12375.0, 12625.0])
    a2 = Axis("w2", "cm-1", [12620.0, 12880.0])
    vals = np.array([[1.0, -2.5e-7], [np.pi, np.nan]]) if values is None else values
    return SignalGrid(a1, a2, vals, meta or {"kind": "s2", "flag.dephasing": "active"})


def test_csv_layout():
    text = grid_to_csv(small_grid())
    lines = text.splitlines()
    header = [ln for ln in lines if ln.startswith("# ")]
    rows = [ln for ln in lines if not ln.startswith("#")]
    assert header[0] == "# grid_format=pcc-grid/1"
    assert "# flag.dephasing=active" in header
    assert rows[0] == "w1,w2,value"
    assert len(rows) == 5
    assert rows[1] == "12375,12620,1"
    assert rows[3] == "12625,12620,3.1415926535897931"
    assert rows[4].endswith(",nan")


@pytest.mark.parametrize("fmt", ["csv", "json"])
def test_round_trip(fmt, tmp_path):
    g = small_grid()
    path = write_grid(g, tmp_path / f"g.{fmt}", fmt)
    assert read_grid(path) == g


@settings(max_examples=30)
@given(arrays(np.float64, (3, 4), elements=st.floats(-1e300, 1e300, allow_nan=False)))
def test_round_trip_is_exact(vals):
    g = SignalGrid(Axis("t", "ps", [0.0, 0.1, 3.3]), Axis("w", "cm-1", [1.0, 2.0, 3.0, 4.0]), vals, {})
    assert grid_from_csv(grid_to_csv(g)) == g
    assert grid_from_json(grid_to_json(g)) == g


def test_one_axis_grid():
    g = SignalGrid(Axis("t", "ps", [0.0, 1.0, 2.0]), None, [1.0, 2.0, 3.0], {})
    assert g.values.shape == (3, 1)
    assert grid_from_csv(grid_to_csv(g)) == g
    assert grid_from_json(grid_to_json(g)) == g


def test_serialization_is_byte_stable():
    assert grid_to_csv(small_grid()) == grid_to_csv(small_grid())
    assert grid_to_json(small_grid()) == grid_to_json(small_grid())


def test_validation():
    with pytest.raises(ValueError):
        Axis("w", "cm-1", [2.0, 1.0])
    with pytest.raises(ValueError):
        small_grid(values=np.ones((3, 2)))
    with pytest.raises(ValueError):
        small_grid(values=np.array([[np.inf, 0.0], [0.0, 0.0]]))
    with pytest.raises(ValueError):
        grid_to_csv(small_grid(meta={"bad=key": "x"}))


def test_write_failure_names_path(tmp_path):
    target = tmp_path / "missing" / "out.csv"
    with pytest.raises(OSError, match="missing"):
        write_grid(small_grid(), target)


def test_argmax_ignores_masked():
    assert small_grid().argmax_abs() == (12625.0, 12620.0)
