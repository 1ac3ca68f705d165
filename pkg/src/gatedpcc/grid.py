"""SignalGrid container and its CSV / JSON serializations."""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

GRID_FORMAT = "pcc-grid/1"


@dataclass(frozen=True)
class Axis:
    name: str
    unit: str
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 1 or vals.size < 1:
            raise ValueError(f"axis {self.name!r} must be a non-empty 1D array")
        if vals.size > 1 and not np.all(np.diff(vals) > 0):
            raise ValueError(f"axis {self.name!r} must be strictly increasing")
        object.__setattr__(self, "values", vals)

    def __eq__(self, other):
        return (
            isinstance(other, Axis)
            and self.name == other.name
            and self.unit == other.unit
            and np.array_equal(self.values, other.values)
        )


@dataclass(frozen=True)
class SignalGrid:
    """values[i, j] sits at (axis1[i], axis2[j]); one-axis grids carry values[i, 0] and axis2=None.

    NaN marks masked samples (undefined g2 ratios); every other value is finite.
    Metadata is a flat, ordered str -> str mapping.
    """

    axis1: Axis
    axis2: Axis | None
    values: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        n2 = 1 if self.axis2 is None else self.axis2.values.size
        if vals.ndim == 1 and self.axis2 is None:
            vals = vals[:, None]
        if vals.shape != (self.axis1.values.size, n2):
            raise ValueError(f"values shape {vals.shape} does not match axes ({self.axis1.values.size}, {n2})")
        if np.any(np.isinf(vals)):
            raise ValueError("grid values must be finite (NaN marks masked samples)")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "metadata", {str(k): str(v) for k, v in self.metadata.items()})

    @property
    def masked(self) -> np.ndarray:
        return np.isnan(self.values)

    def __eq__(self, other):
        return (
            isinstance(other, SignalGrid)
            and self.axis1 == other.axis1
            and self.axis2 == other.axis2
            and np.array_equal(self.values, other.values, equal_nan=True)
            and self.metadata == other.metadata
        )

    def argmax_abs(self):
        """(axis1 value, axis2 value) of the largest |value|, masked samples ignored."""
        mag = np.where(self.masked, -np.inf, np.abs(self.values))
        i, j = np.unravel_index(int(np.argmax(mag)), mag.shape)
        a2 = None if self.axis2 is None else float(self.axis2.values[j])
        return float(self.axis1.values[i]), a2


def _fmt(x: float) -> str:
    if math.isnan(x):
        return "nan"
    return "%.17g" % x


def _meta_line(key, value):
    if "\n" in key or "\n" in value or "=" in key:
        raise ValueError(f"metadata entry {key!r} cannot be written on one header line")
    return f"# {key}={value}\n"


def grid_to_csv(grid: SignalGrid) -> str:
    out = io.StringIO()
    out.write(_meta_line("grid_format", GRID_FORMAT))
    out.write(_meta_line("axis1", f"{grid.axis1.name} [{grid.axis1.unit}]"))
    if grid.axis2 is not None:
        out.write(_meta_line("axis2", f"{grid.axis2.name} [{grid.axis2.unit}]"))
    for k, v in grid.metadata.items():
        out.write(_meta_line(k, v))
    if grid.axis2 is None:
        out.write(f"{grid.axis1.name},value\n")
        for x, v in zip(grid.axis1.values, grid.values[:, 0]):
            out.write(f"{_fmt(x)},{_fmt(v)}\n")
    else:
        out.write(f"{grid.axis1.name},{grid.axis2.name},value\n")
        for i, x in enumerate(grid.axis1.values):
            for j, y in enumerate(grid.axis2.values):
                out.write(f"{_fmt(x)},{_fmt(y)},{_fmt(grid.values[i, j])}\n")
    return out.getvalue()


def _json_value(x):
    return None if math.isnan(x) else float(x)


def grid_to_json(grid: SignalGrid) -> str:
    doc = {
        "grid_format": GRID_FORMAT,
        "metadata": grid.metadata,
        "axis1": {"name": grid.axis1.name, "unit": grid.axis1.unit, "values": grid.axis1.values.tolist()},
        "axis2": None
        if grid.axis2 is None
        else {"name": grid.axis2.name, "unit": grid.axis2.unit, "values": grid.axis2.values.tolist()},
        "values": [[_json_value(v) for v in row] for row in grid.values],
    }
    return json.dumps(doc, indent=1, allow_nan=False) + "\n"


def _parse_axis_label(text):
    name, _, rest = text.partition(" [")
    return name, rest.rstrip("]")


def grid_from_csv(text: str) -> SignalGrid:
    meta = {}
    lines = text.splitlines()
    k = 0
    while k < len(lines) and lines[k].startswith("# "):
        key, _, value = lines[k][2:].partition("=")
        meta[key] = value
        k += 1
    if meta.pop("grid_format", None) != GRID_FORMAT:
        raise ValueError(f"not a {GRID_FORMAT} CSV file")
    header = lines[k].split(",")
    rows = np.array([[float(c) for c in ln.split(",")] for ln in lines[k + 1:] if ln], dtype=float)
    name1, unit1 = _parse_axis_label(meta.pop("axis1"))
    if len(header) == 2:
        return SignalGrid(Axis(name1, unit1, rows[:, 0]), None, rows[:, 1], meta)
    name2, unit2 = _parse_axis_label(meta.pop("axis2"))
    a1 = np.unique(rows[:, 0])
    a2 = np.unique(rows[:, 1])
    vals = rows[:, 2].reshape(a1.size, a2.size)
    return SignalGrid(Axis(name1, unit1, a1), Axis(name2, unit2, a2), vals, meta)


def grid_from_json(text: str) -> SignalGrid:
    doc = json.loads(text)
    if doc.get("grid_format") != GRID_FORMAT:
        raise ValueError(f"not a {GRID_FORMAT} JSON document")
    ax1 = doc["axis1"]
    ax2 = doc["axis2"]
    vals = np.array([[np.nan if v is None else v for v in row] for row in doc["values"]], dtype=float)
    return SignalGrid(
        Axis(ax1["name"], ax1["unit"], ax1["values"]),
        None if ax2 is None else Axis(ax2["name"], ax2["unit"], ax2["values"]),
        vals,
        doc["metadata"],
    )


def write_grid(grid: SignalGrid, path, fmt: str = "csv") -> Path:
    text = render_grid(grid, fmt)
    path = Path(path)
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write grid to {path}: {exc.strerror}") from exc
    return path


def render_grid(grid: SignalGrid, fmt: str = "csv") -> str:
    if fmt == "csv":
        return grid_to_csv(grid)
    if fmt == "json":
        return grid_to_json(grid)
    raise ValueError(f"unknown grid format {fmt!r} (csv or json)")


def read_grid(path) -> SignalGrid:
    text = Path(path).read_text(encoding="utf-8")
    if text.lstrip().startswith("{"):
        return grid_from_json(text)
    return grid_from_csv(text)
