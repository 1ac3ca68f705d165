"""Scan recipes: parsing, validation and grid evaluation.

Recipes are TOML documents tagged ``format = "pcc-scan/1"``; the grammar is
documented in README.md. Every physical quantity is a string carrying its
unit ("3.3 ps", "18 cm-1"), so unit slips fail loudly instead of silently.
"""

from __future__ import annotations

import math
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields
from pathlib import Path

import numpy as np

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover - exercised on 3.10
    import tomli as tomllib

from . import __version__
from .chain import s1_chain, s1_fe_chain, s2_total_chain
from .grid import Axis, SignalGrid
from .model import TWO_PI_C, GateConfig, GateShape, TsjModel, reference_model
from .oracle import ConvergenceError, QuadratureSpec, integrate_s1, integrate_s2
from .signals import DetectorPair, g2_normalized_grid, g2_ratio, s1_closed, s2_total_grid

SCAN_FORMAT = "pcc-scan/1"
KINDS = ("s1", "s2", "g2", "s1_oracle", "s2_oracle")
S1_AXES = ("t", "w")
S2_AXES = ("w1", "w2", "t2", "delay")
AXIS_UNITS = {"t": "ps", "w": "cm-1", "w1": "cm-1", "w2": "cm-1", "t2": "ps", "delay": "ps"}

_FREQ_FIELDS = ("omega0", "omega1", "delta0", "delta1", "k_up", "k_down", "gamma_e", "gamma_f")
_PLAIN_FIELDS = ("mu_eg", "rho_ee0", "rho_ff0")
_QUAD_FIELDS = {f.name for f in fields(QuadratureSpec)}
_QUANTITY = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*([A-Za-z^\-0-9⁻¹]+)\s*$")
_FREQ_UNITS = {"cm-1", "cm^-1", "cm⁻¹"}
_TIME_UNITS = {"fs": 1e-3, "ps": 1.0}


@dataclass(frozen=True)
class Issue:
    field: str
    message: str
    line: int | None = None

    def __str__(self):
        where = f"line {self.line}: " if self.line else ""
        return f"{where}{self.field}: {self.message}"


class ScanValidationError(ValueError):
    def __init__(self, issues):
        self.issues = list(issues)
        super().__init__("invalid scan recipe:\n" + "\n".join(f"  - {i}" for i in self.issues))


class ScanConvergenceError(RuntimeError):
    def __init__(self, point, cause: ConvergenceError):
        self.point = point
        self.cause = cause
        where = ", ".join(f"{k}={v:.17g}" for k, v in point.items())
        super().__init__(f"oracle did not converge at {where}: {cause}")


@dataclass(frozen=True)
class AxisSpec:
    name: str
    values: tuple

    @property
    def unit(self):
        return AXIS_UNITS[self.name]


@dataclass(frozen=True)
class ScanSpec:
    kind: str
    model: TsjModel
    gates: tuple  # (det,) for s1 kinds, (det1, det2) for s2 kinds; axis centers are zero placeholders
    fixed: dict  # free variable -> value (ps or cm-1)
    axes: tuple  # one or two AxisSpec
    scale: float = 1.0
    quadrature: QuadratureSpec | None = None
    output: str | None = None
    output_format: str = "csv"
    description: str = ""
    source: str = field(default="", compare=False)

    @property
    def is_coincidence(self) -> bool:
        return self.kind in ("s2", "g2", "s2_oracle")


# --- parsing ---------------------------------------------------------------------

def _line_index(text):
    """Map 'table.key' (and table names) to 1-based line numbers."""
    index = {}
    table = ""
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.match(r"^\[\[?\s*([^\]]+?)\s*\]\]?$", line)
        if m:
            table = m.group(1).replace(" ", "")
            index.setdefault(table, no)
            continue
        m = re.match(r'^([A-Za-z0-9_\-"]+)\s*=', line)
        if m:
            key = m.group(1).strip('"')
            index.setdefault(f"{table}.{key}" if table else key, no)
    return index


class _Collector:
    def __init__(self, text):
        self.issues = []
        self.lines = _line_index(text)

    def add(self, path, message):
        line = self.lines.get(path)
        if line is None and "." in path:
            line = self.lines.get(path.rsplit(".", 1)[0])
        self.issues.append(Issue(path, message, line))


def _quantity(value, kind, path, col):
    if isinstance(value, bool) or not isinstance(value, str):
        example = '"3.3 ps"' if kind == "time" else '"18 cm-1"'
        col.add(path, f"expected a string with a {kind} unit, e.g. {example}")
        return None
    m = _QUANTITY.match(value)
    if not m:
        col.add(path, f"cannot read {value!r} as '<number> <unit>'")
        return None
    num, unit = float(m.group(1)), m.group(2)
    if kind == "frequency":
        if unit not in _FREQ_UNITS:
            col.add(path, f"unit {unit!r} is not a frequency unit; frequencies take cm-1 only")
            return None
        return num
    if unit not in _TIME_UNITS:
        col.add(path, f"unit {unit!r} is not a time unit; use fs or ps")
        return None
    return num * _TIME_UNITS[unit]


def _number(value, path, col, integer=False):
    if isinstance(value, bool) or not isinstance(value, (int, float)) or (integer and not isinstance(value, int)):
        col.add(path, f"expected {'an integer' if integer else 'a number'}, got {value!r}")
        return None
    return value


def _unknown(table, allowed, prefix, col):
    for key in table:
        if key not in allowed:
            col.add(f"{prefix}.{key}" if prefix else key, "unknown key")


def _parse_model(doc, col):
    tab = doc.get("model")
    if not isinstance(tab, dict):
        col.add("model", "missing [model] table")
        return None
    allowed = set(_FREQ_FIELDS) | set(_PLAIN_FIELDS) | {"preset", "dephasing"}
    _unknown(tab, allowed, "model", col)
    preset = tab.get("preset")
    values = {}
    if preset is not None:
        if preset != "reference":
            col.add("model.preset", f"unknown preset {preset!r} (only 'reference')")
        deph = tab.get("dephasing", True)
        if not isinstance(deph, bool):
            col.add("model.dephasing", "expected true or false")
            deph = True
        base = reference_model(dephasing=deph)
        values = {f.name: getattr(base, f.name) for f in fields(TsjModel)}
    elif "dephasing" in tab:
        col.add("model.dephasing", "only meaningful together with preset = 'reference'")
    for name in _FREQ_FIELDS:
        if name in tab:
            v = _quantity(tab[name], "frequency", f"model.{name}", col)
            if v is not None:
                values[name] = v
    for name in _PLAIN_FIELDS:
        if name in tab:
            v = _number(tab[name], f"model.{name}", col)
            if v is not None:
                values[name] = float(v)
    for name in ("omega0", "omega1", "delta0", "delta1"):
        if name not in values:
            col.add(f"model.{name}", "required (or use preset = 'reference')")
    if any(i.field.startswith("model") for i in col.issues):
        return None
    try:
        return TsjModel(**values)
    except ValueError as exc:
        col.add("model", str(exc))
        return None


def _parse_gate(tab, name, col, time_var, freq_var):
    """Returns (GateConfig with zero centers, {var: value or 'axis'})."""
    if not isinstance(tab, dict):
        col.add(name, f"missing [{name}] table")
        return None, {}
    allowed = {"shape", "sigma_t", "sigma_w", "w"} | ({"t"} if time_var else set())
    _unknown(tab, allowed, name, col)
    shape = tab.get("shape")
    try:
        shape = GateShape(shape)
    except ValueError:
        col.add(f"{name}.shape", f"expected one of {[s.value for s in GateShape]}, got {shape!r}")
        shape = None
    sigma_w = None
    if "sigma_w" not in tab:
        col.add(f"{name}.sigma_w", "required")
    else:
        sigma_w = _quantity(tab["sigma_w"], "frequency", f"{name}.sigma_w", col)
    sigma_t = None
    if shape is GateShape.PHYSICAL_SPECTRUM:
        if "sigma_t" in tab:
            col.add(f"{name}.sigma_t", "physical-spectrum gates take only sigma_w (the width Gamma)")
    elif "sigma_t" not in tab:
        if shape is not None:
            col.add(f"{name}.sigma_t", f"required for {shape.value} gates")
    else:
        sigma_t = _quantity(tab["sigma_t"], "frequency", f"{name}.sigma_t", col)
    centers = {}
    for key, var, kind in (("t", time_var, "time"), ("w", freq_var, "frequency")):
        if var is None:
            continue
        if key not in tab:
            col.add(f"{name}.{key}", "required: a value or \"axis\"")
            continue
        raw = tab[key]
        if raw == "axis":
            centers[var] = "axis"
        else:
            v = _quantity(raw, kind, f"{name}.{key}", col)
            if v is not None:
                centers[var] = v
    gate = None
    if shape is not None and sigma_w is not None and (sigma_t is not None or shape is GateShape.PHYSICAL_SPECTRUM):
        try:
            gate = GateConfig(shape, sigma_t, sigma_w)
        except ValueError as exc:
            col.add(name, str(exc))
    return gate, centers


def _parse_times(doc, col):
    tab = doc.get("times")
    if not isinstance(tab, dict):
        col.add("times", "missing [times] table (t2 and delay = t1 - t2)")
        return {}
    _unknown(tab, {"t2", "delay"}, "times", col)
    out = {}
    for key in ("t2", "delay"):
        if key not in tab:
            col.add(f"times.{key}", "required: a value or \"axis\"")
        elif tab[key] == "axis":
            out[key] = "axis"
        else:
            v = _quantity(tab[key], "time", f"times.{key}", col)
            if v is not None:
                if v < 0:
                    col.add(f"times.{key}", "must be >= 0")
                out[key] = v
    return out


def _parse_axes(doc, allowed, col):
    tab = doc.get("axes")
    if not isinstance(tab, dict) or not tab:
        col.add("axes", "missing [axes.<name>] tables")
        return []
    out = []
    for name, ax in tab.items():
        path = f"axes.{name}"
        if name not in allowed:
            col.add(path, f"axis {name!r} is not a free variable of this kind (allowed: {', '.join(allowed)})")
            continue
        if not isinstance(ax, dict):
            col.add(path, "expected a table")
            continue
        kind = "frequency" if AXIS_UNITS[name] == "cm-1" else "time"
        _unknown(ax, {"min", "max", "count", "values"}, path, col)
        if "values" in ax:
            if any(k in ax for k in ("min", "max", "count")):
                col.add(path, "give either values or min/max/count, not both")
            raw = ax["values"]
            if not isinstance(raw, list) or len(raw) < 2:
                col.add(f"{path}.values", "expected a list of at least 2 quantities")
                continue
            vals = [_quantity(v, kind, f"{path}.values", col) for v in raw]
            if any(v is None for v in vals):
                continue
            if any(b <= a for a, b in zip(vals, vals[1:])):
                col.add(f"{path}.values", "values must be strictly increasing")
                continue
            out.append(AxisSpec(name, tuple(vals)))
            continue
        lo = _quantity(ax.get("min"), kind, f"{path}.min", col) if "min" in ax else None
        hi = _quantity(ax.get("max"), kind, f"{path}.max", col) if "max" in ax else None
        count = _number(ax.get("count"), f"{path}.count", col, integer=True) if "count" in ax else None
        for key, v in (("min", lo), ("max", hi), ("count", count)):
            if key not in ax:
                col.add(f"{path}.{key}", "required")
        if lo is None or hi is None or count is None:
            continue
        ok = True
        if count < 2:
            col.add(f"{path}.count", "count must be >= 2")
            ok = False
        if not lo < hi:
            col.add(path, "min must be < max")
            ok = False
        if not ok:
            continue
        out.append(AxisSpec(name, tuple(np.linspace(lo, hi, count).tolist())))
    if len(tab) > 2:
        col.add("axes", f"{len(tab)} axes given; a scan has one or two")
    return out


def _parse_quadrature(doc, kind, col):
    tab = doc.get("quadrature")
    if tab is None:
        return QuadratureSpec() if kind.endswith("oracle") else None
    if not kind.endswith("oracle"):
        col.add("quadrature", "quadrature settings apply to oracle kinds only")
        return None
    if not isinstance(tab, dict):
        col.add("quadrature", "expected a table")
        return None
    _unknown(tab, _QUAD_FIELDS, "quadrature", col)
    kwargs = {k: v for k, v in tab.items() if k in _QUAD_FIELDS}
    try:
        return QuadratureSpec(**kwargs)
    except (ValueError, TypeError) as exc:
        col.add("quadrature", str(exc))
        return None


def parse_scan(text: str, source: str = "") -> ScanSpec:
    """Validate a recipe; raises ScanValidationError listing every problem found."""
    col = _Collector(text)
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        m = re.search(r"line (\d+)", str(exc))
        raise ScanValidationError([Issue("<document>", f"TOML syntax error: {exc}", int(m.group(1)) if m else None)])
    top = {"format", "kind", "description", "scale", "model", "detector", "detector1", "detector2",
           "times", "axes", "quadrature", "output"}
    _unknown(doc, top, "", col)
    if doc.get("format") != SCAN_FORMAT:
        col.add("format", f"expected format = {SCAN_FORMAT!r}, got {doc.get('format')!r}")
    kind = doc.get("kind")
    if kind not in KINDS:
        col.add("kind", f"expected one of {KINDS}, got {kind!r}")
        raise ScanValidationError(col.issues)
    scale = doc.get("scale", 1.0)
    if _number(scale, "scale", col) is None or not (math.isfinite(scale) and scale > 0):
        if not any(i.field == "scale" for i in col.issues):
            col.add("scale", "must be a positive finite number")
        scale = 1.0
    description = doc.get("description", "")
    if not isinstance(description, str):
        col.add("description", "expected a string")
        description = ""
    model = _parse_model(doc, col)
    coincidence = kind in ("s2", "g2", "s2_oracle")
    if coincidence:
        for stray in ("detector",):
            if stray in doc:
                col.add(stray, "coincidence kinds use [detector1] and [detector2]")
        g1, c1 = _parse_gate(doc.get("detector1"), "detector1", col, None, "w1")
        g2, c2 = _parse_gate(doc.get("detector2"), "detector2", col, None, "w2")
        gates = (g1, g2)
        centers = {**c1, **c2, **_parse_times(doc, col)}
        allowed = S2_AXES
    else:
        for stray in ("detector1", "detector2", "times"):
            if stray in doc:
                col.add(stray, "single-detector kinds use one [detector] table")
        g, centers = _parse_gate(doc.get("detector"), "detector", col, "t", "w")
        gates = (g,)
        allowed = S1_AXES
    axes = _parse_axes(doc, allowed, col)
    axis_names = [a.name for a in axes]
    placeholders = [k for k, v in centers.items() if v == "axis"]
    declared = doc.get("axes") if isinstance(doc.get("axes"), dict) else {}
    for name in placeholders:
        if name not in declared:
            col.add(_center_path(name), f"marked \"axis\" but no [axes.{name}] table is given")
    for name in axis_names:
        if name in centers and centers[name] != "axis":
            col.add(f"axes.{name}", f"{_center_path(name)} is fixed; set it to \"axis\" to scan it")
    if not kind.endswith("oracle"):
        for g in gates:
            if g is not None and g.shape is GateShape.GAUSSIAN:
                col.add("kind", f"Gaussian gates have no closed or separable form; use kind = \"{kind[:2]}_oracle\"")
                break
    if kind == "s2_oracle":
        for g in gates:
            if g is not None and g.shape is GateShape.GAUSSIAN:
                col.add("kind", "the coincidence oracle supports separable (Lorentzian, physical-spectrum) gates only")
                break
    if isinstance(centers.get("t"), float) and centers["t"] < 0:
        col.add("detector.t", "detection time must be >= 0")
    for ax in axes:
        if AXIS_UNITS[ax.name] == "ps" and ax.values[0] < 0:
            col.add(f"axes.{ax.name}", "times must be >= 0")
    quad = _parse_quadrature(doc, kind, col)
    output, out_fmt = None, "csv"
    if "output" in doc:
        tab = doc["output"]
        if not isinstance(tab, dict):
            col.add("output", "expected a table")
        else:
            _unknown(tab, {"path", "format"}, "output", col)
            output = tab.get("path")
            out_fmt = tab.get("format", "csv")
            if output is not None and not isinstance(output, str):
                col.add("output.path", "expected a string")
            if out_fmt not in ("csv", "json"):
                col.add("output.format", "expected 'csv' or 'json'")
    if col.issues:
        raise ScanValidationError(col.issues)
    fixed = {k: v for k, v in centers.items() if v != "axis"}
    return ScanSpec(kind, model, gates, fixed, tuple(axes), float(scale), quad, output, out_fmt, description, source)


def _center_path(var):
    return {
        "t": "detector.t", "w": "detector.w", "w1": "detector1.w", "w2": "detector2.w",
        "t2": "times.t2", "delay": "times.delay",
    }[var]


def load_scan(path) -> ScanSpec:
    path = Path(path)
    return parse_scan(path.read_text(encoding="utf-8"), source=str(path))


# --- evaluation --------------------------------------------------------------------

def _point_arrays(spec: ScanSpec):
    """Every free variable as an (n1, n2) array."""
    a1 = np.asarray(spec.axes[0].values, dtype=float)
    a2 = np.asarray(spec.axes[1].values, dtype=float) if len(spec.axes) > 1 else np.zeros(1)
    shape = (a1.size, a2.size)
    names = S2_AXES if spec.is_coincidence else S1_AXES
    out = {}
    for name in names:
        if name == spec.axes[0].name:
            out[name] = np.broadcast_to(a1[:, None], shape).copy()
        elif len(spec.axes) > 1 and name == spec.axes[1].name:
            out[name] = np.broadcast_to(a2[None, :], shape).copy()
        else:
            out[name] = np.full(shape, float(spec.fixed[name]))
    return out


def evaluation_method(spec: ScanSpec) -> str:
    if spec.kind.endswith("oracle"):
        return "oracle"
    closed = spec.model.low_temperature and all(g.shape is GateShape.LORENTZIAN for g in spec.gates)
    return "closed" if closed else "chain"


def _rows(pts, keys):
    """Distinct time tuples -> row masks, in first-appearance (row-major) order."""
    groups = {}
    stacked = np.stack([pts[k] for k in keys], axis=-1).reshape(-1, len(keys))
    for idx, key in enumerate(map(tuple, stacked)):
        groups.setdefault(key, []).append(idx)
    return groups


def _map(fn, items, threads):
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


class _OracleLog:
    def __init__(self):
        self.records = []

    def summary(self):
        if not self.records:
            return {}
        return {
            "convergence.points": str(len(self.records)),
            "convergence.max_rel_change": "%.3e" % max(r.rel_change for r in self.records),
            "convergence.max_level": str(max(r.level for r in self.records)),
            "convergence.total_nodes": str(sum(r.nodes for r in self.records)),
        }


def _evaluate(spec: ScanSpec, threads: int, log: _OracleLog):
    pts = _point_arrays(spec)
    shape = next(iter(pts.values())).shape
    m, sc = spec.model, spec.scale
    method = evaluation_method(spec)
    if not spec.is_coincidence:
        (gate,) = spec.gates
        t, w = pts["t"], pts["w"]
        if method == "closed":
            return s1_closed(t, w, gate, m, sc)
        flat_t, flat_w = t.ravel(), w.ravel()
        out = np.empty(flat_t.size)
        if method == "chain":
            groups = list(_rows(pts, ["t"]).items())
            vals = _map(lambda kv: s1_chain(kv[0][0], flat_w[kv[1]], gate, m, sc), groups, threads)
            for (key, idx), v in zip(groups, vals):
                out[idx] = v
            return out.reshape(shape)

        def one(i):
            try:
                return integrate_s1(flat_t[i], flat_w[i], gate, m, spec.quadrature, sc)
            except ConvergenceError as exc:
                raise ScanConvergenceError({"t": flat_t[i], "w": flat_w[i]}, exc) from exc

        res = _map(one, list(range(flat_t.size)), threads)
        log.records.extend(res)
        return np.array([float(r) for r in res]).reshape(shape)

    g1, g2 = spec.gates
    w1, w2, t2, delay = pts["w1"], pts["w2"], pts["t2"], pts["delay"]
    t1 = t2 + delay
    if method == "oracle":
        f1, f2, ft, fd = w1.ravel(), w2.ravel(), t2.ravel(), delay.ravel()

        def one(i):
            pair = DetectorPair(g1.at(t=ft[i] + fd[i], w=f1[i]), g2.at(t=ft[i], w=f2[i]))
            try:
                ri = integrate_s2("i", pair, m, spec.quadrature, sc)
                rii = integrate_s2("ii", pair, m, spec.quadrature, sc)
            except ConvergenceError as exc:
                point = {"w1": f1[i], "w2": f2[i], "t2": ft[i], "delay": fd[i]}
                raise ScanConvergenceError(point, exc) from exc
            return ri, rii

        res = _map(one, list(range(f1.size)), threads)
        for ri, rii in res:
            log.records.extend([ri, rii])
        return np.array([2.0 * (complex(a) + complex(b)).real for a, b in res]).reshape(shape)
    if method == "closed":
        if spec.kind == "s2":
            return s2_total_grid(w1, w2, t1, t2, g1, g2, m, sc)
        return g2_normalized_grid(w1, w2, t1, t2, g1, g2, m)
    f1, f2 = w1.ravel(), w2.ravel()
    groups = list(_rows(pts, ["t2", "delay"]).items())

    def row(kv):
        (tt2, dd), idx = kv
        if spec.kind == "s2":
            return s2_total_chain(f1[idx], f2[idx], tt2 + dd, tt2, g1, g2, m, sc)
        num = s2_total_chain(f1[idx], f2[idx], tt2 + dd, tt2, g1, g2, m)
        d1 = s1_chain(tt2 + dd, f1[idx], g1, m)
        d2 = s1_fe_chain(tt2, f2[idx], g2, m)
        return g2_ratio(num, d1, d2)

    vals = _map(row, groups, threads)
    out = np.empty(f1.size)
    for (key, idx), v in zip(groups, vals):
        out[idx] = v
    return out.reshape(shape)


def _fmt_value(v):
    if isinstance(v, float):
        return "%.17g" % v
    return str(v)


def scan_metadata(spec: ScanSpec, method: str) -> dict:
    meta = {"scan_format": SCAN_FORMAT, "kind": spec.kind, "method": method, "code_version": __version__}
    if spec.description:
        meta["description"] = spec.description
    for f in fields(TsjModel):
        meta[f"model.{f.name}"] = _fmt_value(float(getattr(spec.model, f.name)))
    meta["model.mu_fe"] = _fmt_value(spec.model.mu_fe)
    names = ("detector1", "detector2") if spec.is_coincidence else ("detector",)
    for name, g in zip(names, spec.gates):
        meta[f"{name}.shape"] = g.shape.value
        if g.sigma_t is not None:
            meta[f"{name}.sigma_t"] = _fmt_value(float(g.sigma_t))
        meta[f"{name}.sigma_w"] = _fmt_value(float(g.sigma_w))
    for k, v in spec.fixed.items():
        meta[f"fixed.{k}"] = _fmt_value(float(v))
    meta["scale"] = _fmt_value(spec.scale)
    meta["units.two_pi_c"] = _fmt_value(TWO_PI_C)
    meta["units.time"] = "ps"
    meta["units.frequency"] = "cm-1"
    if spec.kind.startswith("s1"):
        meta["convention.s1_sign"] = "signed; the leading minus makes S1 negative on resonance"
    if spec.model.dephasing_active:
        meta["flag.dephasing"] = "active: gamma_e/gamma_f added to the coherence widths"
    if spec.kind == "g2":
        meta["flag.g2_denominator"] = "extrapolated: detector 2 uses the f->e analogue of the single-photon signal"
    if spec.quadrature is not None:
        for f in fields(QuadratureSpec):
            v = getattr(spec.quadrature, f.name)
            meta[f"quadrature.{f.name}"] = v.value if hasattr(v, "value") else _fmt_value(v)
    return meta


def run_scan(spec: ScanSpec, threads: int = 1) -> SignalGrid:
    """Evaluate a validated recipe. Output is identical for any thread count."""
    if threads < 1:
        raise ValueError("threads must be >= 1")
    log = _OracleLog()
    method = evaluation_method(spec)
    values = np.asarray(_evaluate(spec, threads, log), dtype=float)
    if spec.kind != "g2" and not np.all(np.isfinite(values)):
        raise FloatingPointError("non-finite signal values; the recipe parameters overflow the evaluator")
    meta = scan_metadata(spec, method)
    meta.update(log.summary())
    if spec.kind == "g2":
        meta["masked_samples"] = str(int(np.isnan(values).sum()))
    axes = [Axis(a.name, a.unit, np.asarray(a.values)) for a in spec.axes]
    return SignalGrid(axes[0], axes[1] if len(axes) > 1 else None, values, meta)


def bundled_recipes() -> dict:
    """Name -> path of the figure recipes shipped with the package."""
    from importlib.resources import files

    root = files("gatedpcc") / "recipes"
    return {p.name[:-5]: Path(str(p)) for p in sorted(root.iterdir(), key=lambda p: p.name) if p.name.endswith(".toml")}
