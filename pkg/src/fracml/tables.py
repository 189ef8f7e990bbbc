"""Deterministic CSV/JSON table output.

CSV dialect: comma separators, '.' decimals, '#'-prefixed metadata lines
(sorted keys), one header row, 17 significant digits.  JSON mirrors the
same meta/columns/rows fields.  Identical inputs produce byte-identical
files: no timestamps, no environment leakage, fixed key order.
"""

from __future__ import annotations

import io
import json
import math
from typing import Any, Mapping, Sequence

from .solver import FieldSlice


def fmt_value(v: Any) -> str:
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return format(v, ".17g")
    return str(v)


def render_csv(columns: Sequence[str], rows: Sequence[Sequence[Any]], meta: Mapping[str, Any]) -> str:
    out = io.StringIO()
    for key in sorted(meta):
        out.write(f"# {key}={fmt_value(meta[key])}\n")
    out.write(",".join(columns) + "\n")
    for row in rows:
        out.write(",".join(fmt_value(v) for v in row) + "\n")
    return out.getvalue()


def render_json(columns: Sequence[str], rows: Sequence[Sequence[Any]], meta: Mapping[str, Any]) -> str:
    doc = {
        "meta": {k: meta[k] for k in sorted(meta)},
        "columns": list(columns),
        "rows": [list(row) for row in rows],
    }
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def render_table(
    columns: Sequence[str],
    rows: Sequence[Sequence[Any]],
    meta: Mapping[str, Any],
    fmt: str = "csv",
) -> str:
    if fmt == "csv":
        return render_csv(columns, rows, meta)
    if fmt == "json":
        return render_json(columns, rows, meta)
    raise ValueError(f"unknown output format {fmt!r}")


def slice_table(field: FieldSlice, extra_meta: Mapping[str, Any] | None = None):
    """(columns, rows, meta) for one sampled slice."""
    meta = {
        "alpha": field.alpha,
        "t": field.t,
        "operator": field.operator,
        "mass": field.mass,
        "quad_abs_tol": field.tolerances.abs_tol,
        "quad_rel_tol": field.tolerances.rel_tol,
        "quad_max_subdivisions": field.tolerances.max_subdivisions,
        "quad_split_point": field.tolerances.split_point,
    }
    if extra_meta:
        meta.update(extra_meta)
    rows = [(float(x), float(v)) for x, v in zip(field.grid, field.values)]
    return ["x", "F"], rows, meta


def render_samples(values, meta: Mapping[str, Any]) -> str:
    """Sample file: metadata comments then one draw per line."""
    out = io.StringIO()
    for key in sorted(meta):
        out.write(f"# {key}={fmt_value(meta[key])}\n")
    for v in values:
        out.write(fmt_value(float(v)) + "\n")
    return out.getvalue()
