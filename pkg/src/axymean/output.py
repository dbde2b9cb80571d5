"""Deterministic CSV/JSON rendering of command results."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import resources

SCHEMA_VERSION = "1"


@dataclass
class OutputRecord:
    command: str
    parameters: dict
    columns: list[str]
    rows: list[dict]
    timings: list[float] = field(default_factory=list)
    schema_version: str = SCHEMA_VERSION


def format_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        return "null"
    return format(x, ".17g")


def _scalar(value) -> str:
    """JSON text for one scalar; floats always get 17 significant digits."""
    if isinstance(value, bool) or value is None:
        return json.dumps(value)
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, int):
        return str(value)
    return json.dumps(str(value))


def _csv_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format_float(value)
    text = str(value)
    if any(ch in text for ch in ',"\n'):
        return '"' + text.replace('"', '""') + '"'
    return text


def _json_value(value, indent: str) -> str:
    inner = indent + "  "
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{inner}{json.dumps(str(k))}: {_json_value(v, inner)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + indent + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple)) for v in value):
            return "[" + ", ".join(_scalar(v) for v in value) + "]"
        return "[\n" + ",\n".join(inner + _json_value(v, inner) for v in value) + "\n" + indent + "]"
    return _scalar(value)


def render_json(record: OutputRecord, *, timings: bool = True) -> str:
    doc = {
        "schema_version": record.schema_version,
        "command": record.command,
        "parameters": record.parameters,
        "columns": record.columns,
        "rows": [{c: row[c] for c in record.columns} for row in record.rows],
        "timings": [round(t, 3) for t in record.timings] if timings else [],
    }
    return _json_value(doc, "") + "\n"


def render_csv(record: OutputRecord, *, timings: bool = True) -> str:
    lines = [",".join(record.columns)]
    lines += [",".join(_csv_cell(row[c]) for c in record.columns) for row in record.rows]
    if timings and record.timings:
        lines.append("# timings_ms," + ",".join(f"{t:.3f}" for t in record.timings))
    return "\n".join(lines) + "\n"


def render(record: OutputRecord, fmt: str, *, timings: bool = True) -> str:
    if fmt == "json":
        return render_json(record, timings=timings)
    if fmt == "csv":
        return render_csv(record, timings=timings)
    raise ValueError(f"unknown format {fmt!r}")


def load_schema() -> dict:
    text = resources.files("axymean").joinpath("output.schema.json").read_text()
    return json.loads(text)
