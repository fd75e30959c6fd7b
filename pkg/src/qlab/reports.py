"""Deterministic report emission.

A report is (meta, columns, rows).  Rows are dictionaries; emission sorts
them lexicographically by the declared key columns, so output bytes do not
depend on production order.  Floats are rendered with ``repr`` (shortest
round-trip decimal), which is the documented cross-platform formatting
rule.  CSV files carry the meta as leading ``# key=value`` comment lines.
"""

from __future__ import annotations

import io
import json

from .errors import ParseError


def format_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _sort_key(row, key_columns):
    out = []
    for col in key_columns:
        v = row.get(col)
        # group by type so mixed None/number columns stay orderable
        if v is None:
            out.append((0, ""))
        elif isinstance(v, bool):
            out.append((1, int(v)))
        elif isinstance(v, (int, float)):
            out.append((2, float(v)))
        else:
            out.append((3, str(v)))
    return tuple(out)


def sorted_rows(rows, key_columns):
    return sorted(rows, key=lambda r: _sort_key(r, key_columns))


def render_csv(meta: dict, columns, rows, key_columns=None) -> str:
    key_columns = list(key_columns or columns)
    buf = io.StringIO()
    for k in sorted(meta):
        buf.write(f"# {k}={format_value(meta[k])}\n")
    buf.write(",".join(columns) + "\n")
    for row in sorted_rows(rows, key_columns):
        buf.write(",".join(format_value(row.get(c)) for c in columns) + "\n")
    return buf.getvalue()


def render_json(meta: dict, columns, rows, key_columns=None) -> str:
    key_columns = list(key_columns or columns)
    payload = {
        "meta": {k: meta[k] for k in sorted(meta)},
        "columns": list(columns),
        "rows": [
            {c: row.get(c) for c in columns}
            for row in sorted_rows(rows, key_columns)
        ],
    }
    return json.dumps(payload, indent=1, sort_keys=False, default=format_value) + "\n"


def emit_report(meta, columns, rows, fmt: str, path, key_columns=None) -> None:
    if fmt == "csv":
        text = render_csv(meta, columns, rows, key_columns)
    elif fmt == "json":
        text = render_json(meta, columns, rows, key_columns)
    else:
        raise ParseError(f"unknown report format {fmt!r}")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def parse_csv(text: str):
    """Inverse of render_csv for round-trip tests: (meta, columns, rows of str)."""
    meta = {}
    lines = text.splitlines()
    i = 0
    while i < len(lines) and lines[i].startswith("# "):
        k, _, v = lines[i][2:].partition("=")
        meta[k] = v
        i += 1
    columns = lines[i].split(",") if i < len(lines) else []
    rows = []
    for line in lines[i + 1:]:
        if not line:
            continue
        rows.append(dict(zip(columns, line.split(","))))
    return meta, columns, rows
