"""Reading and writing tables.

Text format: first line ``n``, then n lines of n space-separated integers
(row = left factor). Blank lines and ``#`` comments are ignored.
JSON format: ``{"order": n, "table": [[...], ...], "names": [...]}`` with
``names`` optional.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

from .catalog import PRESETS
from .errors import ParseError
from .table import CayleyTable, validate_table


def parse_text(text: str) -> CayleyTable:
    lines = [
        (no, line)
        for no, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not lines:
        raise ParseError("empty input")
    no, first = lines[0]
    try:
        n = int(first.split("#")[0].strip())
    except ValueError:
        raise ParseError(f"expected the order, got {first.strip()!r}", no, 1) from None
    if n < 1:
        raise ParseError("order must be positive", no, 1)
    body = lines[1:]
    if len(body) != n:
        where = body[n][0] if len(body) > n else (body[-1][0] if body else no)
        raise ParseError(f"expected {n} rows, found {len(body)}", where)
    entries = []
    for no, line in body:
        content = line.split("#")[0]
        row = []
        for m in re.finditer(r"\S+", content):
            try:
                row.append(int(m.group()))
            except ValueError:
                raise ParseError(f"not an integer: {m.group()!r}", no, m.start() + 1) from None
        if len(row) != n:
            raise ParseError(f"expected {n} entries, found {len(row)}", no)
        entries.append(row)
    return validate_table(n, entries)


def parse_json(text: str) -> tuple[CayleyTable, list[str] | None]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(data, dict) or "table" not in data:
        raise ParseError("JSON input must be an object with a 'table' field")
    entries = data["table"]
    if not isinstance(entries, list) or not all(isinstance(r, list) for r in entries):
        raise ParseError("'table' must be a list of rows")
    n = data.get("order", len(entries))
    names = data.get("names")
    if names is not None and len(names) != n:
        raise ParseError(f"'names' has {len(names)} entries for order {n}")
    return validate_table(n, entries), names


def loads(text: str) -> tuple[CayleyTable, list[str] | None]:
    if text.lstrip().startswith("{"):
        return parse_json(text)
    return parse_text(text), None


def load_table(source: str) -> tuple[CayleyTable, list[str] | None, bytes]:
    """Load from a path or ``preset:NAME``; also returns the raw input bytes."""
    if source.startswith("preset:"):
        name = source.split(":", 1)[1]
        if name not in PRESETS:
            raise ParseError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
        table = PRESETS[name]()
        return table, None, dumps_text(table).encode()
    raw = Path(source).read_bytes()
    table, names = loads(raw.decode("utf-8"))
    return table, names, raw


def dumps_text(table: CayleyTable) -> str:
    lines = [str(table.order)] + [" ".join(map(str, r)) for r in table.rows]
    return "\n".join(lines) + "\n"


def to_json_obj(table: CayleyTable, names: list[str] | None = None) -> dict:
    obj = {"order": table.order, "table": table.to_lists()}
    if names is not None:
        obj["names"] = list(names)
    return obj


def dumps_json(table: CayleyTable, names: list[str] | None = None) -> str:
    return json.dumps(to_json_obj(table, names))
