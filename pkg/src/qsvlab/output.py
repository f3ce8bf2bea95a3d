"""Deterministic, schema-validated experiment outputs.

JSON is serialized with sorted keys and shortest round-trip floats; CSV
uses '.' decimals and 17 significant digits. Files are written to a
temporary sibling and renamed into place, so a failed run never leaves
a partial file.
"""

from __future__ import annotations

import json
import os
from importlib import resources

import jsonschema

_SCHEMA_CACHE: dict[str, dict] = {}


def load_schema(name: str) -> dict:
    if name not in _SCHEMA_CACHE:
        text = resources.files("qsvlab.schemas").joinpath(f"{name}.json").read_text()
        _SCHEMA_CACHE[name] = json.loads(text)
    return _SCHEMA_CACHE[name]


def validate(data: dict, schema_name: str) -> None:
    jsonschema.validate(data, load_schema(schema_name))


def fmt_float(x: float) -> str:
    return format(float(x), ".17g")


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    tmp = os.path.join(directory, f".{os.path.basename(path)}.tmp")
    with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    os.replace(tmp, path)


def write_json(path: str, data: dict, schema_name: str | None = None) -> None:
    if schema_name is not None:
        validate(data, schema_name)
    _atomic_write(path, json.dumps(data, indent=2, sort_keys=True) + "\n")


def write_csv(path: str, header: list[str], rows: list[list]) -> None:
    lines = [",".join(header)]
    for row in rows:
        cells = []
        for cell in row:
            if isinstance(cell, bool):
                cells.append("1" if cell else "0")
            elif isinstance(cell, float):
                cells.append(fmt_float(cell))
            else:
                cells.append(str(cell))
        lines.append(",".join(cells))
    _atomic_write(path, "\n".join(lines) + "\n")
