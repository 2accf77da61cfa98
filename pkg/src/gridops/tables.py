"""Deterministic table output: CSV and JSON with a self-describing header.

Every command result is a `RunTable`: a resolved-config `meta` mapping plus
named columns of numbers.  Floats are written with Python's shortest
round-trip representation (never more than 17 significant digits), meta
keys are sorted, and nothing time- or host-dependent is emitted, so
identical configurations produce byte-identical files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import IO, Sequence


@dataclass(frozen=True)
class RunTable:
    meta: dict
    columns: tuple[str, ...]
    rows: list[tuple]

    def __post_init__(self):
        for row in self.rows:
            if len(row) != len(self.columns):
                raise ValueError(
                    f"row of width {len(row)} does not match {len(self.columns)} columns"
                )

    def column(self, name: str) -> list:
        idx = self.columns.index(name)
        return [row[idx] for row in self.rows]


def format_value(value) -> str:
    """Shortest round-trip text for a table cell."""
    if isinstance(value, bool):
        raise TypeError("tables hold numbers and strings only")
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, str):
        return value
    # numpy scalars land here; route them through the python types
    if hasattr(value, "item"):
        return format_value(value.item())
    raise TypeError(f"cannot format {type(value).__name__} deterministically")


def _plain(value):
    if hasattr(value, "item"):
        value = value.item()
    return value


def write_csv(table: RunTable, stream: IO[str]) -> None:
    """Comment line with the resolved config, then header and rows, LF-terminated."""
    stream.write("# " + json.dumps(table.meta, sort_keys=True) + "\n")
    stream.write(",".join(table.columns) + "\n")
    for row in table.rows:
        stream.write(",".join(format_value(v) for v in row) + "\n")


def write_json(table: RunTable, stream: IO[str]) -> None:
    payload = {
        "meta": {**table.meta, "columns": list(table.columns)},
        "rows": [[_plain(v) for v in row] for row in table.rows],
    }
    json.dump(payload, stream, sort_keys=True, indent=2)
    stream.write("\n")


def read_csv_rows(lines: Sequence[str]) -> tuple[dict, list[str], list[list[str]]]:
    """Parse the CSV layout written by `write_csv` (used by tests and tooling)."""
    meta = json.loads(lines[0].lstrip("# ").strip()) if lines[0].startswith("#") else {}
    header = lines[1].strip().split(",") if lines[0].startswith("#") else lines[0].strip().split(",")
    start = 2 if lines[0].startswith("#") else 1
    rows = [line.strip().split(",") for line in lines[start:] if line.strip()]
    return meta, header, rows
