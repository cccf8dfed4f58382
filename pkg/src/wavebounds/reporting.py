"""Verification report rows and their deterministic CSV/JSON serializations.

Every float is rendered with 17 significant digits so repeated runs with the
same configuration produce byte-identical files (schema version v1).
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

SCHEMA_VERSION = "v1"

CSV_COLUMNS = [
    "schema_version",
    "check",
    "m",
    "k",
    "p",
    "j",
    "nu",
    "value",
    "abs_error",
    "lower_bound",
    "upper_bound",
    "margin",
    "status",
    "vacuous_flags",
    "slack",
    "decay_c",
    "decay_c_tilde",
    "note",
]

STATUSES = ("pass", "fail", "vacuous", "error")


@dataclass(frozen=True)
class VerificationRow:
    """One verified case: the numeric value, its bound interval, and the verdict."""

    check: str
    status: str
    m: int | None = None
    k: int | None = None
    p: float | None = None
    j: int | None = None
    nu: int | None = None
    value: float | None = None
    abs_error: float | None = None
    lower_bound: float | None = None
    upper_bound: float | None = None
    margin: float | None = None
    vacuous_flags: tuple[str, ...] = field(default=())
    slack: float | None = None
    decay_c: float | None = None
    decay_c_tilde: float | None = None
    note: str = ""

    def __post_init__(self) -> None:
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")


def fmt17(x: float | int | None) -> str:
    """17-significant-digit rendering; empty string for missing values."""
    if x is None:
        return ""
    if isinstance(x, int):
        return str(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(float(x), ".17g")


def _row_record(row: VerificationRow) -> dict[str, str]:
    return {
        "schema_version": SCHEMA_VERSION,
        "check": row.check,
        "m": fmt17(row.m),
        "k": fmt17(row.k),
        "p": fmt17(row.p),
        "j": fmt17(row.j),
        "nu": fmt17(row.nu),
        "value": fmt17(row.value),
        "abs_error": fmt17(row.abs_error),
        "lower_bound": fmt17(row.lower_bound),
        "upper_bound": fmt17(row.upper_bound),
        "margin": fmt17(row.margin),
        "status": row.status,
        "vacuous_flags": ";".join(row.vacuous_flags),
        "slack": fmt17(row.slack),
        "decay_c": fmt17(row.decay_c),
        "decay_c_tilde": fmt17(row.decay_c_tilde),
        "note": row.note,
    }


def summarize(rows: list[VerificationRow]) -> dict[str, int]:
    counts = {status: 0 for status in STATUSES}
    for row in rows:
        counts[row.status] += 1
    counts["total"] = len(rows)
    return counts


def exit_code(rows: list[VerificationRow]) -> int:
    """0 when every row passed or was vacuous; 1 on any failure or error."""
    return 1 if any(r.status in ("fail", "error") for r in rows) else 0


def rows_to_csv_bytes(rows: list[VerificationRow]) -> bytes:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(_row_record(row))
    return buf.getvalue().encode("utf-8")


def rows_to_json_bytes(rows: list[VerificationRow]) -> bytes:
    payload = {
        "schema_version": SCHEMA_VERSION,
        "summary": summarize(rows),
        "rows": [_row_record(row) for row in rows],
    }
    return (json.dumps(payload, indent=2, sort_keys=True) + "\n").encode("utf-8")
