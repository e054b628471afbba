"""Machine-readable report rendering: JSON and CSV with exact rationals.

Field order is fixed at construction, rationals are emitted as num/den pairs
next to a truncated decimal, and identical inputs render byte-identically.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .util import fraction_decimal


def ratio_fields(value: Fraction) -> dict:
    return {
        "num": value.numerator,
        "den": value.denominator,
        "decimal": fraction_decimal(value),
    }


def render_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def render_csv(header: list[str], rows: list[list]) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(str(cell) for cell in row))
    return "\n".join(lines) + "\n"


def report_emit(doc: dict, fmt: str, csv_table: tuple[list[str], list[list]] | None = None) -> str:
    if fmt == "json":
        return render_json(doc)
    if fmt == "csv":
        if csv_table is None:
            raise ValueError("this report has no CSV form")
        return render_csv(*csv_table)
    raise ValueError(f"unknown format {fmt!r}")
