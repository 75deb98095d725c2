"""Plot-ready table writers (CSV or newline-delimited JSON)."""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Iterable, Sequence


def format_number(v) -> str:
    if isinstance(v, (int,)) and not isinstance(v, bool):
        return str(v)
    v = float(v)
    if v == 0.0:
        v = 0.0  # drop the sign of -0.0
    return format(v, ".17g")


def _json_value(v):
    if isinstance(v, int) and not isinstance(v, bool):
        return v
    v = float(v)
    if not math.isfinite(v):
        raise ValueError(f"cannot serialize non-finite value {v}")
    return 0.0 if v == 0.0 else v


def write_table(
    directory: Path,
    stem: str,
    header: Sequence[str],
    rows: Iterable[Sequence],
    fmt: str = "csv",
) -> Path:
    """Write ``rows`` to ``directory/stem.<fmt>`` and return the path."""
    path = Path(directory) / f"{stem}.{fmt}"
    with open(path, "w", newline="\n", encoding="utf-8") as fh:
        if fmt == "csv":
            fh.write(",".join(header) + "\n")
            for row in rows:
                fh.write(",".join(format_number(v) for v in row) + "\n")
        elif fmt == "ndjson":
            for row in rows:
                record = {k: _json_value(v) for k, v in zip(header, row)}
                fh.write(json.dumps(record) + "\n")
        else:
            raise ValueError(f"unknown output format {fmt!r}")
    return path


def read_csv(path: Path) -> tuple[list[str], list[list[float]]]:
    """Inverse of :func:`write_table` for CSV files."""
    lines = Path(path).read_text().splitlines()
    header = lines[0].split(",")
    return header, [[float(x) for x in line.split(",")] for line in lines[1:]]
