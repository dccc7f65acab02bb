"""CSV writing shared by the result tables."""

import csv
import math
from collections.abc import Iterable, Sequence
from pathlib import Path

from nodal_nesting.config import settings

Cell = float | int | str | bool | None


def format_cell(value: Cell, digits: int | None = None) -> str:
    """Render one CSV cell; reals get a fixed number of significant digits."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return f"{value:.{digits or settings.csv_significant_digits}g}"
    return value


def write_rows(path: Path, header: Sequence[str], rows: Iterable[Sequence[Cell]]) -> int:
    """Write a header and rows; returns the number of data rows."""
    path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_cell(value) for value in row])
            count += 1
    return count
