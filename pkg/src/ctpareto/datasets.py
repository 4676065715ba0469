"""Dataset ingestion and six-number summaries."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import NamedTuple

import numpy as np

__all__ = [
    "DatasetError",
    "DatasetSource",
    "Summary",
    "EMBEDDED",
    "load_wheaton",
    "read_column",
    "load",
    "describe",
]

EMBEDDED = ("wheaton",)


class DatasetError(ValueError):
    pass


class Summary(NamedTuple):
    min: float
    q1: float
    median: float
    mean: float
    q3: float
    max: float


@dataclass(frozen=True)
class DatasetSource:
    """Embedded dataset name, or a delimited text file with a numeric column.

    ``year_column``/``year`` optionally keep only rows whose year column
    equals ``year`` (for per-year loss data).
    """

    name: str | None = None
    path: str | None = None
    column: int = 0
    delimiter: str = ","
    header: bool = False
    year_column: int | None = None
    year: int | None = None

    @classmethod
    def parse(cls, spec: str, **kwargs) -> DatasetSource:
        if spec.lower() in EMBEDDED:
            return cls(name=spec.lower())
        return cls(path=spec, **kwargs)

    @property
    def descriptor(self) -> str:
        if self.name:
            return self.name
        desc = f"{self.path}[{self.column}]"
        if self.year is not None:
            desc += f"@{self.year}"
        return desc


def _parse_lines(lines, column=0, delimiter=",", header=False, year_column=None, year=None, origin="<data>"):
    values = []
    seen_header = not header
    for lineno, row in enumerate(csv.reader(lines, delimiter=delimiter), start=1):
        if not row or all(not cell.strip() for cell in row):
            continue
        if row[0].lstrip().startswith("#"):
            continue
        if not seen_header:
            seen_header = True
            continue
        try:
            cell = row[column]
        except IndexError:
            raise DatasetError(f"{origin}:{lineno}: no column {column}") from None
        if year_column is not None:
            try:
                if int(float(row[year_column])) != year:
                    continue
            except (IndexError, ValueError):
                raise DatasetError(f"{origin}:{lineno}: bad year cell in column {year_column}") from None
        try:
            values.append(float(cell))
        except ValueError:
            raise DatasetError(f"{origin}:{lineno}: non-numeric value {cell.strip()!r}") from None
    if not values:
        raise DatasetError(f"{origin}: no numeric values found")
    return np.array(values)


def load_wheaton() -> np.ndarray:
    """The 72 Wheaton River flood exceedances (m^3/s)."""
    text = resources.files("ctpareto").joinpath("data", "wheaton.csv").read_text()
    return _parse_lines(io.StringIO(text), header=True, origin="wheaton.csv")


def read_column(path, column=0, delimiter=",", header=False, year_column=None, year=None) -> np.ndarray:
    """Read one numeric column; blank and ``#`` lines are skipped."""
    path = Path(path)
    if not path.is_file():
        raise DatasetError(f"file not found: {path}")
    with path.open(newline="") as fh:
        return _parse_lines(fh, column, delimiter, header, year_column, year, origin=str(path))


def load(source: DatasetSource) -> np.ndarray:
    if source.name is not None:
        if source.name == "wheaton":
            return load_wheaton()
        raise DatasetError(f"unknown embedded dataset {source.name!r}")
    if source.year_column is not None and source.year is None:
        raise DatasetError("year_column given without year")
    return read_column(
        source.path, source.column, source.delimiter, source.header, source.year_column, source.year
    )


def describe(values) -> Summary:
    """Min, quartiles (linear interpolation at ``1 + (n-1)q``), mean and max."""
    x = np.asarray(values, dtype=float)
    if x.size == 0:
        raise DatasetError("empty dataset")
    q1, med, q3 = np.percentile(x, [25, 50, 75], method="linear")
    return Summary(float(x.min()), float(q1), float(med), float(x.mean()), float(q3), float(x.max()))
