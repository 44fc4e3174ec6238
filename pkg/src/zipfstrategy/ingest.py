"""Load open/close market data from CSV and derive per-session changes.

Prices are parsed as :class:`decimal.Decimal` and carried at full input
precision, so a decade of two-decimal index quotes never picks up binary
rounding drift on its way into the trade ledger.  The increment of
interest is the intraday change ``close - open`` of each session; its
running sum is the "day-light" index, which tracks only moves made while
the market is open and ignores overnight gaps.
"""

from __future__ import annotations

import csv
import datetime as dt
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from itertools import accumulate
from pathlib import Path
from typing import Iterator


class DataFormatError(ValueError):
    """An input file violates the CSV contract (bad cell, bad ordering, ...)."""


@dataclass(frozen=True)
class PriceBar:
    """One trading session: date plus opening and closing index level."""

    date: dt.date
    open: Decimal
    close: Decimal

    def __post_init__(self) -> None:
        if self.open <= 0 or self.close <= 0:
            raise ValueError(
                f"non-positive price on {self.date}: open={self.open}, close={self.close}"
            )


@dataclass(frozen=True)
class PriceSeries:
    """Trading sessions in strictly increasing date order."""

    bars: tuple[PriceBar, ...]

    def __post_init__(self) -> None:
        for prev, cur in zip(self.bars, self.bars[1:]):
            if cur.date == prev.date:
                raise ValueError(f"duplicate date {cur.date}")
            if cur.date < prev.date:
                raise ValueError(f"out-of-order date {cur.date} after {prev.date}")

    def __len__(self) -> int:
        return len(self.bars)

    def __iter__(self) -> Iterator[PriceBar]:
        return iter(self.bars)

    def __getitem__(self, i: int) -> PriceBar:
        return self.bars[i]

    @property
    def dates(self) -> tuple[dt.date, ...]:
        return tuple(b.date for b in self.bars)


@dataclass(frozen=True)
class IncrementSeries:
    """Per-session signed changes, date-aligned with their source series."""

    values: tuple[Decimal, ...]
    dates: tuple[dt.date, ...]

    def __post_init__(self) -> None:
        if len(self.values) != len(self.dates):
            raise ValueError("values and dates must have equal length")

    def __len__(self) -> int:
        return len(self.values)


def _parse_bar(
    row: dict,
    line: int,
    path: Path,
    date_col: str,
    open_col: str,
    close_col: str,
) -> PriceBar:
    cells = {c: row.get(c) for c in (date_col, open_col, close_col)}
    for col, raw in cells.items():
        if raw is None or raw.strip() == "":
            raise DataFormatError(f"{path}:{line}: missing value in column '{col}'")
    try:
        when = dt.date.fromisoformat(cells[date_col].strip())
    except ValueError:
        raise DataFormatError(
            f"{path}:{line}: bad date '{cells[date_col]}' (expected YYYY-MM-DD)"
        ) from None
    prices = {}
    for col in (open_col, close_col):
        try:
            prices[col] = Decimal(cells[col].strip())
        except InvalidOperation:
            raise DataFormatError(
                f"{path}:{line}: bad price '{cells[col]}' in column '{col}'"
            ) from None
    try:
        return PriceBar(when, prices[open_col], prices[close_col])
    except ValueError as exc:
        raise DataFormatError(f"{path}:{line}: {exc}") from None


def load_csv(
    path: str | Path,
    *,
    date_col: str = "date",
    open_col: str = "open",
    close_col: str = "close",
    resort: bool = False,
) -> PriceSeries:
    """Read a comma-delimited file with a header row into a valid PriceSeries.

    Only the date/open/close columns are consumed; extra columns (high, low,
    volume, ...) are accepted and ignored.  Dates must be ISO ``YYYY-MM-DD``.
    Rows arriving out of date order raise :class:`DataFormatError` unless
    ``resort=True``; duplicate dates always raise.
    """
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise DataFormatError(f"{path}: empty file, expected a header row")
        missing = [c for c in (date_col, open_col, close_col) if c not in reader.fieldnames]
        if missing:
            raise DataFormatError(
                f"{path}: missing column(s) {missing}; header has {reader.fieldnames}"
            )
        bars = []
        for row in reader:
            if not any(v for v in row.values() if v):
                continue  # blank line
            bars.append(_parse_bar(row, reader.line_num, path, date_col, open_col, close_col))
    if not bars:
        raise DataFormatError(f"{path}: no data rows")
    if resort:
        bars.sort(key=lambda b: b.date)
    try:
        return PriceSeries(tuple(bars))
    except ValueError as exc:
        raise DataFormatError(f"{path}: {exc}") from None


def write_csv(
    series: PriceSeries,
    path: str | Path,
    *,
    date_col: str = "date",
    open_col: str = "open",
    close_col: str = "close",
) -> None:
    """Serialize date/open/close back to CSV; Decimals round-trip exactly."""
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([date_col, open_col, close_col])
        for bar in series:
            writer.writerow([bar.date.isoformat(), str(bar.open), str(bar.close)])


def daylight_increments(series: PriceSeries) -> IncrementSeries:
    """Per-session ``close - open``: the intraday move, overnight gaps excluded."""
    values = tuple(bar.close - bar.open for bar in series)
    return IncrementSeries(values, series.dates)


def cumulative_daylight(increments: IncrementSeries) -> tuple[Decimal, ...]:
    """Running sum of the intraday changes (the day-light index level)."""
    return tuple(accumulate(increments.values))
