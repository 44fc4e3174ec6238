"""Shared fixtures and the brute-force word-counting oracle.

The oracle deliberately takes a different path from the library: block
words are collected back to front with an explicit cursor so the final
word always ends on the last letter, and ranking is done by sorting a
plain dict.  Tests compare library tables against it for exact equality.
"""

from __future__ import annotations

import datetime as dt
from decimal import Decimal

import pytest

from zipfstrategy import Alphabet, PriceBar, PriceSeries, SymbolSequence


def seq(text: str, alphabet: Alphabet | None = None) -> SymbolSequence:
    return SymbolSequence(text, alphabet or Alphabet.binary())


def oracle_rank_table(text: str, m: int, mode: str) -> list[tuple[str, int, float, int]]:
    """(word, count, frequency, rank) rows by exhaustive enumeration."""
    words: list[str] = []
    if mode == "block":
        end = len(text)
        while end - m >= 0:
            words.append(text[end - m : end])
            end -= m
        words.reverse()
    else:
        i = 0
        while i + m <= len(text):
            words.append(text[i : i + m])
            i += 1
    counts: dict[str, int] = {}
    for word in words:
        counts[word] = counts.get(word, 0) + 1
    ranked = sorted(counts, key=lambda wd: (-counts[wd], wd))
    return [
        (wd, counts[wd], counts[wd] / len(words), rank)
        for rank, wd in enumerate(ranked, start=1)
    ]


def table_rows(table) -> list[tuple[str, int, float, int]]:
    return [(e.word, e.count, e.frequency, e.rank) for e in table.entries]


def make_bars(prices: list[tuple[str, str, str]]) -> PriceSeries:
    """Bars from (iso_date, open, close) string triples."""
    return PriceSeries(
        tuple(
            PriceBar(dt.date.fromisoformat(d), Decimal(o), Decimal(c))
            for d, o, c in prices
        )
    )


@pytest.fixture
def binary() -> Alphabet:
    return Alphabet.binary()


@pytest.fixture
def csv_file(tmp_path):
    """Factory writing a CSV file from a list of text rows."""

    def write(rows: list[str], name: str = "data.csv") -> str:
        path = tmp_path / name
        path.write_text("\n".join(rows) + "\n", encoding="utf-8")
        return str(path)

    return write
