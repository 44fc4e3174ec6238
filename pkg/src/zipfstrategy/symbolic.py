"""Discretize signed increments into a small symbol alphabet.

The working alphabet is binary: ``u`` for a positive increment, ``d``
otherwise.  Odd-sized alphabets refine this with symmetric magnitude
thresholds; with a single threshold ``l`` the three states are below
``-l``, within ``[-l, l]`` ("stable"), and above ``l``.  A symbolized
series becomes a text whose word statistics are studied downstream.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass

import numpy as np

_ZERO_POLICIES = ("down", "up", "drop")


@dataclass(frozen=True)
class Alphabet:
    """A symmetric discretization of signed increments.

    Two-state alphabets split at zero and use no thresholds; ``zero_as``
    decides where an exactly-zero increment lands ("down" by default, "up",
    or "drop" to omit the session).  Alphabets with an odd number of states
    take one positive threshold per state pair; values on a threshold join
    the band nearer zero, so the middle band is closed.
    """

    labels: tuple[str, ...]
    thresholds: tuple = ()
    zero_as: str = "down"

    def __post_init__(self) -> None:
        if len(self.labels) < 2:
            raise ValueError("alphabet needs at least two labels")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("labels must be pairwise distinct")
        if any(len(lab) != 1 for lab in self.labels):
            raise ValueError("labels must be single characters")
        if self.zero_as not in _ZERO_POLICIES:
            raise ValueError(f"zero_as must be one of {_ZERO_POLICIES}")
        if len(self.labels) == 2:
            if self.thresholds:
                raise ValueError("a two-state alphabet splits at zero and takes no thresholds")
            return
        if len(self.labels) % 2 == 0:
            raise ValueError("alphabets beyond two states must have an odd state count")
        want = (len(self.labels) - 1) // 2
        if len(self.thresholds) != want:
            raise ValueError(f"expected {want} threshold(s) for {len(self.labels)} states")
        if any(t <= 0 for t in self.thresholds):
            raise ValueError("thresholds must be positive")
        if any(a >= b for a, b in zip(self.thresholds, self.thresholds[1:])):
            raise ValueError("thresholds must be strictly increasing")

    @classmethod
    def binary(cls, zero_as: str = "down") -> "Alphabet":
        return cls(("d", "u"), (), zero_as)

    @classmethod
    def three_state(cls, threshold) -> "Alphabet":
        return cls(("d", "s", "u"), (threshold,))

    @property
    def is_binary(self) -> bool:
        return len(self.labels) == 2

    @property
    def down_label(self) -> str:
        return self.labels[0]

    @property
    def up_label(self) -> str:
        return self.labels[-1]

    def classify(self, dx) -> str | None:
        """Label for one increment, or None when a zero increment is dropped."""
        if self.is_binary:
            if dx > 0:
                return self.labels[1]
            if dx < 0:
                return self.labels[0]
            if self.zero_as == "drop":
                return None
            return self.labels[1] if self.zero_as == "up" else self.labels[0]
        mid = len(self.labels) // 2
        magnitude = -dx if dx < 0 else dx
        step = sum(1 for t in self.thresholds if t < magnitude)
        return self.labels[mid + step] if dx > 0 else self.labels[mid - step]


@dataclass(frozen=True)
class SymbolSequence:
    """A text over an alphabet, one character per symbol.

    ``source_indices`` maps each symbol back to the row of the increment
    series it came from (None for synthetic or shuffled sequences); the
    mapping is the identity unless zero increments were dropped.
    """

    text: str
    alphabet: Alphabet
    source_indices: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        stray = set(self.text) - set(self.alphabet.labels)
        if stray:
            raise ValueError(f"symbols {sorted(stray)} not in alphabet {self.alphabet.labels}")
        if self.source_indices is not None and len(self.source_indices) != len(self.text):
            raise ValueError("source_indices must align one-to-one with the text")

    def __len__(self) -> int:
        return len(self.text)

    @property
    def symbols(self) -> tuple[str, ...]:
        return tuple(self.text)


def symbolize(increments, alphabet: Alphabet) -> SymbolSequence:
    """Map an increment series (or any iterable of numbers) onto the alphabet.

    An empty input produces an empty sequence.  Sessions whose increment the
    alphabet drops (``zero_as="drop"``) are omitted and recorded as gaps via
    ``source_indices``.
    """
    values = getattr(increments, "values", increments)
    chars: list[str] = []
    kept: list[int] = []
    for i, dx in enumerate(values):
        label = alphabet.classify(dx)
        if label is None:
            continue
        chars.append(label)
        kept.append(i)
    return SymbolSequence("".join(chars), alphabet, tuple(kept))


def aligned_dates(increments, sequence: SymbolSequence) -> tuple[dt.date, ...]:
    """Dates for each symbol, honouring rows dropped during symbolization."""
    if sequence.source_indices is None:
        raise ValueError("sequence does not track its source rows")
    return tuple(increments.dates[i] for i in sequence.source_indices)


def shuffle(sequence: SymbolSequence, seed: int) -> SymbolSequence:
    """Uniformly random permutation of the symbols, fully determined by seed.

    Single-pass Fisher-Yates swapping, with the swap targets drawn from a
    PCG64 stream; the same seed reproduces the same permutation on every
    run.  Per-label symbol counts are preserved exactly.
    """
    if seed < 0:
        raise ValueError("seed must be non-negative")
    arr = list(sequence.text)
    n = len(arr)
    if n > 1:
        rng = np.random.Generator(np.random.PCG64(seed))
        draws = rng.integers(0, np.arange(n, 1, -1))
        for k, i in enumerate(range(n - 1, 0, -1)):
            j = int(draws[k])
            arr[i], arr[j] = arr[j], arr[i]
    return SymbolSequence("".join(arr), sequence.alphabet)
