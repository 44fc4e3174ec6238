"""Seeded synthetic inputs: persistent binary texts and random-walk sessions.

Everything here is driven by a PCG64 stream, so a (seed, parameters) pair
pins the output exactly.  Used by the test suite for calibration checks
and by the demo scripts when no market data file is at hand.
"""

from __future__ import annotations

import datetime as dt
from decimal import Decimal

import numpy as np

from .ingest import PriceBar, PriceSeries
from .symbolic import Alphabet, SymbolSequence


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def binary_markov_text(
    length: int,
    stay_prob: float = 0.8,
    seed: int = 0,
    alphabet: Alphabet | None = None,
) -> SymbolSequence:
    """Two-state chain that repeats its previous letter with ``stay_prob``.

    ``stay_prob`` above one half gives a persistent text whose word
    statistics are far from an equal-composition shuffle.
    """
    if not 0.0 <= stay_prob <= 1.0:
        raise ValueError("stay_prob must lie in [0, 1]")
    alphabet = alphabet if alphabet is not None else Alphabet.binary()
    if not alphabet.is_binary:
        raise ValueError("binary_markov_text needs a two-state alphabet")
    if length <= 0:
        return SymbolSequence("", alphabet)
    rng = _rng(seed)
    state = int(rng.integers(0, 2))
    stays = rng.random(length - 1) < stay_prob
    chars = [alphabet.labels[state]]
    for stay in stays:
        if not stay:
            state = 1 - state
        chars.append(alphabet.labels[state])
    return SymbolSequence("".join(chars), alphabet)


def iid_text(
    length: int,
    p_up: float = 0.5,
    seed: int = 0,
    alphabet: Alphabet | None = None,
) -> SymbolSequence:
    """Independent letters; ``p_up`` is the chance of the up label."""
    if not 0.0 <= p_up <= 1.0:
        raise ValueError("p_up must lie in [0, 1]")
    alphabet = alphabet if alphabet is not None else Alphabet.binary()
    if not alphabet.is_binary:
        raise ValueError("iid_text needs a two-state alphabet")
    ups = _rng(seed).random(max(length, 0)) < p_up
    chars = [alphabet.up_label if up else alphabet.down_label for up in ups]
    return SymbolSequence("".join(chars), alphabet)


def random_walk_bars(
    n_sessions: int,
    *,
    seed: int = 0,
    start: float = 2500.0,
    overnight_vol: float = 10.0,
    intraday_vol: float = 25.0,
    start_date: dt.date = dt.date(2000, 1, 3),
) -> PriceSeries:
    """Gaussian random-walk open/close sessions on consecutive weekdays.

    Prices are quantized to two decimals and floored at 1.00 so every bar
    is valid regardless of seed.
    """
    if n_sessions < 1:
        raise ValueError("n_sessions must be >= 1")
    rng = _rng(seed)
    gaps = rng.normal(0.0, overnight_vol, n_sessions)
    moves = rng.normal(0.0, intraday_vol, n_sessions)
    bars = []
    day = start_date
    prev_close = float(start)
    for i in range(n_sessions):
        while day.weekday() >= 5:
            day += dt.timedelta(days=1)
        open_ = max(prev_close + gaps[i], 1.0)
        close = max(open_ + moves[i], 1.0)
        bars.append(PriceBar(day, Decimal(f"{open_:.2f}"), Decimal(f"{close:.2f}")))
        prev_close = close
        day += dt.timedelta(days=1)
    return PriceSeries(tuple(bars))
