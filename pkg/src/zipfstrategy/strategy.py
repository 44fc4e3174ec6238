"""Walk-forward next-session prediction from local rank tables.

For each target session the ``w`` letters before it form the ranking
window.  The session sits at the end of an m-letter word whose first
``m - horizon`` letters are known; each possible completion is looked up
in the window's rank table and scored by the rank power law,

    p(candidate) ~ R_candidate ** -zeta,

normalized over all completions.  With one unknown letter this reduces to
``p_u = R_u**-zeta / (R_u**-zeta + R_d**-zeta)``: the better-ranked
continuation is the more probable one, and how decisively depends on the
locally fitted exponent.
"""

from __future__ import annotations

import datetime as dt
import itertools
import math
from dataclasses import dataclass, replace

from .symbolic import SymbolSequence, shuffle
from .zipf import RankTable, WordCounting, count_words, fit_zipf

_COUNTING_MODES = ("block", "sliding")
_ZETA_SOURCES = ("real", "shuffled")
_UNSEEN_POLICIES = ("rank", "abstain")
_ZERO_POLICIES = ("down", "up", "drop")


@dataclass(frozen=True)
class StrategyConfig:
    """Knob bundle for one walk-forward run, validated on construction.

    ``zero_as`` is applied upstream when symbolizing price data; it rides
    along here so a run's full convention set lives in one object.
    ``seed`` is only consulted when ``zeta_source="shuffled"``.
    """

    m: int
    w: int
    horizon: int = 1
    counting: str = "block"
    zeta_source: str = "real"
    unseen: str = "rank"
    zero_as: str = "down"
    seed: int = 0
    fit_min_rank: int | None = None
    fit_max_rank: int | None = None

    def __post_init__(self) -> None:
        if self.horizon not in (1, 2, 3):
            raise ValueError("horizon must be 1, 2 or 3")
        if self.m < self.horizon + 1:
            raise ValueError("word length m must be >= horizon + 1")
        if self.w < self.m:
            raise ValueError("window w must be >= word length m")
        if self.counting not in _COUNTING_MODES:
            raise ValueError(f"counting must be one of {_COUNTING_MODES}")
        if self.zeta_source not in _ZETA_SOURCES:
            raise ValueError(f"zeta_source must be one of {_ZETA_SOURCES}")
        if self.unseen not in _UNSEEN_POLICIES:
            raise ValueError(f"unseen must be one of {_UNSEEN_POLICIES}")
        if self.zero_as not in _ZERO_POLICIES:
            raise ValueError(f"zero_as must be one of {_ZERO_POLICIES}")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")


@dataclass(frozen=True)
class CandidateRanks:
    """Candidate completions paired with their window ranks.

    A rank of None marks an unseen word withheld under the "abstain"
    policy; under the default policy unseen words carry rank n + 1.
    """

    entries: tuple[tuple[str, int | None], ...]
    horizon: int
    labels: tuple[str, str] = ("d", "u")


@dataclass(frozen=True)
class Prediction:
    """Directional call for one session.

    ``day_marginals`` holds (p_up, p_down) for every day of the horizon;
    the headline ``p_up``/``p_down`` belong to the final day, the session
    the word terminates on.  ``degenerate`` marks windows whose table had
    fewer than two ranks: no exponent can be fitted there, and the
    minimum-rank candidates take all the probability mass instead.
    """

    direction: str
    p_up: float | None
    p_down: float | None
    zeta: float | None
    horizon: int = 1
    day_marginals: tuple[tuple[float, float], ...] | None = None
    degenerate: bool = False
    session_index: int | None = None
    date: dt.date | None = None
    window_end_date: dt.date | None = None


def candidate_words(
    prefix: str, horizon: int, labels: tuple[str, str] = ("d", "u")
) -> tuple[str, ...]:
    """All words extending the known prefix by ``horizon`` unknown letters.

    Completions are enumerated in label order, so the result is sorted for
    the conventional (down, up) pair.  An empty prefix is allowed.
    """
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    return tuple(
        prefix + "".join(tail) for tail in itertools.product(labels, repeat=horizon)
    )


def rank_candidates(
    candidates: tuple[str, ...],
    table: RankTable,
    policy: str = "rank",
    *,
    horizon: int = 1,
    labels: tuple[str, str] = ("d", "u"),
) -> CandidateRanks:
    """Look up each candidate's rank in the window table.

    Unseen words rank one past the worst observed rank (``policy="rank"``),
    keeping the power law defined while placing them below every seen word;
    with ``policy="abstain"`` they are withheld and the prediction abstains.
    """
    if policy not in _UNSEEN_POLICIES:
        raise ValueError(f"policy must be one of {_UNSEEN_POLICIES}")
    fallback = len(table) + 1 if policy == "rank" else None
    entries = []
    for word in candidates:
        rank = table.rank_of(word)
        entries.append((word, rank if rank is not None else fallback))
    return CandidateRanks(tuple(entries), horizon, tuple(labels))


def predict(ranks: CandidateRanks, zeta: float | None) -> Prediction:
    """Score the candidates with the rank power law and call a direction.

    ``zeta=None`` marks a window without a fitted exponent; the
    minimum-rank candidates then take all the mass (the large-exponent
    limit), which keeps seen words dominant over unseen ones.  Exact
    probability ties abstain, as does zeta = 0, where every candidate is
    equally likely.
    """
    h = ranks.horizon
    if any(rank is None for _, rank in ranks.entries):
        return Prediction("abstain", None, None, zeta, h)
    if any(rank <= 0 for _, rank in ranks.entries):
        raise ValueError("non-positive rank")
    if zeta is None:
        best = min(rank for _, rank in ranks.entries)
        weights = [1.0 if rank == best else 0.0 for _, rank in ranks.entries]
    else:
        if zeta < 0:
            raise ValueError("zeta must be >= 0")
        weights = [float(rank) ** -zeta for _, rank in ranks.entries]
    total = math.fsum(weights)
    probs = [wt / total for wt in weights]
    down, up = ranks.labels
    marginals = []
    for day in range(-h, 0):
        p_up = math.fsum(p for (word, _), p in zip(ranks.entries, probs) if word[day] == up)
        p_down = math.fsum(p for (word, _), p in zip(ranks.entries, probs) if word[day] == down)
        marginals.append((p_up, p_down))
    p_up, p_down = marginals[-1]
    if p_up > p_down:
        direction = "up"
    elif p_up < p_down:
        direction = "down"
    else:
        direction = "abstain"
    return Prediction(
        direction,
        p_up,
        p_down,
        zeta,
        h,
        day_marginals=tuple(marginals),
        degenerate=zeta is None,
    )


def _window_tables(
    text: SymbolSequence, t: int, config: StrategyConfig
) -> tuple[RankTable, RankTable]:
    """Rank tables of the window ending at ``t - 1``: (ranking, fit source).

    In block mode the word grid is kept in phase with the word that
    terminates at session ``t``: the window's trailing ``m - 1`` letters are
    that word's known prefix, and complete words are counted end-anchored on
    the letters before them, so every counted word ends a whole number of
    word lengths before ``t``.  Sliding mode counts all substrings and needs
    no phase adjustment.
    """
    w, m = config.w, config.m
    window = text.text[t - w : t]

    def build(s: str) -> RankTable:
        if config.counting == "block":
            s = s[: w - m + 1]
        if len(s) < m:
            return RankTable((), 0)
        return count_words(s, WordCounting(m, config.counting))

    ranking = build(window)
    if config.zeta_source == "shuffled":
        permuted = shuffle(SymbolSequence(window, text.alphabet), config.seed ^ (t - 1))
        return ranking, build(permuted.text)
    return ranking, ranking


def predict_at(text: SymbolSequence, t: int, config: StrategyConfig) -> Prediction:
    """Prediction for session index ``t`` using only letters before ``t``.

    ``t`` may equal ``len(text)``: that is the genuine forecast for the
    next, not yet observed, session.  Candidate ranks always come from the
    real window; ``zeta_source`` only selects which window (real or
    shuffled) the exponent is fitted on.
    """
    if not text.alphabet.is_binary:
        raise ValueError("the prediction rule is defined for two-state alphabets")
    w, m, h = config.w, config.m, config.horizon
    if not w <= t <= len(text):
        raise ValueError(f"target index {t} outside predictable range [{w}, {len(text)}]")
    ranking_table, fit_table = _window_tables(text, t, config)
    try:
        zeta = fit_zipf(
            fit_table, min_rank=config.fit_min_rank, max_rank=config.fit_max_rank
        ).zeta
    except ValueError:
        zeta = None
    prefix = text.text[t - m + 1 : t - h + 1]
    labels = (text.alphabet.down_label, text.alphabet.up_label)
    candidates = candidate_words(prefix, h, labels)
    ranks = rank_candidates(candidates, ranking_table, config.unseen, horizon=h, labels=labels)
    return replace(predict(ranks, zeta), session_index=t)


def run_walkforward(
    text: SymbolSequence,
    config: StrategyConfig,
    dates: tuple[dt.date, ...] | None = None,
) -> list[Prediction]:
    """One prediction per session from ``w + 1`` on, in chronological order.

    Each position depends only on letters strictly before its target
    session, so results are independent of evaluation order.
    """
    n = len(text)
    if n < config.w + 1:
        raise ValueError(f"insufficient data: need at least {config.w + 1} symbols, got {n}")
    if dates is not None and len(dates) != n:
        raise ValueError("dates must align one-to-one with the text")
    predictions = []
    for t in range(config.w, n):
        pred = predict_at(text, t, config)
        if dates is not None:
            pred = replace(pred, date=dates[t], window_end_date=dates[t - 1])
        predictions.append(pred)
    return predictions
