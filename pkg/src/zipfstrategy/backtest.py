"""Futures day-trading simulation with point value, margin and commission.

Every non-abstain prediction opens one position at the session open and
closes it at the same session's close: long on an up call, short on a
down call, never held overnight.  Defaults mirror WIG20 index futures
terms: 10 currency units per index point and a 10% initial margin.  All
money arithmetic is exact decimal; nothing is rounded until the result
is formatted for output.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass, replace
from decimal import Decimal
from typing import Iterable, Sequence

from .ingest import PriceSeries
from .strategy import Prediction, StrategyConfig, predict_at
from .symbolic import SymbolSequence

_ZERO_ACCURACY_MODES = ("incorrect", "exclude")


def _dec(x) -> Decimal:
    return x if isinstance(x, Decimal) else Decimal(str(x))


@dataclass(frozen=True)
class ContractSpec:
    """Economic terms of the traded futures contract.

    ``commission`` is charged per contract per round trip (open plus
    close); day trading keeps it low, and the default is zero so gross
    and net coincide unless a tariff is given.
    """

    point_value: Decimal = Decimal("10")
    margin_rate: Decimal = Decimal("0.10")
    commission: Decimal = Decimal("0")
    contracts: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "point_value", _dec(self.point_value))
        object.__setattr__(self, "margin_rate", _dec(self.margin_rate))
        object.__setattr__(self, "commission", _dec(self.commission))
        if self.point_value <= 0:
            raise ValueError("point_value must be positive")
        if not Decimal("0") < self.margin_rate <= Decimal("1"):
            raise ValueError("margin_rate must lie in (0, 1]")
        if self.commission < 0:
            raise ValueError("commission must be non-negative")
        if self.contracts < 1:
            raise ValueError("contracts must be >= 1")


@dataclass(frozen=True)
class TradeRecord:
    """One same-day round trip, marked to market at the close."""

    date: dt.date
    side: str  # "long" | "short"
    open: Decimal
    close: Decimal
    points: Decimal  # signed; positive when the trade was right
    gross_pnl: Decimal
    net_pnl: Decimal
    margin_posted: Decimal
    correct: bool
    zero_change: bool

    @property
    def return_on_margin(self) -> Decimal:
        return self.net_pnl / self.margin_posted


@dataclass(frozen=True)
class BacktestResult:
    """Trades plus the headline numbers of one strategy run.

    ``return_on_investment`` is total net profit over the average posted
    margin, the natural capital base for a strategy that frees its deposit
    every evening.
    """

    trades: tuple[TradeRecord, ...]
    accuracy: float | None
    total_net_pnl: Decimal
    equity_curve: tuple[tuple[dt.date, Decimal], ...]
    average_margin: Decimal | None
    return_on_investment: Decimal | None
    n_predictions: int
    n_abstained: int


def execute(
    predictions: Sequence[Prediction],
    bars: PriceSeries,
    spec: ContractSpec = ContractSpec(),
    *,
    zero_accuracy: str = "incorrect",
) -> BacktestResult:
    """Run the day-trade ledger over dated predictions.

    Abstain sessions trade nothing but still contribute a (flat) equity
    point.  A session whose close equals its open realizes neither
    direction: it counts as an incorrect call by default, or drops out of
    the accuracy denominator with ``zero_accuracy="exclude"``; its zero
    P&L stays either way.
    """
    if zero_accuracy not in _ZERO_ACCURACY_MODES:
        raise ValueError(f"zero_accuracy must be one of {_ZERO_ACCURACY_MODES}")
    undated = [p.session_index for p in predictions if p.date is None]
    if undated:
        raise ValueError(
            f"predictions without dates cannot be aligned (session indices {undated[:5]}...)"
            if len(undated) > 5
            else f"predictions without dates cannot be aligned (session indices {undated})"
        )
    by_date = {bar.date: bar for bar in bars}
    missing = sorted({p.date for p in predictions} - by_date.keys())
    if missing:
        raise ValueError(
            "no price bar for prediction date(s): " + ", ".join(str(d) for d in missing)
        )

    trades: list[TradeRecord] = []
    equity: list[tuple[dt.date, Decimal]] = []
    cumulative = Decimal("0")
    for pred in predictions:
        if pred.direction == "abstain":
            equity.append((pred.date, cumulative))
            continue
        bar = by_date[pred.date]
        change = bar.close - bar.open
        side = "long" if pred.direction == "up" else "short"
        points = change if side == "long" else -change
        gross = points * spec.point_value * spec.contracts
        net = gross - spec.commission * spec.contracts
        margin = bar.open * spec.point_value * spec.contracts * spec.margin_rate
        correct = (change > 0 and pred.direction == "up") or (
            change < 0 and pred.direction == "down"
        )
        cumulative += net
        trades.append(
            TradeRecord(
                date=pred.date,
                side=side,
                open=bar.open,
                close=bar.close,
                points=points,
                gross_pnl=gross,
                net_pnl=net,
                margin_posted=margin,
                correct=correct,
                zero_change=change == 0,
            )
        )
        equity.append((pred.date, cumulative))

    counted = [
        t for t in trades if not (zero_accuracy == "exclude" and t.zero_change)
    ]
    acc = sum(t.correct for t in counted) / len(counted) if counted else None
    if trades:
        average_margin = sum(t.margin_posted for t in trades) / len(trades)
        roi = cumulative / average_margin
    else:
        average_margin = None
        roi = None
    return BacktestResult(
        trades=tuple(trades),
        accuracy=acc,
        total_net_pnl=cumulative,
        equity_curve=tuple(equity),
        average_margin=average_margin,
        return_on_investment=roi,
        n_predictions=len(predictions),
        n_abstained=len(predictions) - len(trades),
    )


def accuracy(predictions: Sequence[Prediction], realized: Sequence[str]) -> float | None:
    """Fraction of non-abstain calls matching the realized directions.

    ``realized`` pairs one-to-one with ``predictions``; abstains drop out
    with their partner.  Returns None when nothing remains to score.
    """
    if len(predictions) != len(realized):
        raise ValueError(
            f"got {len(predictions)} predictions but {len(realized)} realized directions"
        )
    pairs = [(p, r) for p, r in zip(predictions, realized) if p.direction != "abstain"]
    if not pairs:
        return None
    return sum(p.direction == r for p, r in pairs) / len(pairs)


@dataclass(frozen=True)
class SweepCell:
    """One (w, m) grid cell of a parameter sweep."""

    w: int
    m: int
    config: StrategyConfig
    result: BacktestResult


def sweep(
    text: SymbolSequence,
    dates: tuple[dt.date, ...],
    bars: PriceSeries,
    m_values: Iterable[int],
    w_values: Iterable[int],
    spec: ContractSpec = ContractSpec(),
    *,
    config: StrategyConfig | None = None,
    eval_start: dt.date | None = None,
    eval_end: dt.date | None = None,
    zero_accuracy: str = "incorrect",
) -> list[SweepCell]:
    """Grid of walk-forward backtests sharing one evaluation period.

    The first target session is fixed by the largest window (or later, by
    ``eval_start``), so every (w, m) cell predicts exactly the same dates
    and the cells are directly comparable.  ``config``, if given, is the
    template whose m and w are replaced per cell.  Cells come back ordered
    by (w, m).
    """
    m_values = sorted(set(m_values))
    w_values = sorted(set(w_values))
    if not m_values or not w_values:
        raise ValueError("empty sweep grid")
    n = len(text)
    if len(dates) != n:
        raise ValueError("dates must align one-to-one with the text")
    max_w = w_values[-1]
    first = max_w
    if eval_start is not None:
        first = next((i for i, d in enumerate(dates) if d >= eval_start), n)
        if first < max_w:
            raise ValueError(
                f"evaluation start {eval_start} has only {first} sessions of history; "
                f"w={max_w} needs {max_w}"
            )
    last = n - 1
    if eval_end is not None:
        last = next((i for i in range(n - 1, -1, -1) if dates[i] <= eval_end), -1)
    if first > last or first >= n:
        raise ValueError("empty evaluation period")

    cells = []
    for w in w_values:
        for m in m_values:
            cfg = (
                replace(config, m=m, w=w)
                if config is not None
                else StrategyConfig(m=m, w=w)
            )
            predictions = []
            for t in range(first, last + 1):
                pred = predict_at(text, t, cfg)
                predictions.append(
                    replace(pred, date=dates[t], window_end_date=dates[t - 1])
                )
            cells.append(
                SweepCell(w, m, cfg, execute(predictions, bars, spec, zero_accuracy=zero_accuracy))
            )
    return cells
