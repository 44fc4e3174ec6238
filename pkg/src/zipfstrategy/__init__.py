"""Symbolic rank-frequency analysis of intraday index changes, and the
day-trading strategy built on it.

The pipeline: load open/close sessions (:mod:`zipfstrategy.ingest`), map
the intraday changes onto a small alphabet (:mod:`zipfstrategy.symbolic`),
rank m-letter words in moving windows and fit the frequency-decay
exponent against a shuffled baseline (:mod:`zipfstrategy.zipf`), convert
word ranks into next-session probabilities (:mod:`zipfstrategy.strategy`),
and settle the resulting futures day trades with margin and commission
(:mod:`zipfstrategy.backtest`).  :mod:`zipfstrategy.report` writes the
deterministic TSV/JSON artifacts, and the ``zipf-strategy`` command wraps
the whole pipeline; the ``demos/`` scripts in the repository walk through
each capability.
"""

from ._version import __version__
from .backtest import (
    BacktestResult,
    ContractSpec,
    SweepCell,
    TradeRecord,
    accuracy,
    execute,
    sweep,
)
from .ingest import (
    DataFormatError,
    IncrementSeries,
    PriceBar,
    PriceSeries,
    cumulative_daylight,
    daylight_increments,
    load_csv,
    write_csv,
)
from .report import (
    RunManifest,
    emit_equity_curve,
    emit_predictions,
    emit_rank_plot_data,
    emit_summary,
    emit_zeta_sweep,
    load_schema,
    write_manifest,
)
from .strategy import (
    CandidateRanks,
    Prediction,
    StrategyConfig,
    candidate_words,
    predict,
    predict_at,
    rank_candidates,
    run_walkforward,
)
from .symbolic import Alphabet, SymbolSequence, aligned_dates, shuffle, symbolize
from .zipf import (
    RankEntry,
    RankTable,
    WordCounting,
    ZetaSweepPoint,
    ZipfFit,
    count_words,
    fit_pair,
    fit_zipf,
    local_zipf_series,
    zeta_from_hurst,
    zeta_vs_window_sweep,
)

__all__ = [
    "__version__",
    "Alphabet",
    "BacktestResult",
    "CandidateRanks",
    "ContractSpec",
    "DataFormatError",
    "IncrementSeries",
    "Prediction",
    "PriceBar",
    "PriceSeries",
    "RankEntry",
    "RankTable",
    "RunManifest",
    "StrategyConfig",
    "SweepCell",
    "SymbolSequence",
    "TradeRecord",
    "WordCounting",
    "ZetaSweepPoint",
    "ZipfFit",
    "accuracy",
    "aligned_dates",
    "candidate_words",
    "count_words",
    "cumulative_daylight",
    "daylight_increments",
    "emit_equity_curve",
    "emit_predictions",
    "emit_rank_plot_data",
    "emit_summary",
    "emit_zeta_sweep",
    "execute",
    "fit_pair",
    "fit_zipf",
    "load_csv",
    "load_schema",
    "local_zipf_series",
    "predict",
    "predict_at",
    "rank_candidates",
    "run_walkforward",
    "shuffle",
    "sweep",
    "symbolize",
    "write_csv",
    "write_manifest",
    "zeta_from_hurst",
    "zeta_vs_window_sweep",
]
