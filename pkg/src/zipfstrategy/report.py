"""Deterministic TSV/JSON emission of analysis artifacts.

Output files use tab delimiters, ``.`` decimals, ``\\n`` line endings and
UTF-8.  Identical inputs produce byte-identical data files; the manifest
records what those inputs were (data digest, resolved configuration,
seeds), so a run can be audited and reproduced.  Every JSON document
written here validates against one of the schema files shipped under
``schemas/``.
"""

from __future__ import annotations

import datetime as dt
import hashlib
import json
import math
from dataclasses import dataclass
from decimal import Decimal
from importlib import resources
from pathlib import Path
from typing import Mapping, Sequence

from ._version import __version__
from .backtest import BacktestResult, SweepCell
from .strategy import Prediction
from .zipf import RankTable, ZetaSweepPoint, ZipfFit

_NA = "NA"
_CENT = Decimal("0.01")


def _fnum(x) -> str:
    if x is None:
        return _NA
    x = float(x)
    if math.isnan(x):
        return _NA
    return format(x, ".10g")


def _money_str(x: Decimal | None) -> str:
    if x is None:
        return _NA
    return str(x.quantize(_CENT))


def _money_json(x: Decimal | None) -> float | None:
    if x is None:
        return None
    return float(x.quantize(_CENT))


def _opt_float(x) -> float | None:
    return None if x is None else float(x)


def _write_text(path: Path, text: str) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    return path


def _write_tsv(path: Path, header: Sequence[str], rows: Sequence[Sequence[str]]) -> Path:
    lines = ["\t".join(header)]
    lines.extend("\t".join(row) for row in rows)
    return _write_text(path, "\n".join(lines) + "\n")


def _write_json(path: Path, obj) -> Path:
    return _write_text(path, json.dumps(obj, sort_keys=True, indent=2) + "\n")


def load_schema(name: str) -> dict:
    """One of the shipped JSON schemas (manifest, summary, rank_plot, prediction)."""
    text = resources.files("zipfstrategy").joinpath("schemas", name).read_text("utf-8")
    return json.loads(text)


@dataclass(frozen=True)
class RunManifest:
    """Provenance record for one output directory.

    Re-running with the same input digest, configuration and seeds must
    reproduce every data file byte for byte; ``created_at`` is the only
    field allowed to differ between such runs.
    """

    input_path: str
    input_digest: str
    config: dict
    version: str
    created_at: str

    @classmethod
    def create(cls, input_path: str | Path, config: Mapping) -> "RunManifest":
        digest = hashlib.sha256(Path(input_path).read_bytes()).hexdigest()
        return cls(
            input_path=str(input_path),
            input_digest=digest,
            config=dict(config),
            version=__version__,
            created_at=dt.datetime.now(dt.timezone.utc).isoformat(timespec="seconds"),
        )

    def to_dict(self) -> dict:
        return {
            "input_path": self.input_path,
            "input_digest": self.input_digest,
            "config": self.config,
            "version": self.version,
            "created_at": self.created_at,
        }


def write_manifest(manifest: RunManifest, out_dir: str | Path) -> Path:
    return _write_json(Path(out_dir) / "manifest.json", manifest.to_dict())


def rank_table_to_tsv(table: RankTable) -> str:
    """Plain ``rank<TAB>frequency<TAB>word`` export of one table."""
    lines = ["rank\tfrequency\tword"]
    lines.extend(f"{e.rank}\t{_fnum(e.frequency)}\t{e.word}" for e in table.entries)
    return "\n".join(lines) + "\n"


def rank_table_records(table: RankTable) -> list[dict]:
    """One JSON-ready record per table entry."""
    return [
        {"rank": e.rank, "word": e.word, "count": e.count, "frequency": e.frequency}
        for e in table.entries
    ]


def fit_to_record(fit: ZipfFit | None) -> dict | None:
    if fit is None:
        return None
    return {
        "zeta": fit.zeta,
        "intercept": fit.intercept,
        "r_squared": fit.r_squared,
        "n_points": fit.n_points,
        "raw_slope": fit.raw_slope,
    }


def emit_rank_plot_data(
    real: tuple[RankTable, ZipfFit | None],
    shuffled: tuple[RankTable, ZipfFit | None] | None,
    out_dir: str | Path,
    *,
    w: int,
    m: int,
    counting: str = "block",
    seed: int | None = None,
) -> tuple[Path, Path]:
    """Log-log plot data for one window: observed points plus fitted lines.

    Writes ``rank_w{w}_m{m}.tsv`` (columns rank, freq_real, fit_real,
    freq_shuffled, fit_shuffled; missing cells are NA) and a JSON sidecar
    with both fits.  A degenerate shuffled side is emitted as NA columns
    while the real side stays intact.
    """
    real_table, real_fit = real
    shuf_table, shuf_fit = shuffled if shuffled is not None else (None, None)

    def line_value(fit: ZipfFit | None, k: int) -> str:
        if fit is None:
            return _NA
        return _fnum(math.exp(fit.intercept + fit.raw_slope * math.log(k)))

    n_rows = max(len(real_table), len(shuf_table) if shuf_table is not None else 0)
    rows = []
    for k in range(1, n_rows + 1):
        freq_real = (
            _fnum(real_table.entries[k - 1].frequency) if k <= len(real_table) else _NA
        )
        freq_shuf = (
            _fnum(shuf_table.entries[k - 1].frequency)
            if shuf_table is not None and k <= len(shuf_table)
            else _NA
        )
        rows.append(
            [str(k), freq_real, line_value(real_fit, k), freq_shuf, line_value(shuf_fit, k)]
        )
    out_dir = Path(out_dir)
    tsv_path = _write_tsv(
        out_dir / f"rank_w{w}_m{m}.tsv",
        ["rank", "freq_real", "fit_real", "freq_shuffled", "fit_shuffled"],
        rows,
    )
    sidecar = {
        "w": w,
        "m": m,
        "counting": counting,
        "seed": seed,
        "real": fit_to_record(real_fit),
        "shuffled": fit_to_record(shuf_fit),
    }
    json_path = _write_json(out_dir / f"rank_w{w}_m{m}.json", sidecar)
    return tsv_path, json_path


def summary_row(cell: SweepCell) -> dict:
    res = cell.result
    return {
        "w": cell.w,
        "m": cell.m,
        "accuracy": _opt_float(res.accuracy),
        "profit": _money_json(res.total_net_pnl),
        "roi": _opt_float(res.return_on_investment),
        "average_margin": _money_json(res.average_margin),
        "n_trades": len(res.trades),
        "n_abstained": res.n_abstained,
        "n_predictions": res.n_predictions,
    }


def emit_summary(
    cells: Sequence[SweepCell], manifest: RunManifest, out_dir: str | Path
) -> tuple[Path, Path, Path]:
    """Table-style sweep summary: one row per (w, m) cell, TSV plus JSON.

    The manifest lands alongside so the summary is self-describing.
    """
    if not cells:
        raise ValueError("empty sweep: nothing to summarize")
    out_dir = Path(out_dir)
    ordered = sorted(cells, key=lambda c: (c.w, c.m))
    rows = [
        [
            str(c.w),
            str(c.m),
            _fnum(c.result.accuracy),
            _money_str(c.result.total_net_pnl),
            _fnum(c.result.return_on_investment),
        ]
        for c in ordered
    ]
    tsv_path = _write_tsv(out_dir / "summary.tsv", ["w", "m", "accuracy", "profit", "roi"], rows)
    json_path = _write_json(out_dir / "summary.json", {"rows": [summary_row(c) for c in ordered]})
    manifest_path = write_manifest(manifest, out_dir)
    return tsv_path, json_path, manifest_path


def emit_equity_curve(result: BacktestResult, out_dir: str | Path, *, w: int, m: int) -> Path:
    """Cumulative net P&L per session as ``equity_w{w}_m{m}.tsv``."""
    rows = [[str(date), _money_str(value)] for date, value in result.equity_curve]
    return _write_tsv(Path(out_dir) / f"equity_w{w}_m{m}.tsv", ["date", "cumulative_pnl"], rows)


def emit_zeta_sweep(points: Sequence[ZetaSweepPoint], out_dir: str | Path, *, m: int) -> Path:
    """Window-length dependence of the local exponents, one row per w."""
    header = [
        "w",
        "n_positions",
        "n_fitted_real",
        "n_fitted_shuffled",
        "mean_zeta_real",
        "std_zeta_real",
        "mean_zeta_shuffled",
        "std_zeta_shuffled",
    ]
    rows = [
        [
            str(p.w),
            str(p.n_positions),
            str(p.n_fitted_real),
            str(p.n_fitted_shuffled),
            _fnum(p.mean_real),
            _fnum(p.std_real),
            _fnum(p.mean_shuffled),
            _fnum(p.std_shuffled),
        ]
        for p in points
    ]
    return _write_tsv(Path(out_dir) / f"zeta_sweep_m{m}.tsv", header, rows)


def prediction_record(pred: Prediction, *, m: int, w: int) -> dict:
    return {
        "date": pred.date.isoformat() if pred.date is not None else None,
        "p_up": pred.p_up,
        "p_down": pred.p_down,
        "direction": pred.direction,
        "zeta": pred.zeta,
        "m": m,
        "w": w,
    }


def emit_predictions(
    predictions: Sequence[Prediction], path: str | Path, *, m: int, w: int
) -> Path:
    """JSON-lines export: one ``{date, p_up, p_down, direction, zeta, m, w}`` per row."""
    lines = [
        json.dumps(prediction_record(p, m=m, w=w), sort_keys=True) for p in predictions
    ]
    return _write_text(Path(path), "\n".join(lines) + "\n" if lines else "")
