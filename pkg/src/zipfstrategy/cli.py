"""Command-line pipeline around the library.

Four subcommands share one flag set: ``analyze`` emits rank-frequency
plot data and the window-length dependence of the local exponents,
``predict`` emits walk-forward predictions plus the forecast for the next
unobserved session, ``backtest`` settles one (w, m) cell into a trade
ledger, and ``sweep`` runs the full (w, m) grid over a common evaluation
period.  Exit codes: 0 on success, 2 on input validation failure.

Flags may also be given in a ``key=value`` config file (``--config``);
command-line flags override file values, file values override defaults.
"""

from __future__ import annotations

import argparse
import datetime as dt
import json
import sys
from decimal import Decimal, InvalidOperation
from pathlib import Path

from .backtest import ContractSpec, SweepCell, execute, sweep
from .ingest import DataFormatError, daylight_increments, load_csv
from .report import (
    RunManifest,
    emit_equity_curve,
    emit_predictions,
    emit_rank_plot_data,
    emit_summary,
    emit_zeta_sweep,
    prediction_record,
    write_manifest,
)
from .strategy import StrategyConfig, predict_at, run_walkforward
from .symbolic import Alphabet, SymbolSequence, aligned_dates, shuffle, symbolize
from .zipf import WordCounting, count_words, fit_zipf, zeta_vs_window_sweep


def _int_list(raw: str) -> list[int]:
    try:
        values = [int(part) for part in raw.split(",") if part.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got '{raw}'")
    if not values:
        raise argparse.ArgumentTypeError("expected at least one integer")
    return values


def _decimal(raw: str) -> Decimal:
    try:
        return Decimal(raw)
    except InvalidOperation:
        raise argparse.ArgumentTypeError(f"expected a decimal number, got '{raw}'")


def _iso_date(raw: str) -> dt.date:
    try:
        return dt.date.fromisoformat(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected YYYY-MM-DD, got '{raw}'")


def _bool(raw: str) -> bool:
    low = raw.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got '{raw}'")


# Converters for config-file values, keyed by argparse dest.
_FILE_CONVERTERS = {
    "data": str,
    "m": _int_list,
    "w": _int_list,
    "horizon": int,
    "counting": str,
    "zero_as": str,
    "unseen": str,
    "seed": int,
    "zeta_source": str,
    "point_value": _decimal,
    "margin_rate": _decimal,
    "commission": _decimal,
    "contracts": int,
    "out": str,
    "date_col": str,
    "open_col": str,
    "close_col": str,
    "resort": _bool,
    "fit_min_rank": int,
    "fit_max_rank": int,
    "eval_start": _iso_date,
    "eval_end": _iso_date,
    "zero_accuracy": str,
}


def _load_config_file(path: str) -> dict:
    values = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ValueError(f"{path}:{lineno}: expected key=value, got '{stripped}'")
        key, raw = (part.strip() for part in stripped.split("=", 1))
        dest = key.replace("-", "_")
        if dest not in _FILE_CONVERTERS:
            raise ValueError(f"{path}:{lineno}: unknown option '{key}'")
        try:
            values[dest] = _FILE_CONVERTERS[dest](raw)
        except (argparse.ArgumentTypeError, ValueError) as exc:
            raise ValueError(f"{path}:{lineno}: bad value for '{key}': {exc}") from None
    return values


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--data", required=False, help="input CSV of open/close sessions")
    parser.add_argument("--config", help="key=value file mirroring the flags")
    parser.add_argument("--horizon", type=int, choices=(1, 2, 3), default=1)
    parser.add_argument("--counting", choices=("block", "sliding"), default="block")
    parser.add_argument("--zero-as", dest="zero_as", choices=("up", "down", "drop"), default="down")
    parser.add_argument("--unseen", choices=("rank", "abstain"), default="rank")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--zeta-source", dest="zeta_source", choices=("real", "shuffled"), default="real")
    parser.add_argument("--point-value", dest="point_value", type=_decimal, default=Decimal("10"))
    parser.add_argument("--margin-rate", dest="margin_rate", type=_decimal, default=Decimal("0.10"))
    parser.add_argument("--commission", type=_decimal, default=Decimal("0"))
    parser.add_argument("--contracts", type=int, default=1)
    parser.add_argument("--out", help="output directory for TSV/JSON artifacts")
    parser.add_argument("--date-col", dest="date_col", default="date")
    parser.add_argument("--open-col", dest="open_col", default="open")
    parser.add_argument("--close-col", dest="close_col", default="close")
    parser.add_argument("--resort", action="store_true", help="accept out-of-order rows by re-sorting")
    parser.add_argument("--fit-min-rank", dest="fit_min_rank", type=int, default=None)
    parser.add_argument("--fit-max-rank", dest="fit_max_rank", type=int, default=None)
    parser.add_argument("--eval-start", dest="eval_start", type=_iso_date, default=None)
    parser.add_argument("--eval-end", dest="eval_end", type=_iso_date, default=None)
    parser.add_argument(
        "--zero-accuracy",
        dest="zero_accuracy",
        choices=("incorrect", "exclude"),
        default="incorrect",
        help="how a zero open-close change scores against a directional call",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zipf-strategy",
        description="Rank-frequency analysis and day-trading backtest over open/close sessions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    grid_m = [4, 5, 6]
    grid_w = [400, 500, 600, 700, 800]

    p_analyze = sub.add_parser("analyze", help="rank tables, exponent fits, window sweep")
    p_analyze.add_argument("--m", type=_int_list, default=grid_m)
    p_analyze.add_argument("--w", type=_int_list, default=grid_w)
    _add_common(p_analyze)

    p_predict = sub.add_parser("predict", help="walk-forward predictions and next-session forecast")
    p_predict.add_argument("--m", type=_int_list, default=[6])
    p_predict.add_argument("--w", type=_int_list, default=[500])
    _add_common(p_predict)

    p_backtest = sub.add_parser("backtest", help="trade ledger for one (w, m) cell")
    p_backtest.add_argument("--m", type=_int_list, default=[6])
    p_backtest.add_argument("--w", type=_int_list, default=[500])
    _add_common(p_backtest)

    p_sweep = sub.add_parser("sweep", help="(w, m) grid over a common evaluation period")
    p_sweep.add_argument("--m", type=_int_list, default=grid_m)
    p_sweep.add_argument("--w", type=_int_list, default=grid_w)
    _add_common(p_sweep)

    return parser


def _apply_config_file(args: argparse.Namespace, argv: list[str]) -> None:
    if not args.config:
        return
    file_values = _load_config_file(args.config)
    explicit = set()
    for token in argv:
        if token.startswith("--"):
            explicit.add(token[2:].split("=", 1)[0].replace("-", "_"))
    for dest, value in file_values.items():
        if dest not in explicit:
            setattr(args, dest, value)


def _single(values: list[int], flag: str, command: str) -> int:
    if len(values) != 1:
        raise ValueError(f"{command} takes a single {flag} value, got {values}")
    return values[0]


def _pipeline(args):
    if not args.data:
        raise ValueError("--data is required (CSV with date, open and close columns)")
    series = load_csv(
        args.data,
        date_col=args.date_col,
        open_col=args.open_col,
        close_col=args.close_col,
        resort=args.resort,
    )
    increments = daylight_increments(series)
    alphabet = Alphabet.binary(args.zero_as)
    text = symbolize(increments, alphabet)
    dates = aligned_dates(increments, text)
    return series, text, dates


def _strategy_config(args, m: int, w: int) -> StrategyConfig:
    return StrategyConfig(
        m=m,
        w=w,
        horizon=args.horizon,
        counting=args.counting,
        zeta_source=args.zeta_source,
        unseen=args.unseen,
        zero_as=args.zero_as,
        seed=args.seed,
        fit_min_rank=args.fit_min_rank,
        fit_max_rank=args.fit_max_rank,
    )


def _contract(args) -> ContractSpec:
    return ContractSpec(
        point_value=args.point_value,
        margin_rate=args.margin_rate,
        commission=args.commission,
        contracts=args.contracts,
    )


def _resolved_config(args) -> dict:
    return {
        "command": args.command,
        "m": args.m,
        "w": args.w,
        "horizon": args.horizon,
        "counting": args.counting,
        "zero_as": args.zero_as,
        "unseen": args.unseen,
        "seed": args.seed,
        "zeta_source": args.zeta_source,
        "tie_break": "lexicographic",
        "point_value": str(args.point_value),
        "margin_rate": str(args.margin_rate),
        "commission": str(args.commission),
        "contracts": args.contracts,
        "date_col": args.date_col,
        "open_col": args.open_col,
        "close_col": args.close_col,
        "resort": args.resort,
        "fit_min_rank": args.fit_min_rank,
        "fit_max_rank": args.fit_max_rank,
        "eval_start": args.eval_start.isoformat() if args.eval_start else None,
        "eval_end": args.eval_end.isoformat() if args.eval_end else None,
        "zero_accuracy": args.zero_accuracy,
    }


def _manifest(args) -> RunManifest:
    return RunManifest.create(args.data, _resolved_config(args))


def _fmt(value, digits: int = 4) -> str:
    if value is None:
        return "NA"
    return format(float(value), f".{digits}g")


def cmd_analyze(args) -> int:
    _, text, _ = _pipeline(args)
    out = Path(args.out) if args.out else None
    for m in sorted(set(args.m)):
        points = zeta_vs_window_sweep(text, m, args.w, mode=args.counting, seed=args.seed)
        if out:
            emit_zeta_sweep(points, out, m=m)
        for w in sorted(set(args.w)):
            window = SymbolSequence(text.text[len(text) - w :], text.alphabet)
            counting = WordCounting(m, args.counting)
            real_table = count_words(window, counting)
            shuf_table = count_words(shuffle(window, args.seed), counting)

            def try_fit(table):
                try:
                    return fit_zipf(table, min_rank=args.fit_min_rank, max_rank=args.fit_max_rank)
                except ValueError:
                    return None

            real_fit = try_fit(real_table)
            shuf_fit = try_fit(shuf_table)
            print(
                f"w={w} m={m}: zeta_real={_fmt(real_fit.zeta if real_fit else None)} "
                f"zeta_shuffled={_fmt(shuf_fit.zeta if shuf_fit else None)} "
                f"r2={_fmt(real_fit.r_squared if real_fit else None)}"
                f"/{_fmt(shuf_fit.r_squared if shuf_fit else None)} "
                f"ranks={len(real_table)}/{len(shuf_table)}"
            )
            if out:
                emit_rank_plot_data(
                    (real_table, real_fit),
                    (shuf_table, shuf_fit),
                    out,
                    w=w,
                    m=m,
                    counting=args.counting,
                    seed=args.seed,
                )
    if out:
        write_manifest(_manifest(args), out)
        print(f"wrote {out}", file=sys.stderr)
    return 0


def cmd_predict(args) -> int:
    _, text, dates = _pipeline(args)
    m = _single(args.m, "--m", "predict")
    w = _single(args.w, "--w", "predict")
    config = _strategy_config(args, m, w)
    forecast = predict_at(text, len(text), config)
    print(json.dumps(prediction_record(forecast, m=m, w=w), sort_keys=True))
    if args.out:
        out = Path(args.out)
        history = run_walkforward(text, config, dates)
        emit_predictions(history, out / "predictions.jsonl", m=m, w=w)
        write_manifest(_manifest(args), out)
        print(f"wrote {out}", file=sys.stderr)
    return 0


def cmd_backtest(args) -> int:
    series, text, dates = _pipeline(args)
    m = _single(args.m, "--m", "backtest")
    w = _single(args.w, "--w", "backtest")
    config = _strategy_config(args, m, w)
    predictions = run_walkforward(text, config, dates)
    if args.eval_start is not None:
        predictions = [p for p in predictions if p.date >= args.eval_start]
    if args.eval_end is not None:
        predictions = [p for p in predictions if p.date <= args.eval_end]
    if not predictions:
        raise ValueError("empty evaluation period")
    result = execute(predictions, series, _contract(args), zero_accuracy=args.zero_accuracy)
    print(
        f"w={w} m={m}: trades={len(result.trades)} abstained={result.n_abstained} "
        f"accuracy={_fmt(result.accuracy)} profit={result.total_net_pnl:.2f} "
        f"roi={_fmt(result.return_on_investment)}"
    )
    if args.out:
        out = Path(args.out)
        cell = SweepCell(w, m, config, result)
        emit_summary([cell], _manifest(args), out)
        emit_equity_curve(result, out, w=w, m=m)
        emit_predictions(predictions, out / "predictions.jsonl", m=m, w=w)
        print(f"wrote {out}", file=sys.stderr)
    return 0


def cmd_sweep(args) -> int:
    series, text, dates = _pipeline(args)
    template = _strategy_config(args, min(args.m), min(args.w))
    cells = sweep(
        text,
        dates,
        series,
        args.m,
        args.w,
        _contract(args),
        config=template,
        eval_start=args.eval_start,
        eval_end=args.eval_end,
        zero_accuracy=args.zero_accuracy,
    )
    for cell in cells:
        res = cell.result
        print(
            f"w={cell.w} m={cell.m}: trades={len(res.trades)} abstained={res.n_abstained} "
            f"accuracy={_fmt(res.accuracy)} profit={res.total_net_pnl:.2f} "
            f"roi={_fmt(res.return_on_investment)}"
        )
    if args.out:
        out = Path(args.out)
        emit_summary(cells, _manifest(args), out)
        for cell in cells:
            emit_equity_curve(cell.result, out, w=cell.w, m=cell.m)
        print(f"wrote {out}", file=sys.stderr)
    return 0


_COMMANDS = {
    "analyze": cmd_analyze,
    "predict": cmd_predict,
    "backtest": cmd_backtest,
    "sweep": cmd_sweep,
}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _apply_config_file(args, argv)
        return _COMMANDS[args.command](args)
    except (DataFormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())
