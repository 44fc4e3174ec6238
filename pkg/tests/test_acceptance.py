"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines as
they happen.  Criterion 7 needs real WIG20 open/close data, which is not
distributed here; point ZIPF_WIG20_CSV at a CSV covering Dec 20 1999 to
May 25 2010 to have the comparison reported (it is informational either
way, never a gate).
"""

import datetime as dt
import hashlib
import itertools
import json
import os
import time
from decimal import Decimal

import numpy as np
import pytest

from conftest import make_bars, oracle_rank_table, seq, table_rows
from zipfstrategy import (
    ContractSpec,
    Prediction,
    RankEntry,
    RankTable,
    StrategyConfig,
    WordCounting,
    accuracy,
    aligned_dates,
    count_words,
    daylight_increments,
    execute,
    fit_zipf,
    load_csv,
    local_zipf_series,
    run_walkforward,
    sweep,
    symbolize,
)
from zipfstrategy.cli import main
from zipfstrategy.ingest import write_csv
from zipfstrategy.strategy import predict_at
from zipfstrategy.symbolic import Alphabet
from zipfstrategy.synthetic import binary_markov_text, iid_text, random_walk_bars


def _report(criterion: int, ok: bool, detail: str) -> None:
    status = "PASS" if ok else "FAIL"
    print(f"acceptance criterion {criterion}: {status} ({detail})")
    assert ok, f"criterion {criterion}: {detail}"


def test_criterion_1_worked_futures_example():
    started = time.perf_counter()
    bars = make_bars([("2008-05-08", "2500", "2550")])
    prediction = Prediction("up", 0.6, 0.4, 0.5, date=dt.date(2008, 5, 8))
    result = execute([prediction], bars, ContractSpec(contracts=2))
    trade = result.trades[0]
    elapsed = time.perf_counter() - started
    ok = (
        trade.margin_posted == Decimal("5000")
        and trade.net_pnl == Decimal("1000")
        and trade.return_on_margin == Decimal("0.2")
        and elapsed < 1.0
    )
    _report(
        1,
        ok,
        f"margin={trade.margin_posted} profit={trade.net_pnl} "
        f"roi={trade.return_on_margin} in {elapsed:.3f}s",
    )


def test_criterion_2_exponent_recovery():
    started = time.perf_counter()
    worst = 0.0
    for zeta in [0.1, 0.3, 0.5, 0.7, 0.9, 1.1, 1.3, 1.5]:
        for n in range(2, 65):
            weights = [k**-zeta for k in range(1, n + 1)]
            total = sum(weights)
            table = RankTable(
                tuple(
                    RankEntry(f"w{k:03d}", weights[k - 1], weights[k - 1] / total, k)
                    for k in range(1, n + 1)
                ),
                total,
            )
            worst = max(worst, abs(fit_zipf(table).zeta - zeta))
    elapsed = time.perf_counter() - started
    ok = worst < 1e-9 and elapsed < 1.0
    _report(2, ok, f"max |zeta error| = {worst:.2e} over 8 x 63 tables in {elapsed:.2f}s")


def test_criterion_3_oracle_equivalence_exhaustive():
    started = time.perf_counter()
    compared = 0
    for length in range(1, 13):
        for bits in itertools.product("ud", repeat=length):
            text = "".join(bits)
            for m in range(1, min(3, length) + 1):
                for mode in ("block", "sliding"):
                    got = table_rows(count_words(seq(text), WordCounting(m, mode)))
                    expected = oracle_rank_table(text, m, mode)
                    assert got == expected, (text, m, mode)
                    compared += 1
    elapsed = time.perf_counter() - started
    ok = elapsed < 10.0
    _report(3, ok, f"{compared} tables matched the brute-force oracle in {elapsed:.1f}s")


def test_criterion_4_correlation_sensitivity():
    started = time.perf_counter()
    text = binary_markov_text(3000, stay_prob=0.8, seed=20260810)
    details = []
    ok = True
    for w, m in itertools.product((400, 800), (4, 6)):
        _, zeta_real, zeta_shuffled = local_zipf_series(text, m, w, seed=99)
        both = ~(np.isnan(zeta_real) | np.isnan(zeta_shuffled))
        # a position missing either fit counts against the criterion
        exceed = float(np.mean(zeta_real[both] > zeta_shuffled[both]) * both.mean())
        mean_gap = float(np.nanmean(zeta_real) - np.nanmean(zeta_shuffled))
        details.append(f"(w={w},m={m}): {exceed:.1%} exceed, mean gap {mean_gap:+.3f}")
        ok = ok and exceed >= 0.95 and mean_gap > 0
    elapsed = time.perf_counter() - started
    ok = ok and elapsed < 60.0
    _report(4, ok, "; ".join(details) + f"; {elapsed:.1f}s")


def test_criterion_5_null_calibration():
    started = time.perf_counter()
    text = iid_text(3000, seed=77)
    config = StrategyConfig(m=4, w=400)
    predictions = run_walkforward(text, config)
    realized = [
        "up" if text.text[p.session_index] == "u" else "down" for p in predictions
    ]
    acc = accuracy(predictions, realized)
    # abstention contract: under the default policy an abstain is an exact
    # probability tie; under the withhold policy unseen candidates abstain
    rank_ok = all(
        p.p_up == p.p_down for p in predictions if p.direction == "abstain"
    )
    withheld = run_walkforward(text, StrategyConfig(m=4, w=400, unseen="abstain"))
    n_rank = sum(p.direction == "abstain" for p in predictions)
    n_withheld = sum(p.direction == "abstain" for p in withheld)
    elapsed = time.perf_counter() - started
    ok = (
        len(predictions) >= 2000
        and abs(acc - 0.5) <= 0.03
        and rank_ok
        and n_withheld >= n_rank
        and elapsed < 60.0
    )
    _report(
        5,
        ok,
        f"accuracy={acc:.4f} over {len(predictions)} predictions, "
        f"abstains rank/withhold={n_rank}/{n_withheld}, {elapsed:.1f}s",
    )


def test_criterion_6_no_look_ahead():
    started = time.perf_counter()
    text = binary_markov_text(300, stay_prob=0.7, seed=6)
    config = StrategyConfig(m=4, w=100)
    rng = np.random.Generator(np.random.PCG64(616))
    trials = 1000
    for _ in range(trials):
        t = int(rng.integers(100, len(text)))
        baseline = predict_at(text, t, config)
        pos = int(rng.integers(t, len(text)))
        flipped = "u" if text.text[pos] == "d" else "d"
        mutated = seq(text.text[:pos] + flipped + text.text[pos + 1 :])
        assert predict_at(mutated, t, config) == baseline, (t, pos)
    elapsed = time.perf_counter() - started
    ok = elapsed < 60.0
    _report(6, ok, f"{trials} future-letter mutations left predictions intact, {elapsed:.1f}s")


def test_criterion_7_table_grid_mechanics_and_optional_replication():
    # the numeric replication needs proprietary WIG20 session data and the
    # original commission/contract conventions; it is reported, not gating
    bars = random_walk_bars(1300, seed=73)
    increments = daylight_increments(bars)
    text = symbolize(increments, Alphabet.binary())
    dates = aligned_dates(increments, text)
    cells = sweep(text, dates, bars, [4, 5, 6], [400, 500, 600, 700, 800])
    grid_ok = [(c.w, c.m) for c in cells] == [
        (w, m) for w in (400, 500, 600, 700, 800) for m in (4, 5, 6)
    ]
    reference = [d for d, _ in cells[0].result.equity_curve]
    aligned = all(
        [d for d, _ in c.result.equity_curve] == reference for c in cells
    )
    populated = all(
        c.result.accuracy is not None and c.result.n_predictions == len(reference)
        for c in cells
    )
    _report(
        7,
        grid_ok and aligned and populated,
        f"5x3 grid over a single {len(reference)}-session evaluation period",
    )

    wig20 = os.environ.get("ZIPF_WIG20_CSV")
    if not wig20:
        print(
            "acceptance criterion 7 (replication): REPORTED ONLY, skipped: "
            "set ZIPF_WIG20_CSV to a Dec 1999 - May 2010 open/close CSV"
        )
        return
    series = load_csv(wig20, resort=True)
    increments = daylight_increments(series)
    text = symbolize(increments, Alphabet.binary())
    dates = aligned_dates(increments, text)
    cells = sweep(
        text,
        dates,
        series,
        [4, 5, 6],
        [400, 500, 600, 700, 800],
        eval_start=dt.date(2008, 5, 8),
        eval_end=dt.date(2010, 5, 25),
    )
    for cell in cells:
        print(
            f"  w={cell.w} m={cell.m}: accuracy={cell.result.accuracy:.3f} "
            f"profit={cell.result.total_net_pnl:.2f}"
        )
    headline = next(c for c in cells if (c.w, c.m) == (500, 6))
    gap = abs(headline.result.accuracy - 0.570)
    print(
        "acceptance criterion 7 (replication): REPORTED ONLY: "
        f"(w=500, m=6) accuracy={headline.result.accuracy:.3f} vs target 0.570 "
        f"(|gap|={gap:.3f}, documented tolerance 0.02), "
        f"profit={headline.result.total_net_pnl:.0f} vs 19230"
    )


def test_criterion_8_deterministic_outputs(tmp_path):
    started = time.perf_counter()
    data = tmp_path / "sessions.csv"
    write_csv(random_walk_bars(3000, seed=12345), data)
    args = ["sweep", "--data", str(data), "--m", "4,5,6", "--w", "400,500,600,700,800",
            "--seed", "11"]
    out_a, out_b = tmp_path / "a", tmp_path / "b"
    assert main(args + ["--out", str(out_a)]) == 0
    assert main(args + ["--out", str(out_b)]) == 0

    def digests(folder):
        return {
            p.name: hashlib.sha256(p.read_bytes()).hexdigest()
            for p in sorted(folder.iterdir())
            if p.name != "manifest.json"
        }

    same_files = digests(out_a) == digests(out_b)
    manifest_a = json.loads((out_a / "manifest.json").read_text(encoding="utf-8"))
    manifest_b = json.loads((out_b / "manifest.json").read_text(encoding="utf-8"))
    manifest_a.pop("created_at")
    manifest_b.pop("created_at")
    same_manifest = manifest_a == manifest_b
    elapsed = time.perf_counter() - started
    ok = same_files and same_manifest and elapsed < 60.0
    _report(
        8,
        ok,
        f"{len(digests(out_a))} data files byte-identical across runs, "
        f"manifests equal up to timestamp, {elapsed:.1f}s",
    )
