import json

import jsonschema
import pytest

from conftest import seq
from zipfstrategy import (
    ContractSpec,
    Prediction,
    RunManifest,
    StrategyConfig,
    SweepCell,
    WordCounting,
    aligned_dates,
    count_words,
    daylight_increments,
    emit_equity_curve,
    emit_predictions,
    emit_rank_plot_data,
    emit_summary,
    emit_zeta_sweep,
    execute,
    fit_zipf,
    load_schema,
    run_walkforward,
    shuffle,
    symbolize,
    sweep,
    write_manifest,
    zeta_vs_window_sweep,
)
from zipfstrategy.report import rank_table_records, rank_table_to_tsv
from zipfstrategy.symbolic import Alphabet
from zipfstrategy.synthetic import binary_markov_text, random_walk_bars


@pytest.fixture
def pair():
    text = binary_markov_text(400, stay_prob=0.75, seed=3)
    counting = WordCounting(4, "block", w=300)
    real = count_words(text, counting)
    shuf = count_words(shuffle(text, 9), counting)
    return (real, fit_zipf(real)), (shuf, fit_zipf(shuf))


@pytest.fixture
def cells():
    bars = random_walk_bars(320, seed=21)
    increments = daylight_increments(bars)
    text = symbolize(increments, Alphabet.binary())
    dates = aligned_dates(increments, text)
    return sweep(text, dates, bars, [4, 5], [200], ContractSpec())


@pytest.fixture
def manifest(tmp_path):
    data = tmp_path / "input.csv"
    data.write_text("date,open,close\n2020-01-01,100,101\n", encoding="utf-8")
    return RunManifest.create(data, {"command": "sweep", "seed": 0, "m": [4], "w": [200]})


def test_rank_plot_row_count_is_max_table_size(pair, tmp_path):
    real, shuffled = pair
    tsv_path, json_path = emit_rank_plot_data(real, shuffled, tmp_path, w=300, m=4)
    lines = tsv_path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "rank\tfreq_real\tfit_real\tfreq_shuffled\tfit_shuffled"
    assert len(lines) - 1 == max(len(real[0]), len(shuffled[0]))
    sidecar = json.loads(json_path.read_text(encoding="utf-8"))
    assert sidecar["real"]["zeta"] == real[1].zeta
    assert sidecar["shuffled"]["zeta"] == shuffled[1].zeta


def test_rank_plot_degenerate_shuffled_marked_missing(pair, tmp_path):
    real, _ = pair
    degenerate = (count_words(seq("uuuuuuuu"), WordCounting(2, "block")), None)
    tsv_path, json_path = emit_rank_plot_data(real, degenerate, tmp_path, w=300, m=4)
    first_row = tsv_path.read_text(encoding="utf-8").splitlines()[1].split("\t")
    assert first_row[4] == "NA"  # no fitted line for the degenerate side
    assert json.loads(json_path.read_text(encoding="utf-8"))["shuffled"] is None


def test_rank_plot_deterministic_bytes(pair, tmp_path):
    real, shuffled = pair
    a, _ = emit_rank_plot_data(real, shuffled, tmp_path / "a", w=300, m=4)
    b, _ = emit_rank_plot_data(real, shuffled, tmp_path / "b", w=300, m=4)
    assert a.read_bytes() == b.read_bytes()


def test_summary_emission(cells, manifest, tmp_path):
    tsv_path, json_path, manifest_path = emit_summary(cells, manifest, tmp_path)
    lines = tsv_path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "w\tm\taccuracy\tprofit\troi"
    assert len(lines) - 1 == len(cells)
    assert manifest_path.exists()
    payload = json.loads(json_path.read_text(encoding="utf-8"))
    assert [(r["w"], r["m"]) for r in payload["rows"]] == [(200, 4), (200, 5)]


def test_summary_rejects_empty(manifest, tmp_path):
    with pytest.raises(ValueError, match="empty sweep"):
        emit_summary([], manifest, tmp_path)


def test_emitted_json_validates_against_schemas(cells, manifest, pair, tmp_path):
    real, shuffled = pair
    _, json_path, manifest_path = emit_summary(cells, manifest, tmp_path)
    _, rank_json = emit_rank_plot_data(real, shuffled, tmp_path, w=300, m=4, seed=9)
    jsonschema.validate(
        json.loads(json_path.read_text(encoding="utf-8")), load_schema("summary.schema.json")
    )
    jsonschema.validate(
        json.loads(manifest_path.read_text(encoding="utf-8")),
        load_schema("manifest.schema.json"),
    )
    jsonschema.validate(
        json.loads(rank_json.read_text(encoding="utf-8")), load_schema("rank_plot.schema.json")
    )


def test_prediction_jsonl_schema_and_fields(tmp_path):
    text = binary_markov_text(230, stay_prob=0.8, seed=5)
    preds = run_walkforward(text, StrategyConfig(m=4, w=200))
    path = emit_predictions(preds, tmp_path / "predictions.jsonl", m=4, w=200)
    schema = load_schema("prediction.schema.json")
    lines = path.read_text(encoding="utf-8").splitlines()
    assert len(lines) == len(preds)
    for line in lines:
        record = json.loads(line)
        jsonschema.validate(record, schema)
        assert set(record) == {"date", "p_up", "p_down", "direction", "zeta", "m", "w"}


def test_equity_curve_emission(cells, tmp_path):
    cell = cells[0]
    path = emit_equity_curve(cell.result, tmp_path, w=cell.w, m=cell.m)
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "date\tcumulative_pnl"
    assert len(lines) - 1 == len(cell.result.equity_curve)
    # last line carries the total
    assert lines[-1].split("\t")[1] == str(
        cell.result.total_net_pnl.quantize(__import__("decimal").Decimal("0.01"))
    )


def test_zeta_sweep_emission(tmp_path):
    text = binary_markov_text(500, stay_prob=0.8, seed=6)
    points = zeta_vs_window_sweep(text, 4, [200, 300], seed=7)
    path = emit_zeta_sweep(points, tmp_path, m=4)
    lines = path.read_text(encoding="utf-8").splitlines()
    assert len(lines) == 3
    assert lines[0].startswith("w\tn_positions")


def test_rank_table_plain_tsv(pair):
    real, _ = pair
    lines = rank_table_to_tsv(real[0]).splitlines()
    assert lines[0] == "rank\tfrequency\tword"
    assert lines[1].split("\t")[0] == "1"
    assert len(lines) - 1 == len(real[0])


def test_rank_table_json_records(pair):
    real, _ = pair
    records = rank_table_records(real[0])
    assert json.dumps(records)  # JSON-ready
    assert [r["rank"] for r in records] == list(range(1, len(real[0]) + 1))
    assert records[0].keys() == {"rank", "word", "count", "frequency"}


def test_manifest_digest_and_roundtrip(tmp_path):
    data = tmp_path / "input.csv"
    data.write_text("date,open,close\n2020-01-01,100,101\n", encoding="utf-8")
    manifest = RunManifest.create(data, {"seed": 1})
    import hashlib

    assert manifest.input_digest == hashlib.sha256(data.read_bytes()).hexdigest()
    path = write_manifest(manifest, tmp_path)
    loaded = json.loads(path.read_text(encoding="utf-8"))
    assert loaded["config"] == {"seed": 1}
    assert loaded["version"] == manifest.version
