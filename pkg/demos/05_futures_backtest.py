"""
Settling the predictions as futures day trades
==============================================

Every directional call becomes one same-day futures round trip: long at
the open on an up call, short at the open on a down call, closed at that
session's close.  With a 10-per-point contract and a 10% margin, a 2%
index move returns 20% on the posted deposit; leverage cuts both ways,
which is why the equity curves below are anything but smooth.

A grid over window lengths and word lengths shares one evaluation period
(the largest window decides the first tradable session), so cells are
directly comparable.  All cash arithmetic is exact decimal.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from zipfstrategy import (
    Alphabet,
    ContractSpec,
    RunManifest,
    aligned_dates,
    daylight_increments,
    emit_equity_curve,
    emit_summary,
    load_csv,
    sweep,
    symbolize,
)
from zipfstrategy.ingest import write_csv
from zipfstrategy.synthetic import random_walk_bars

DATA_CSV = None
M_VALUES = [4, 5, 6]
W_VALUES = [400, 500, 600]
CONTRACT = ContractSpec(point_value="10", margin_rate="0.10", commission="0", contracts=1)
OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

if DATA_CSV:
    data_path = DATA_CSV
    bars = load_csv(DATA_CSV)
else:
    data_path = OUT / "synthetic_sessions.csv"
    bars = random_walk_bars(2000, seed=47)
    write_csv(bars, data_path)

increments = daylight_increments(bars)
text = symbolize(increments, Alphabet.binary())
dates = aligned_dates(increments, text)

cells = sweep(text, dates, bars, M_VALUES, W_VALUES, CONTRACT)

print(f"{'w':>5} {'m':>3} {'trades':>7} {'accuracy':>9} {'profit':>12} {'ROI':>8}")
for cell in cells:
    res = cell.result
    print(f"{cell.w:>5} {cell.m:>3} {len(res.trades):>7} {res.accuracy:>9.1%} "
          f"{res.total_net_pnl:>12.2f} {float(res.return_on_investment):>8.1%}")

manifest = RunManifest.create(data_path, {
    "command": "demo-sweep", "m": M_VALUES, "w": W_VALUES, "seed": 47,
    "point_value": "10", "margin_rate": "0.10", "commission": "0", "contracts": 1,
})
emit_summary(cells, manifest, OUT)

fig, ax = plt.subplots(figsize=(9, 5))
for cell in cells:
    if cell.m != 4:
        continue
    emit_equity_curve(cell.result, OUT, w=cell.w, m=cell.m)
    curve_dates = [d for d, _ in cell.result.equity_curve]
    values = [float(v) for _, v in cell.result.equity_curve]
    ax.plot(curve_dates, values, lw=1, label=f"w={cell.w}, m={cell.m}")
ax.axhline(0, color="gray", lw=0.5)
ax.set_ylabel("cumulative net profit")
ax.set_title("equity curves over the shared evaluation period")
ax.legend()
fig.tight_layout()
fig.savefig(OUT / "equity_curves.png", dpi=120)
print(f"wrote {OUT}/summary.tsv, equity_w*_m4.tsv and equity_curves.png")
