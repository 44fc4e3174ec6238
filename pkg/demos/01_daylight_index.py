"""
The day-light index
===================

A trading session carries two kinds of change: the overnight gap between
yesterday's close and today's open, and the intraday move between the open
and the close.  A day trader only ever touches the second kind, so the
natural price history for day trading is the running sum of the intraday
changes: the "day-light" index.  It can drift far away from the ordinary
close-to-close history, because overnight gaps (often driven by overseas
sessions) are excluded.

This script builds both histories side by side.  Point DATA_CSV at a real
open/close file to use your own data; otherwise a seeded random walk
stands in.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from zipfstrategy import cumulative_daylight, daylight_increments, load_csv
from zipfstrategy.synthetic import random_walk_bars

DATA_CSV = None  # e.g. "my_sessions.csv" with date,open,close columns
OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

series = load_csv(DATA_CSV) if DATA_CSV else random_walk_bars(2600, seed=7)
increments = daylight_increments(series)
daylight = cumulative_daylight(increments)

print(f"{len(series)} sessions, {series.dates[0]} .. {series.dates[-1]}")
print(f"close-to-close move : {series[-1].close - series[0].close:+.2f} points")
print(f"day-light move      : {daylight[-1]:+.2f} points")

fig, (ax_close, ax_daylight) = plt.subplots(2, 1, figsize=(9, 6), sharex=True)
ax_close.plot(series.dates, [float(b.close) for b in series], lw=0.8)
ax_close.set_ylabel("close")
ax_close.set_title("index close history")
ax_daylight.plot(series.dates, [float(v) for v in daylight], lw=0.8, color="tab:orange")
ax_daylight.set_ylabel("cumulative open-close change")
ax_daylight.set_title("day-light index (intraday moves only)")
fig.tight_layout()
fig.savefig(OUT / "daylight_index.png", dpi=120)
print(f"wrote {OUT / 'daylight_index.png'}")
