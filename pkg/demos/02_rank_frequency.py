"""
Word ranks and the frequency power law
======================================

Turn the intraday changes into a two-letter text (u for an up session, d
for a down session), cut the last w letters into non-overlapping m-letter
words, and rank the words by how often they occur.  In log-log coordinates
the rank-frequency points fall roughly on a line; its negated slope is the
Zipf exponent zeta.

The same count on a shuffled copy of the window shows what a memoryless
text of identical composition produces.  Markets with persistent intraday
behaviour put more mass on few words, so the real exponent sits above the
shuffled one; for an exchangeable text the two estimates coincide up to
sampling noise.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from zipfstrategy import (
    Alphabet,
    SymbolSequence,
    WordCounting,
    count_words,
    daylight_increments,
    emit_rank_plot_data,
    fit_zipf,
    load_csv,
    shuffle,
    symbolize,
)
from zipfstrategy.synthetic import binary_markov_text

DATA_CSV = None  # set to a date,open,close CSV to analyze real sessions
W, M, SEED = 500, 4, 11
OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

if DATA_CSV:
    increments = daylight_increments(load_csv(DATA_CSV))
    text = symbolize(increments, Alphabet.binary())
else:
    # a persistent chain stands in for a market with intraday memory
    text = binary_markov_text(2600, stay_prob=0.65, seed=SEED)

window = SymbolSequence(text.text[-W:], text.alphabet)
counting = WordCounting(M, "block")
real_table = count_words(window, counting)
shuffled_table = count_words(shuffle(window, SEED), counting)
real_fit = fit_zipf(real_table)
shuffled_fit = fit_zipf(shuffled_table)

print(f"window of {W} letters, {M}-letter words, {real_table.total_words} words counted")
print(f"real     : zeta={real_fit.zeta:.3f}  r2={real_fit.r_squared:.3f}")
print(f"shuffled : zeta={shuffled_fit.zeta:.3f}  r2={shuffled_fit.r_squared:.3f}")

emit_rank_plot_data(
    (real_table, real_fit), (shuffled_table, shuffled_fit), OUT, w=W, m=M, seed=SEED
)

fig, ax = plt.subplots(figsize=(6, 5))
for table, fit, marker, label in (
    (real_table, real_fit, "*", "real"),
    (shuffled_table, shuffled_fit, "o", "shuffled"),
):
    ranks = table.ranks()
    ax.loglog(ranks, table.frequencies(), marker, ms=7, ls="none",
              label=f"{label} (zeta={fit.zeta:.2f})")
    ax.loglog(ranks, np.exp(fit.intercept + fit.raw_slope * np.log(ranks)), "--", lw=1)
ax.set_xlabel("rank")
ax.set_ylabel("normalized frequency")
ax.set_title(f"rank-frequency of {M}-words in the last {W} sessions")
ax.legend()
fig.tight_layout()
fig.savefig(OUT / f"rank_frequency_w{W}_m{M}.png", dpi=120)
print(f"wrote {OUT / f'rank_frequency_w{W}_m{M}.png'} and rank_w{W}_m{M}.tsv/.json")
