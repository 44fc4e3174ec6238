"""
Walk-forward prediction
=======================

Each trading day, take the last w letters, rank their m-words, fit the
local exponent, and complete the word that ends on the upcoming session:
the candidate completions' ranks turn into probabilities through
p ~ R**-zeta.  The window then slides one session forward and the whole
fit is redone, so every prediction uses only information available before
its target session.

On a persistent text the hit rate sits visibly above one half; rerun with
stay_prob=0.5 (an exchangeable coin-flip text) to watch it fall back to
chance.
"""

from collections import Counter
from pathlib import Path

from zipfstrategy import (
    Alphabet,
    StrategyConfig,
    accuracy,
    daylight_increments,
    emit_predictions,
    load_csv,
    predict_at,
    run_walkforward,
    symbolize,
)
from zipfstrategy.synthetic import binary_markov_text

DATA_CSV = None
M, W = 4, 400
OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

if DATA_CSV:
    text = symbolize(daylight_increments(load_csv(DATA_CSV)), Alphabet.binary())
else:
    text = binary_markov_text(2000, stay_prob=0.65, seed=31)

config = StrategyConfig(m=M, w=W)
predictions = run_walkforward(text, config)
realized = ["up" if text.text[p.session_index] == "u" else "down" for p in predictions]

hit_rate = accuracy(predictions, realized)
calls = Counter(p.direction for p in predictions)
print(f"{len(predictions)} walk-forward predictions with m={M}, w={W}")
print(f"calls: {dict(calls)}")
print(f"directional accuracy: {hit_rate:.1%}")

# confidence is informative too: how often does a decisive call pay off?
decisive = [(p, r) for p, r in zip(predictions, realized)
            if p.direction != "abstain" and abs(p.p_up - 0.5) > 0.05]
if decisive:
    strong = sum(p.direction == r for p, r in decisive) / len(decisive)
    print(f"accuracy of the {len(decisive)} calls with |p_up - 0.5| > 0.05: {strong:.1%}")

# the next, not yet observed session is one index past the end of the text
forecast = predict_at(text, len(text), config)
print(f"next-session forecast: {forecast.direction} "
      f"(p_up={forecast.p_up:.3f}, zeta={forecast.zeta:.3f})")

emit_predictions(predictions, OUT / "walkforward_predictions.jsonl", m=M, w=W)
print(f"wrote {OUT / 'walkforward_predictions.jsonl'}")
