# Sweep the latency tolerance and watch the ranking move.
#
# $ python3 demos/utility_regimes.py [dataset_id]
#
# At strict tolerances the exp(-p50/tau) factor crushes anything slow; as tau
# grows the score converges to plain quality-per-dollar. The encoders win both
# regimes on this benchmark, but the LLM order reshuffles in between, which is
# the interesting part.

import sys

from tradeoff import fixtures
from tradeoff.analysis import candidates_for_dataset, summarize_records
from tradeoff.decision import tau_sweep

dataset = sys.argv[1] if len(sys.argv) > 1 else "dbpedia"
taus = [50.0, 100.0, 250.0, 500.0, 1000.0, 2500.0, 10000.0]

summaries = summarize_records(fixtures.benchmark_records())
candidates, _ = candidates_for_dataset(summaries, dataset, fixtures.pricing_snapshot())
sweep = tau_sweep(candidates, taus)

labels = [c.label for c in candidates]
width = max(len(l) for l in labels) + 2

print(f"{dataset}: rank (display utility) per latency tolerance\n")
print(" " * width + "".join(f"{f'tau={t:g}':>16s}" for t in taus))
for cand in candidates:
    cells = []
    for tau in taus:
        score = next(s for s in sweep[tau] if s.candidate is cand)
        cells.append(f"{score.rank:>2d} ({score.display_value:8.2f})")
    print(f"{cand.label:<{width}s}" + "".join(f"{c:>16s}" for c in cells))

# flag the adjacent-tau rank flips
def order(tau):
    return [s.candidate.label for s in sorted(sweep[tau], key=lambda s: s.rank)]

print()
for lo, hi in zip(taus, taus[1:]):
    if order(lo) != order(hi):
        moved = sorted(l for a, b in zip(order(lo), order(hi)) if a != b for l in (a,))
        print(f"order changes between tau={lo:g} and tau={hi:g}: {', '.join(moved)}")
