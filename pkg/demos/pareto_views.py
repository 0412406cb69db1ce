# Frontier membership across all four objective spaces, all datasets.
#
# $ python3 demos/pareto_views.py
#
# A model can be dominated in one projection and optimal in another. The 3-D
# space keeps everything here (each model is best at something), while the
# 2-D views actually prune. Every dominated entry names its witness.

from tradeoff import fixtures
from tradeoff.analysis import candidates_for_dataset, dataset_ids, summarize_records
from tradeoff.decision import ObjectiveSpace, pareto_frontier

summaries = summarize_records(fixtures.benchmark_records())
snapshot = fixtures.pricing_snapshot()

for ds in dataset_ids(summaries):
    candidates, _ = candidates_for_dataset(summaries, ds, snapshot)
    print(f"\n=== {ds} ===")
    for space in ObjectiveSpace:
        result = pareto_frontier(candidates, space)
        print(f"  {space.value}: {len(result.frontier)}/{len(candidates)} on frontier")
        for cand, witness in result.dominated.items():
            print(f"    dominated: {cand.label:28s} by {witness.label}")
