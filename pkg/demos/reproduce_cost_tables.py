# Recompute the per-dataset cost tables from the bundled raw records and
# compare against the bundled expected values, cell by cell.
#
# $ python3 demos/reproduce_cost_tables.py
#
# Same computation `tradeoff verify-paper` runs, unrolled here so you can see
# where every number comes from.

from tradeoff import fixtures
from tradeoff.analysis import candidates_for_dataset, dataset_ids, summarize_records

records = fixtures.benchmark_records()
snapshot = fixtures.pricing_snapshot()
summaries = summarize_records(records)
expected = {
    (e.dataset_id, e.model_id, e.paradigm): e.usd_per_million_requests
    for e in fixtures.expected_costs()
}

worst = 0.0
for ds in dataset_ids(summaries):
    print(f"\n{ds}  (USD per 1M requests, snapshot {snapshot.snapshot_date})")
    candidates, estimates = candidates_for_dataset(summaries, ds, snapshot)
    for cand, est in zip(candidates, estimates):
        want = expected[(ds, cand.model_id, cand.paradigm.value)]
        gap = abs(cand.cost_usd_per_million - want)
        worst = max(worst, gap)
        basis = est.cost_basis.value
        print(
            f"  {cand.label:28s} {cand.cost_usd_per_million:10.2f}"
            f"   expected {want:8.2f}   gap {gap:5.3f}   [{basis}]"
        )

print(f"\nworst absolute gap across all 28 cells: {worst:.4f} USD")
assert worst <= 0.02
