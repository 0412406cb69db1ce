"""Golden-cell verification: bundled pass, perturbation detection, rank skipping."""

import dataclasses
import json

from tradeoff import fixtures
from tradeoff.records import LatencyPercentiles
from tradeoff.verify import verify_against_expected, verify_bundled


def test_bundled_fixtures_fully_reproduce():
    report = verify_bundled()
    assert report.ok, [c.describe() for c in report.failures]
    counts = report.counts()
    assert counts["cost"] == (28, 28)
    assert counts["utility"] == (84, 84)
    assert counts["rank"] == (84, 84)


def test_perturbed_latency_fails_named_cells():
    records = fixtures.benchmark_records()
    out = []
    for r in records:
        if r.model_id == "bert" and r.dataset_id == "imdb":
            lat = r.latency
            bumped = LatencyPercentiles(
                lat.p50_ms * 1.5, lat.p95_ms * 1.5, lat.p99_ms * 1.5
            )
            r = dataclasses.replace(r, latency=bumped)
        out.append(r)
    report = verify_against_expected(out, fixtures.pricing_snapshot())
    assert not report.ok
    failing = {(c.kind, c.dataset_id, c.model_id) for c in report.failures}
    # encoder cost scales with latency, so both its cost and utility cells move
    assert ("cost", "imdb", "bert") in failing
    assert ("utility", "imdb", "bert") in failing
    # unrelated datasets untouched
    assert all(c.dataset_id == "imdb" for c in report.failures)


def test_missing_ranks_are_skipped_with_warning(tmp_path, monkeypatch):
    # strip the rank field from the expected cells and re-point the loader
    lines = []
    for exp in fixtures.expected_utilities():
        lines.append(
            json.dumps(
                {
                    "dataset_id": exp.dataset_id,
                    "model_id": exp.model_id,
                    "paradigm": exp.paradigm,
                    "tau_ms": exp.tau_ms,
                    "display_value": exp.display_value,
                }
            )
        )
    rankless = "\n".join(lines) + "\n"

    original = fixtures._read

    def patched(name):
        if name == "expected_utilities.jsonl":
            return rankless
        return original(name)

    monkeypatch.setattr(fixtures, "_read", patched)
    report = verify_bundled()
    assert report.ok
    assert report.counts().get("rank", (0, 0)) == (0, 0)
    assert report.counts()["utility"] == (84, 84)
    assert any("rank" in w for w in report.warnings)
