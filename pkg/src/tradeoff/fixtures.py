"""Accessors for the bundled benchmark fixtures.

The package ships the published measurement inputs (28 model x dataset
records), the expected cost and utility/rank cells they should reproduce,
and the dated pricing snapshot those numbers were computed under.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Optional

from .costing import PricingSnapshot, parse_pricing
from .records import MeasurementRecord, parse_records


def _read(name: str) -> str:
    return (resources.files("tradeoff") / "fixtures" / name).read_text(encoding="utf-8")


def benchmark_records() -> list[MeasurementRecord]:
    """The 28 bundled model x dataset measurement records."""
    return parse_records(_read("benchmark_records.jsonl"))


def pricing_snapshot() -> PricingSnapshot:
    """The dated pricing snapshot the bundled records were costed under."""
    return parse_pricing(_read("paper_snapshot.json"))


def pricing_snapshot_text() -> str:
    return _read("paper_snapshot.json")


@dataclass(frozen=True)
class ExpectedCost:
    dataset_id: str
    model_id: str
    paradigm: str
    usd_per_million_requests: float


@dataclass(frozen=True)
class ExpectedUtility:
    dataset_id: str
    model_id: str
    paradigm: str
    tau_ms: float
    display_value: float
    rank: Optional[int]


def expected_costs() -> list[ExpectedCost]:
    out = []
    for line in _read("expected_costs.jsonl").splitlines():
        if not line.strip():
            continue
        obj = json.loads(line)
        out.append(
            ExpectedCost(
                dataset_id=obj["dataset_id"],
                model_id=obj["model_id"],
                paradigm=obj["paradigm"],
                usd_per_million_requests=float(obj["usd_per_million_requests"]),
            )
        )
    return out


def expected_utilities() -> list[ExpectedUtility]:
    out = []
    for line in _read("expected_utilities.jsonl").splitlines():
        if not line.strip():
            continue
        obj = json.loads(line)
        rank = obj.get("rank")
        out.append(
            ExpectedUtility(
                dataset_id=obj["dataset_id"],
                model_id=obj["model_id"],
                paradigm=obj["paradigm"],
                tau_ms=float(obj["tau_ms"]),
                display_value=float(obj["display_value"]),
                rank=None if rank is None else int(rank),
            )
        )
    return out
