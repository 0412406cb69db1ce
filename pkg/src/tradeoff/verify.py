"""Regression checks of recomputed numbers against the bundled expected cells.

Tolerances: cost cells within +-0.02 USD, utility display cells within
+-0.01, ranks exact. Comparisons run on integer hundredths to keep the
tolerance itself free of float noise (0.02 means "2 cents", not
0.020000000000000004).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from . import fixtures
from .analysis import candidates_for_dataset, dataset_ids, summarize_records
from .costing import PricingSnapshot
from .decision import DEFAULT_TAUS_MS, tau_sweep
from .records import MeasurementRecord

COST_TOLERANCE_CENTS = 2
UTILITY_TOLERANCE_CENTS = 1


def _cents(value: float) -> int:
    return round(value * 100)


@dataclass(frozen=True)
class CellCheck:
    """Outcome of one expected-vs-recomputed comparison."""

    kind: str  # "cost" | "utility" | "rank"
    dataset_id: str
    model_id: str
    paradigm: str
    tau_ms: Optional[float]
    expected: float
    actual: float
    ok: bool

    def describe(self) -> str:
        where = f"{self.dataset_id}/{self.model_id}[{self.paradigm}]"
        if self.tau_ms is not None:
            where += f" tau={self.tau_ms:g}"
        status = "ok" if self.ok else "FAIL"
        return f"{status} {self.kind} {where}: expected {self.expected:g}, got {self.actual:g}"


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[CellCheck, ...]
    warnings: tuple[str, ...]

    @property
    def failures(self) -> list[CellCheck]:
        return [c for c in self.checks if not c.ok]

    @property
    def ok(self) -> bool:
        return not self.failures

    def counts(self) -> dict[str, tuple[int, int]]:
        """kind -> (passed, total)."""
        out: dict[str, tuple[int, int]] = {}
        for check in self.checks:
            passed, total = out.get(check.kind, (0, 0))
            out[check.kind] = (passed + (1 if check.ok else 0), total + 1)
        return out


def verify_against_expected(
    records: Sequence[MeasurementRecord], snapshot: PricingSnapshot
) -> VerificationReport:
    """Recompute every cost/utility/rank cell and compare to the bundle."""
    summaries = summarize_records(list(records))
    checks: list[CellCheck] = []
    warnings: list[str] = []

    costs_by_key = {}
    candidates_by_dataset = {}
    for ds in dataset_ids(summaries):
        candidates, estimates = candidates_for_dataset(summaries, ds, snapshot)
        candidates_by_dataset[ds] = candidates
        for est in estimates:
            costs_by_key[(ds, est.model_id, est.cost_basis.value)] = est

    actual_cost = {}
    for ds, candidates in candidates_by_dataset.items():
        for c in candidates:
            actual_cost[(ds, c.model_id, c.paradigm.value)] = c.cost_usd_per_million

    for exp in fixtures.expected_costs():
        key = (exp.dataset_id, exp.model_id, exp.paradigm)
        if key not in actual_cost:
            warnings.append(f"no recomputed cost for {key}; cell skipped")
            continue
        actual = actual_cost[key]
        ok = abs(_cents(actual) - _cents(exp.usd_per_million_requests)) <= COST_TOLERANCE_CENTS
        checks.append(
            CellCheck(
                kind="cost",
                dataset_id=exp.dataset_id,
                model_id=exp.model_id,
                paradigm=exp.paradigm,
                tau_ms=None,
                expected=exp.usd_per_million_requests,
                actual=round(actual, 4),
                ok=ok,
            )
        )

    expected_utils = fixtures.expected_utilities()
    taus = sorted({e.tau_ms for e in expected_utils}) or list(DEFAULT_TAUS_MS)
    scores = {}
    for ds, candidates in candidates_by_dataset.items():
        if not candidates:
            continue
        for tau, ranked in tau_sweep(candidates, taus).items():
            for score in ranked:
                key = (ds, score.candidate.model_id, score.candidate.paradigm.value, tau)
                scores[key] = score

    missing_ranks = 0
    for exp in expected_utils:
        key = (exp.dataset_id, exp.model_id, exp.paradigm, exp.tau_ms)
        if key not in scores:
            warnings.append(f"no recomputed utility for {key}; cell skipped")
            continue
        score = scores[key]
        ok = abs(_cents(score.display_value) - _cents(exp.display_value)) <= UTILITY_TOLERANCE_CENTS
        checks.append(
            CellCheck(
                kind="utility",
                dataset_id=exp.dataset_id,
                model_id=exp.model_id,
                paradigm=exp.paradigm,
                tau_ms=exp.tau_ms,
                expected=exp.display_value,
                actual=score.display_value,
                ok=ok,
            )
        )
        if exp.rank is None:
            missing_ranks += 1
            continue
        checks.append(
            CellCheck(
                kind="rank",
                dataset_id=exp.dataset_id,
                model_id=exp.model_id,
                paradigm=exp.paradigm,
                tau_ms=exp.tau_ms,
                expected=float(exp.rank),
                actual=float(score.rank),
                ok=score.rank == exp.rank,
            )
        )

    if missing_ranks:
        warnings.append(
            f"{missing_ranks} expected cell(s) carry no rank; rank checks skipped for them"
        )
    return VerificationReport(checks=tuple(checks), warnings=tuple(warnings))


def verify_bundled() -> VerificationReport:
    """Run the full check against the package's own fixtures."""
    return verify_against_expected(fixtures.benchmark_records(), fixtures.pricing_snapshot())
