"""Per-request cost models scaled to USD per 1M requests.

Two bases, chosen by serving paradigm:

* serverless_compute: a self-hosted service billed per resource-second.
  cost = (p50_ms / 1000) * (vcpu * vcpu_price + memory_gib * gib_price),
  with prices in USD per 1M resource-seconds, so the per-1M-requests
  scaling cancels.
* token_usage: an API-served model billed per token.
  cost = avg_input_tokens * input_price + avg_output_tokens * output_price,
  with prices in USD per 1M tokens; per-request averages times those prices
  are already USD per 1M requests.

All arithmetic stays at full precision; rounding belongs to display code.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Any, Mapping, Optional, Union

from .records import MeasurementRecord, Paradigm, ResourceAllocation, TokenUsage


class PricingError(ValueError):
    """Bad pricing data or a price lookup that cannot be satisfied."""


class CostBasis(str, Enum):
    SERVERLESS_COMPUTE = "serverless_compute"
    TOKEN_USAGE = "token_usage"


@dataclass(frozen=True)
class TokenPrices:
    """USD per 1M tokens for one API-served model."""

    input_usd_per_million_tokens: float
    output_usd_per_million_tokens: float

    def __post_init__(self):
        if self.input_usd_per_million_tokens < 0 or self.output_usd_per_million_tokens < 0:
            raise PricingError("token prices must be >= 0")


@dataclass(frozen=True)
class ServingPrices:
    """USD per 1M resource-seconds for self-hosted serving."""

    vcpu_usd_per_million_vcpu_seconds: float
    gib_usd_per_million_gib_seconds: float

    def __post_init__(self):
        if self.vcpu_usd_per_million_vcpu_seconds < 0 or self.gib_usd_per_million_gib_seconds < 0:
            raise PricingError("serving prices must be >= 0")


@dataclass(frozen=True)
class PricingSnapshot:
    """Dated set of prices; every cost estimate names the snapshot it used."""

    snapshot_date: str
    token_prices: Mapping[str, TokenPrices]
    serving_prices: ServingPrices

    def __post_init__(self):
        if not self.snapshot_date:
            raise PricingError("snapshot_date is required")
        object.__setattr__(self, "token_prices", dict(self.token_prices))

    def token_prices_for(self, model_id: str) -> TokenPrices:
        try:
            return self.token_prices[model_id]
        except KeyError:
            raise PricingError(
                f"pricing snapshot ({self.snapshot_date}) has no token prices "
                f"for model '{model_id}'"
            ) from None


@dataclass(frozen=True)
class CostEstimate:
    """USD per 1M requests for one model on one dataset."""

    model_id: str
    dataset_id: str
    usd_per_million_requests: float
    cost_basis: CostBasis
    inputs_used: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.usd_per_million_requests < 0:
            raise PricingError("usd_per_million_requests must be >= 0")


def encoder_cost_per_million(
    p50_latency_ms: float,
    resources: ResourceAllocation,
    prices: ServingPrices,
    model_id: str = "",
    dataset_id: str = "",
) -> CostEstimate:
    """Serverless-compute cost of a self-hosted model at its median latency."""
    if p50_latency_ms < 0:
        raise PricingError(f"p50_latency_ms must be >= 0, got {p50_latency_ms}")
    per_second = (
        resources.vcpu * prices.vcpu_usd_per_million_vcpu_seconds
        + resources.memory_gib * prices.gib_usd_per_million_gib_seconds
    )
    usd = (p50_latency_ms / 1000.0) * per_second
    return CostEstimate(
        model_id=model_id,
        dataset_id=dataset_id,
        usd_per_million_requests=usd,
        cost_basis=CostBasis.SERVERLESS_COMPUTE,
        inputs_used={
            "p50_latency_ms": p50_latency_ms,
            "vcpu": resources.vcpu,
            "memory_gib": resources.memory_gib,
            "vcpu_usd_per_million_vcpu_seconds": prices.vcpu_usd_per_million_vcpu_seconds,
            "gib_usd_per_million_gib_seconds": prices.gib_usd_per_million_gib_seconds,
        },
    )


def llm_cost_per_million(
    tokens: TokenUsage,
    prices: TokenPrices,
    model_id: str = "",
    dataset_id: str = "",
) -> CostEstimate:
    """Token-usage cost of an API-served model."""
    usd = (
        tokens.avg_input_tokens_per_request * prices.input_usd_per_million_tokens
        + tokens.avg_output_tokens_per_request * prices.output_usd_per_million_tokens
    )
    return CostEstimate(
        model_id=model_id,
        dataset_id=dataset_id,
        usd_per_million_requests=usd,
        cost_basis=CostBasis.TOKEN_USAGE,
        inputs_used={
            "avg_input_tokens_per_request": tokens.avg_input_tokens_per_request,
            "avg_output_tokens_per_request": tokens.avg_output_tokens_per_request,
            "input_usd_per_million_tokens": prices.input_usd_per_million_tokens,
            "output_usd_per_million_tokens": prices.output_usd_per_million_tokens,
        },
    )


def estimate_cost(
    record: MeasurementRecord, p50_latency_ms: float, snapshot: PricingSnapshot
) -> CostEstimate:
    """Dispatch on paradigm: fine-tuned bills compute, prompted bills tokens."""
    if record.paradigm is Paradigm.FINE_TUNED:
        assert record.resources is not None
        return encoder_cost_per_million(
            p50_latency_ms,
            record.resources,
            snapshot.serving_prices,
            model_id=record.model_id,
            dataset_id=record.dataset_id,
        )
    assert record.tokens is not None
    return llm_cost_per_million(
        record.tokens,
        snapshot.token_prices_for(record.model_id),
        model_id=record.model_id,
        dataset_id=record.dataset_id,
    )


# ---------------------------------------------------------------------------
# Overrides and JSON I/O
# ---------------------------------------------------------------------------


def apply_pricing_overrides(base: PricingSnapshot, overrides: Mapping[str, Any]) -> PricingSnapshot:
    """Field-wise replacement of prices; anything not mentioned is preserved.

    overrides mirrors the snapshot JSON shape, all parts optional:
      {"snapshot_date": ..., "serving_prices": {partial}, "token_prices": {model: {partial}}}
    Token-price overrides must name models already present in the base.
    """
    if not overrides:
        return base

    unknown = set(overrides) - {"snapshot_date", "token_prices", "serving_prices"}
    if unknown:
        raise PricingError(f"unknown pricing override field(s): {sorted(unknown)}")

    snapshot_date = overrides.get("snapshot_date", base.snapshot_date)
    if not isinstance(snapshot_date, str):
        raise PricingError("override 'snapshot_date' must be a string")

    serving = base.serving_prices
    if "serving_prices" in overrides:
        sp = overrides["serving_prices"]
        if not isinstance(sp, Mapping):
            raise PricingError("override 'serving_prices' must be an object")
        bad = set(sp) - {
            "vcpu_usd_per_million_vcpu_seconds",
            "gib_usd_per_million_gib_seconds",
        }
        if bad:
            raise PricingError(f"unknown serving price field(s): {sorted(bad)}")
        serving = ServingPrices(
            _price(sp, "vcpu_usd_per_million_vcpu_seconds", serving.vcpu_usd_per_million_vcpu_seconds),
            _price(sp, "gib_usd_per_million_gib_seconds", serving.gib_usd_per_million_gib_seconds),
        )

    token_prices = dict(base.token_prices)
    if "token_prices" in overrides:
        tp = overrides["token_prices"]
        if not isinstance(tp, Mapping):
            raise PricingError("override 'token_prices' must be an object")
        for model_id, entry in tp.items():
            if model_id not in token_prices:
                raise PricingError(
                    f"pricing override references unknown model '{model_id}'"
                )
            if not isinstance(entry, Mapping):
                raise PricingError(f"override for model '{model_id}' must be an object")
            bad = set(entry) - {
                "input_usd_per_million_tokens",
                "output_usd_per_million_tokens",
            }
            if bad:
                raise PricingError(
                    f"unknown token price field(s) for '{model_id}': {sorted(bad)}"
                )
            current = token_prices[model_id]
            token_prices[model_id] = TokenPrices(
                _price(entry, "input_usd_per_million_tokens", current.input_usd_per_million_tokens),
                _price(entry, "output_usd_per_million_tokens", current.output_usd_per_million_tokens),
            )

    return PricingSnapshot(snapshot_date, token_prices, serving)


def _price(obj: Mapping, key: str, default: float) -> float:
    if key not in obj:
        return default
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise PricingError(f"price '{key}' must be a number")
    if value < 0:
        raise PricingError(f"price '{key}' must be >= 0, got {value}")
    return float(value)


def parse_pricing(text: Union[str, bytes]) -> PricingSnapshot:
    """Parse a pricing snapshot JSON document."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PricingError(f"pricing file is not valid JSON: {exc.msg}") from None
    if not isinstance(obj, dict):
        raise PricingError("pricing file must hold a JSON object")
    unknown = set(obj) - {"snapshot_date", "token_prices", "serving_prices"}
    if unknown:
        raise PricingError(f"pricing file has unknown field(s): {sorted(unknown)}")
    for key in ("snapshot_date", "token_prices", "serving_prices"):
        if key not in obj:
            raise PricingError(f"pricing file is missing field '{key}'")
    if not isinstance(obj["snapshot_date"], str) or not obj["snapshot_date"]:
        raise PricingError("field 'snapshot_date' must be a non-empty string")
    if not isinstance(obj["token_prices"], dict):
        raise PricingError("field 'token_prices' must be an object")
    if not isinstance(obj["serving_prices"], dict):
        raise PricingError("field 'serving_prices' must be an object")

    token_prices = {}
    for model_id, entry in obj["token_prices"].items():
        if not isinstance(entry, dict):
            raise PricingError(f"token prices for '{model_id}' must be an object")
        missing = {"input_usd_per_million_tokens", "output_usd_per_million_tokens"} - set(entry)
        if missing:
            raise PricingError(
                f"token prices for '{model_id}' missing field(s) {sorted(missing)}"
            )
        token_prices[model_id] = TokenPrices(
            _price(entry, "input_usd_per_million_tokens", 0.0),
            _price(entry, "output_usd_per_million_tokens", 0.0),
        )

    sp = obj["serving_prices"]
    missing = {"vcpu_usd_per_million_vcpu_seconds", "gib_usd_per_million_gib_seconds"} - set(sp)
    if missing:
        raise PricingError(f"serving_prices missing field(s) {sorted(missing)}")
    serving = ServingPrices(
        _price(sp, "vcpu_usd_per_million_vcpu_seconds", 0.0),
        _price(sp, "gib_usd_per_million_gib_seconds", 0.0),
    )
    return PricingSnapshot(obj["snapshot_date"], token_prices, serving)


def load_pricing(path: Union[str, Path]) -> PricingSnapshot:
    return parse_pricing(Path(path).read_text(encoding="utf-8"))


def pricing_to_dict(snapshot: PricingSnapshot) -> dict:
    return {
        "snapshot_date": snapshot.snapshot_date,
        "token_prices": {
            model_id: {
                "input_usd_per_million_tokens": tp.input_usd_per_million_tokens,
                "output_usd_per_million_tokens": tp.output_usd_per_million_tokens,
            }
            for model_id, tp in sorted(snapshot.token_prices.items())
        },
        "serving_prices": {
            "vcpu_usd_per_million_vcpu_seconds": snapshot.serving_prices.vcpu_usd_per_million_vcpu_seconds,
            "gib_usd_per_million_gib_seconds": snapshot.serving_prices.gib_usd_per_million_gib_seconds,
        },
    }
