"""Scenario evaluation service: tau and pricing what-ifs over loaded records.

The computation lives in plain functions over an immutable ServiceState, so
the HTTP layer is a thin adapter and tests can replay any request directly
against the library. Responses are deterministic: same state, same request,
same bytes.
"""

from __future__ import annotations

import json
import socket
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from importlib import resources
from typing import Any, Mapping, Optional, Sequence

from .analysis import ModelSummary, candidates_for_dataset, dataset_ids, summarize_records
from .costing import PricingError, PricingSnapshot, apply_pricing_overrides
from .decision import ObjectiveSpace, pareto_frontier, tau_sweep
from .records import MeasurementRecord, group_key, validate_consistency

ALL_SPACES = [s.value for s in ObjectiveSpace]


class ScenarioError(ValueError):
    """Invalid scenario request; names the offending field."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field
        self.message = message


@dataclass(frozen=True)
class ServiceState:
    """Immutable record set and base pricing loaded at startup."""

    summaries: tuple[ModelSummary, ...]
    snapshot: PricingSnapshot
    warnings: tuple[str, ...]

    @classmethod
    def load(
        cls,
        records: Sequence[MeasurementRecord],
        snapshot: PricingSnapshot,
        check_consistency: bool = True,
    ) -> "ServiceState":
        # check_consistency=False for record sets known to be cross-run
        # aggregates, where per-run protocol checks do not apply.
        warnings = (
            [w.message for w in validate_consistency(list(records))]
            if check_consistency
            else []
        )
        seen: dict[tuple, set] = {}
        for record in records:
            runs = seen.setdefault(group_key(record), set())
            if record.run_id in runs:
                warnings.append(
                    f"duplicate record for {record.model_id} [{record.paradigm.value}] "
                    f"on {record.dataset_id} run={record.run_id}; entries merged"
                )
            runs.add(record.run_id)
        summaries = summarize_records(list(records))
        return cls(
            summaries=tuple(summaries), snapshot=snapshot, warnings=tuple(warnings)
        )

    def datasets(self) -> list[str]:
        return dataset_ids(self.summaries)


def get_models(state: ServiceState) -> dict:
    """Catalog of loaded model x dataset entries with their base metrics."""
    models = []
    for s in state.summaries:
        models.append(
            {
                "model_id": s.model_id,
                "dataset_id": s.dataset_id,
                "paradigm": s.paradigm.value,
                "label": s.label,
                "f1": s.f1.mean,
                "p50_latency_ms": s.latency.p50_ms,
                "p95_latency_ms": s.latency.p95_ms,
                "p99_latency_ms": s.latency.p99_ms,
                "n_runs": s.n_runs,
            }
        )
    return {
        "models": models,
        "datasets": state.datasets(),
        "snapshot_date": state.snapshot.snapshot_date,
        "warnings": list(state.warnings),
    }


def _parse_request(state: ServiceState, body: Any) -> tuple[str, float, Optional[dict], list[ObjectiveSpace]]:
    if not isinstance(body, Mapping):
        raise ScenarioError("$", "request body must be a JSON object")
    unknown = set(body) - {"dataset_id", "tau_ms", "pricing_overrides", "spaces"}
    if unknown:
        raise ScenarioError(sorted(unknown)[0], "unknown request field")

    dataset_id = body.get("dataset_id")
    if not isinstance(dataset_id, str) or not dataset_id:
        raise ScenarioError("dataset_id", "must be a non-empty string")
    if dataset_id not in state.datasets():
        raise ScenarioError(
            "dataset_id",
            f"unknown dataset {dataset_id!r}; loaded: {state.datasets()}",
        )

    tau_ms = body.get("tau_ms")
    if isinstance(tau_ms, bool) or not isinstance(tau_ms, (int, float)):
        raise ScenarioError("tau_ms", "must be a number")
    if not tau_ms > 0:
        raise ScenarioError("tau_ms", f"must be > 0, got {tau_ms}")

    overrides = body.get("pricing_overrides")
    if overrides is not None and not isinstance(overrides, Mapping):
        raise ScenarioError("pricing_overrides", "must be an object")

    spaces_raw = body.get("spaces", ALL_SPACES)
    if not isinstance(spaces_raw, list) or not spaces_raw:
        raise ScenarioError("spaces", "must be a non-empty list of space names")
    spaces = []
    for i, name in enumerate(spaces_raw):
        try:
            spaces.append(ObjectiveSpace(name))
        except ValueError:
            raise ScenarioError(
                f"spaces[{i}]", f"unknown objective space {name!r}; valid: {ALL_SPACES}"
            ) from None
    return dataset_id, float(tau_ms), dict(overrides) if overrides else None, spaces


def evaluate_scenario(state: ServiceState, body: Any) -> dict:
    """Recompute costs, utilities, and frontiers under the requested scenario."""
    dataset_id, tau_ms, overrides, spaces = _parse_request(state, body)

    snapshot = state.snapshot
    if overrides:
        try:
            snapshot = apply_pricing_overrides(snapshot, overrides)
        except PricingError as exc:
            raise ScenarioError("pricing_overrides", str(exc)) from None

    try:
        candidates, estimates = candidates_for_dataset(state.summaries, dataset_id, snapshot)
    except ValueError as exc:
        # e.g. overrides that zero out every price leave a model costless,
        # which the utility's division guard rejects
        raise ScenarioError("pricing_overrides", str(exc)) from None
    ranked = tau_sweep(candidates, [tau_ms])[tau_ms]

    costs = [
        {
            "model_id": est.model_id,
            "paradigm": cand.paradigm.value,
            "label": cand.label,
            "usd_per_million_requests": est.usd_per_million_requests,
            "cost_basis": est.cost_basis.value,
        }
        for cand, est in zip(candidates, estimates)
    ]
    utilities = [
        {
            "model_id": s.candidate.model_id,
            "paradigm": s.candidate.paradigm.value,
            "label": s.candidate.label,
            "f1": s.candidate.f1,
            "cost_usd_per_million": s.candidate.cost_usd_per_million,
            "p50_latency_ms": s.candidate.p50_latency_ms,
            "utility": s.utility,
            "display_value": s.display_value,
            "rank": s.rank,
        }
        for s in sorted(ranked, key=lambda s: s.rank)
    ]
    pareto = {}
    for space in spaces:
        result = pareto_frontier(candidates, space)
        pareto[space.value] = {
            "frontier": [c.label for c in candidates if c in set(result.frontier)],
            "dominated": [
                {"label": c.label, "dominated_by": result.dominated[c].label}
                for c in candidates
                if c in result.dominated
            ],
        }

    return {
        "dataset_id": dataset_id,
        "tau_ms": tau_ms,
        "snapshot_date": snapshot.snapshot_date,
        "pricing_overrides": overrides,
        "costs": costs,
        "utilities": utilities,
        "pareto": pareto,
        "warnings": list(state.warnings),
    }


# ---------------------------------------------------------------------------
# HTTP adapter
# ---------------------------------------------------------------------------

_CONTENT_TYPES = {
    ".html": "text/html; charset=utf-8",
    ".js": "text/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".svg": "image/svg+xml",
    ".json": "application/json",
    ".png": "image/png",
    ".ico": "image/x-icon",
}


def _json_bytes(obj: Any) -> bytes:
    return (json.dumps(obj, sort_keys=True) + "\n").encode("utf-8")


class _Handler(BaseHTTPRequestHandler):
    state: ServiceState = None  # injected by make_server
    quiet: bool = True

    def log_message(self, fmt, *args):
        if not self.quiet:
            super().log_message(fmt, *args)

    def _send(self, status: int, body: bytes, content_type: str = "application/json") -> None:
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _send_error_body(self, status: int, field: str, message: str) -> None:
        self._send(status, _json_bytes({"error": {"field": field, "message": message}}))

    def do_GET(self):
        path = self.path.split("?", 1)[0]
        if path == "/api/health":
            self._send(
                200,
                _json_bytes(
                    {
                        "status": "ok",
                        "datasets": self.state.datasets(),
                        "snapshot_date": self.state.snapshot.snapshot_date,
                    }
                ),
            )
        elif path == "/api/models":
            self._send(200, _json_bytes(get_models(self.state)))
        elif path.startswith("/api/"):
            self._send_error_body(404, "$", f"no such endpoint: {path}")
        else:
            self._serve_static(path)

    def do_POST(self):
        path = self.path.split("?", 1)[0]
        if path != "/api/scenario":
            self._send_error_body(404, "$", f"no such endpoint: {path}")
            return
        try:
            length = int(self.headers.get("Content-Length", "0"))
            raw = self.rfile.read(length)
            body = json.loads(raw) if raw else None
        except (ValueError, json.JSONDecodeError):
            self._send_error_body(400, "$", "request body is not valid JSON")
            return
        try:
            response = evaluate_scenario(self.state, body)
        except ScenarioError as exc:
            self._send_error_body(400, exc.field, exc.message)
            return
        self._send(200, _json_bytes(response))

    def _serve_static(self, path: str) -> None:
        if path in ("", "/"):
            path = "/index.html"
        name = path.lstrip("/")
        if "/" in name or name.startswith("."):
            self._send(404, b"not found\n", "text/plain; charset=utf-8")
            return
        try:
            asset = resources.files("tradeoff") / "static" / name
            data = asset.read_bytes()
        except (FileNotFoundError, OSError):
            self._send(404, b"not found\n", "text/plain; charset=utf-8")
            return
        suffix = "." + name.rsplit(".", 1)[-1] if "." in name else ""
        self._send(200, data, _CONTENT_TYPES.get(suffix, "application/octet-stream"))


def make_server(state: ServiceState, host: str = "127.0.0.1", port: int = 8000) -> ThreadingHTTPServer:
    """Build (but do not start) the HTTP server bound to host:port."""

    class Handler(_Handler):
        pass

    Handler.state = state
    server = ThreadingHTTPServer((host, port), Handler)
    server.allow_reuse_address = True
    return server


def serve_forever(state: ServiceState, host: str, port: int) -> None:
    server = make_server(state, host, port)
    actual_port = server.server_address[1]
    print(f"serving on http://{host}:{actual_port} (Ctrl-C to stop)")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
