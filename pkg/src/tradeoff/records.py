"""Measurement record data model and file ingestion.

A record is one model x dataset x run observation: quality metrics, a latency
distribution (raw trace or precomputed percentiles), and the token usage or
resource allocation needed for cost estimation. Records are immutable and
validated at construction, so invalid data never flows downstream.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field, fields
from enum import Enum
from pathlib import Path
from typing import Any, Iterable, Optional, Union


class RecordError(ValueError):
    """Base class for everything that can go wrong while ingesting records."""


class RecordSyntaxError(RecordError):
    """Malformed line (bad JSON, unreadable CSV row)."""


class RecordSchemaError(RecordError):
    """Missing, extra, or mistyped field."""


class InvariantViolation(RecordError):
    """Structurally valid record whose values break a domain invariant."""


class Paradigm(str, Enum):
    FINE_TUNED = "fine_tuned"
    ZERO_SHOT = "zero_shot"
    FEW_SHOT = "few_shot"

    @property
    def short(self) -> str:
        return {"fine_tuned": "FT", "zero_shot": "ZS", "few_shot": "FS"}[self.value]


# Default number of initial requests excluded from latency statistics.
DEFAULT_WARMUP_COUNT = 10


def _check_fraction(name: str, value: float) -> None:
    if not (0.0 <= value <= 1.0):
        raise InvariantViolation(f"field '{name}' must be in [0, 1], got {value}")


@dataclass(frozen=True)
class QualityMetrics:
    """Class-balanced quality metrics, each stored as a fraction in [0, 1]."""

    f1_macro: float
    precision_macro: float
    recall_macro: float
    accuracy: float

    def __post_init__(self):
        for f in fields(self):
            _check_fraction(f.name, getattr(self, f.name))


@dataclass(frozen=True)
class TokenUsage:
    """Average per-request token counts for API-served models."""

    avg_input_tokens_per_request: float
    avg_output_tokens_per_request: float

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) < 0:
                raise InvariantViolation(f"field '{f.name}' must be >= 0")


@dataclass(frozen=True)
class ResourceAllocation:
    """Compute resources allocated to a self-hosted inference service."""

    vcpu: float
    memory_gib: float

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) <= 0:
                raise InvariantViolation(f"field '{f.name}' must be > 0")


@dataclass(frozen=True)
class LatencyTrace:
    """Raw per-request latencies in ms, with a warm-up prefix to discard."""

    samples_ms: tuple[float, ...]
    warmup_count: int = DEFAULT_WARMUP_COUNT

    def __post_init__(self):
        object.__setattr__(self, "samples_ms", tuple(self.samples_ms))
        if self.warmup_count < 0:
            raise InvariantViolation("field 'warmup_count' must be >= 0")
        if self.warmup_count >= len(self.samples_ms):
            raise InvariantViolation(
                f"warmup_count {self.warmup_count} would empty a trace of "
                f"{len(self.samples_ms)} samples"
            )
        for v in self.samples_ms:
            if v < 0:
                raise InvariantViolation("field 'samples_ms' has a negative latency")


@dataclass(frozen=True)
class LatencyPercentiles:
    """Precomputed p50/p95/p99 of a latency distribution, in ms."""

    p50_ms: float
    p95_ms: float
    p99_ms: float

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) < 0:
                raise InvariantViolation(f"field '{f.name}' must be >= 0")
        if not (self.p50_ms <= self.p95_ms <= self.p99_ms):
            raise InvariantViolation(
                f"percentiles must be ordered p50 <= p95 <= p99, got "
                f"({self.p50_ms}, {self.p95_ms}, {self.p99_ms})"
            )


@dataclass(frozen=True)
class DecodingConfig:
    """Decoding parameters recorded for API runs. Metadata only."""

    temperature: Optional[float] = None
    top_p: Optional[float] = None


Latency = Union[LatencyTrace, LatencyPercentiles]


@dataclass(frozen=True)
class MeasurementRecord:
    """One benchmark observation of a model on a dataset.

    Fine-tuned records carry a resource allocation (self-hosted serving);
    zero-/few-shot records carry token usage (API serving). The latency field
    holds exactly one representation: a raw trace or precomputed percentiles.
    """

    model_id: str
    dataset_id: str
    paradigm: Paradigm
    run_id: Union[str, int]
    quality: QualityMetrics
    latency: Latency
    ttft: Optional[Latency] = None
    tokens: Optional[TokenUsage] = None
    resources: Optional[ResourceAllocation] = None
    decoding: Optional[DecodingConfig] = None
    provenance: Optional[str] = None

    def __post_init__(self):
        if not isinstance(self.latency, (LatencyTrace, LatencyPercentiles)):
            raise RecordSchemaError(
                f"{self._who()}: field 'latency' must be a trace or percentiles"
            )
        if self.paradigm is Paradigm.FINE_TUNED:
            if self.resources is None:
                raise RecordSchemaError(
                    f"{self._who()}: fine_tuned record is missing field 'resources'"
                )
            if self.tokens is not None:
                raise RecordSchemaError(
                    f"{self._who()}: fine_tuned record must not carry field 'tokens'"
                )
        else:
            if self.tokens is None:
                raise RecordSchemaError(
                    f"{self._who()}: {self.paradigm.value} record is missing field 'tokens'"
                )
            if self.resources is not None:
                raise RecordSchemaError(
                    f"{self._who()}: {self.paradigm.value} record must not carry "
                    f"field 'resources'"
                )

    def _who(self) -> str:
        return f"record {self.model_id}/{self.dataset_id}/run={self.run_id}"

    @property
    def label(self) -> str:
        """Human-facing name: plain model id for fine-tuned, id + (ZS|FS) for prompted."""
        if self.paradigm is Paradigm.FINE_TUNED:
            return self.model_id
        return f"{self.model_id} ({self.paradigm.short})"


@dataclass(frozen=True)
class Warning_:
    """A non-fatal data quality finding from consistency validation."""

    code: str
    message: str
    model_id: str = ""
    dataset_id: str = ""


# ---------------------------------------------------------------------------
# JSON Lines parsing
# ---------------------------------------------------------------------------

_TOP_REQUIRED = ("model_id", "dataset_id", "paradigm", "run_id", "quality", "latency")
_TOP_OPTIONAL = ("ttft", "tokens", "resources", "decoding", "provenance")


def _check_keys(obj: dict, required: tuple, optional: tuple, where: str) -> None:
    for key in required:
        if key not in obj:
            raise RecordSchemaError(f"{where}: missing field '{key}'")
    allowed = set(required) | set(optional)
    for key in obj:
        if key not in allowed:
            raise RecordSchemaError(f"{where}: unknown field '{key}'")


def _number(obj: dict, key: str, where: str) -> float:
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise RecordSchemaError(f"{where}: field '{key}' must be a number")
    return float(value)


def _latency_from_dict(obj: Any, where: str) -> Latency:
    if not isinstance(obj, dict):
        raise RecordSchemaError(f"{where}: expected an object")
    has_trace = "samples_ms" in obj
    has_pct = "p50_ms" in obj or "p95_ms" in obj or "p99_ms" in obj
    if has_trace and has_pct:
        raise RecordSchemaError(
            f"{where}: carries both a raw trace and precomputed percentiles"
        )
    if has_trace:
        _check_keys(obj, ("samples_ms",), ("warmup_count",), where)
        samples = obj["samples_ms"]
        if not isinstance(samples, list):
            raise RecordSchemaError(f"{where}: field 'samples_ms' must be a list")
        warmup = obj.get("warmup_count", DEFAULT_WARMUP_COUNT)
        if isinstance(warmup, bool) or not isinstance(warmup, int):
            raise RecordSchemaError(f"{where}: field 'warmup_count' must be an integer")
        return LatencyTrace(tuple(float(v) for v in samples), warmup)
    if has_pct:
        _check_keys(obj, ("p50_ms", "p95_ms", "p99_ms"), (), where)
        return LatencyPercentiles(
            _number(obj, "p50_ms", where),
            _number(obj, "p95_ms", where),
            _number(obj, "p99_ms", where),
        )
    raise RecordSchemaError(
        f"{where}: needs either 'samples_ms' or 'p50_ms'/'p95_ms'/'p99_ms'"
    )


def record_from_dict(obj: Any, where: str = "record") -> MeasurementRecord:
    """Build a validated MeasurementRecord from a decoded JSON object."""
    if not isinstance(obj, dict):
        raise RecordSchemaError(f"{where}: expected an object, got {type(obj).__name__}")
    _check_keys(obj, _TOP_REQUIRED, _TOP_OPTIONAL, where)

    try:
        paradigm = Paradigm(obj["paradigm"])
    except ValueError:
        raise RecordSchemaError(
            f"{where}: field 'paradigm' must be one of "
            f"{[p.value for p in Paradigm]}, got {obj['paradigm']!r}"
        ) from None

    run_id = obj["run_id"]
    if isinstance(run_id, bool) or not isinstance(run_id, (str, int)):
        raise RecordSchemaError(f"{where}: field 'run_id' must be a string or integer")

    quality_obj = obj["quality"]
    if not isinstance(quality_obj, dict):
        raise RecordSchemaError(f"{where}: field 'quality' must be an object")
    qwhere = f"{where}, field 'quality'"
    _check_keys(
        quality_obj,
        ("f1_macro", "precision_macro", "recall_macro", "accuracy"),
        (),
        qwhere,
    )
    quality = QualityMetrics(
        _number(quality_obj, "f1_macro", qwhere),
        _number(quality_obj, "precision_macro", qwhere),
        _number(quality_obj, "recall_macro", qwhere),
        _number(quality_obj, "accuracy", qwhere),
    )

    latency = _latency_from_dict(obj["latency"], f"{where}, field 'latency'")
    ttft = None
    if obj.get("ttft") is not None:
        ttft = _latency_from_dict(obj["ttft"], f"{where}, field 'ttft'")

    tokens = None
    if obj.get("tokens") is not None:
        twhere = f"{where}, field 'tokens'"
        tobj = obj["tokens"]
        if not isinstance(tobj, dict):
            raise RecordSchemaError(f"{twhere}: expected an object")
        _check_keys(
            tobj,
            ("avg_input_tokens_per_request", "avg_output_tokens_per_request"),
            (),
            twhere,
        )
        tokens = TokenUsage(
            _number(tobj, "avg_input_tokens_per_request", twhere),
            _number(tobj, "avg_output_tokens_per_request", twhere),
        )

    resources = None
    if obj.get("resources") is not None:
        rwhere = f"{where}, field 'resources'"
        robj = obj["resources"]
        if not isinstance(robj, dict):
            raise RecordSchemaError(f"{rwhere}: expected an object")
        _check_keys(robj, ("vcpu", "memory_gib"), (), rwhere)
        resources = ResourceAllocation(
            _number(robj, "vcpu", rwhere), _number(robj, "memory_gib", rwhere)
        )

    decoding = None
    if obj.get("decoding") is not None:
        dwhere = f"{where}, field 'decoding'"
        dobj = obj["decoding"]
        if not isinstance(dobj, dict):
            raise RecordSchemaError(f"{dwhere}: expected an object")
        _check_keys(dobj, (), ("temperature", "top_p"), dwhere)
        decoding = DecodingConfig(
            None if dobj.get("temperature") is None else _number(dobj, "temperature", dwhere),
            None if dobj.get("top_p") is None else _number(dobj, "top_p", dwhere),
        )

    provenance = obj.get("provenance")
    if provenance is not None and not isinstance(provenance, str):
        raise RecordSchemaError(f"{where}: field 'provenance' must be a string")

    return MeasurementRecord(
        model_id=str(obj["model_id"]),
        dataset_id=str(obj["dataset_id"]),
        paradigm=paradigm,
        run_id=run_id,
        quality=quality,
        latency=latency,
        ttft=ttft,
        tokens=tokens,
        resources=resources,
        decoding=decoding,
        provenance=provenance,
    )


def _latency_to_dict(lat: Latency) -> dict:
    if isinstance(lat, LatencyTrace):
        return {"samples_ms": list(lat.samples_ms), "warmup_count": lat.warmup_count}
    return {"p50_ms": lat.p50_ms, "p95_ms": lat.p95_ms, "p99_ms": lat.p99_ms}


def record_to_dict(record: MeasurementRecord) -> dict:
    """Inverse of record_from_dict; omits absent optional fields."""
    out: dict[str, Any] = {
        "model_id": record.model_id,
        "dataset_id": record.dataset_id,
        "paradigm": record.paradigm.value,
        "run_id": record.run_id,
        "quality": {
            "f1_macro": record.quality.f1_macro,
            "precision_macro": record.quality.precision_macro,
            "recall_macro": record.quality.recall_macro,
            "accuracy": record.quality.accuracy,
        },
        "latency": _latency_to_dict(record.latency),
    }
    if record.ttft is not None:
        out["ttft"] = _latency_to_dict(record.ttft)
    if record.tokens is not None:
        out["tokens"] = {
            "avg_input_tokens_per_request": record.tokens.avg_input_tokens_per_request,
            "avg_output_tokens_per_request": record.tokens.avg_output_tokens_per_request,
        }
    if record.resources is not None:
        out["resources"] = {
            "vcpu": record.resources.vcpu,
            "memory_gib": record.resources.memory_gib,
        }
    if record.decoding is not None:
        dec = {}
        if record.decoding.temperature is not None:
            dec["temperature"] = record.decoding.temperature
        if record.decoding.top_p is not None:
            dec["top_p"] = record.decoding.top_p
        out["decoding"] = dec
    if record.provenance is not None:
        out["provenance"] = record.provenance
    return out


def parse_records(source: Union[str, bytes, io.IOBase, Path]) -> list[MeasurementRecord]:
    """Parse JSON Lines records: one JSON object per line, blank lines skipped.

    Accepts a text/bytes blob, an open file, or a Path. Raises RecordSyntaxError,
    RecordSchemaError, or InvariantViolation with the offending line number.
    """
    if isinstance(source, Path):
        text = source.read_text(encoding="utf-8")
    elif isinstance(source, bytes):
        text = source.decode("utf-8")
    elif isinstance(source, str):
        text = source
    else:
        data = source.read()
        text = data.decode("utf-8") if isinstance(data, bytes) else data

    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise RecordSyntaxError(f"line {lineno}: invalid JSON: {exc.msg}") from None
        try:
            out.append(record_from_dict(obj, where=f"line {lineno}"))
        except RecordError:
            raise
        except InvariantViolation:
            raise
    return out


def records_to_jsonl(records: Iterable[MeasurementRecord]) -> str:
    """Serialize records to JSON Lines, one object per line."""
    return "".join(json.dumps(record_to_dict(r), sort_keys=False) + "\n" for r in records)


# ---------------------------------------------------------------------------
# CSV import
# ---------------------------------------------------------------------------

# Flat column layout mapping 1:1 onto the record fields. Empty cells mean the
# field is absent. A raw trace is written as ';'-joined samples.
CSV_COLUMNS = [
    "model_id",
    "dataset_id",
    "paradigm",
    "run_id",
    "f1_macro",
    "precision_macro",
    "recall_macro",
    "accuracy",
    "latency_p50_ms",
    "latency_p95_ms",
    "latency_p99_ms",
    "latency_samples_ms",
    "latency_warmup_count",
    "ttft_p50_ms",
    "ttft_p95_ms",
    "ttft_p99_ms",
    "avg_input_tokens_per_request",
    "avg_output_tokens_per_request",
    "vcpu",
    "memory_gib",
    "temperature",
    "top_p",
    "provenance",
]


def _cell(row: dict, key: str) -> Optional[str]:
    value = (row.get(key) or "").strip()
    return value or None


def _cell_float(row: dict, key: str, where: str) -> Optional[float]:
    value = _cell(row, key)
    if value is None:
        return None
    try:
        return float(value)
    except ValueError:
        raise RecordSyntaxError(f"{where}: column '{key}' is not a number: {value!r}") from None


def parse_records_csv(source: Union[str, bytes, io.IOBase, Path]) -> list[MeasurementRecord]:
    """Parse the flat CSV layout (see CSV_COLUMNS) into the same records."""
    if isinstance(source, Path):
        text = source.read_text(encoding="utf-8")
    elif isinstance(source, bytes):
        text = source.decode("utf-8")
    elif isinstance(source, str):
        text = source
    else:
        data = source.read()
        text = data.decode("utf-8") if isinstance(data, bytes) else data

    if not text.strip():
        return []
    reader = csv.DictReader(io.StringIO(text))
    unknown = set(reader.fieldnames or []) - set(CSV_COLUMNS)
    if unknown:
        raise RecordSchemaError(f"csv header: unknown column(s) {sorted(unknown)}")

    out = []
    for lineno, row in enumerate(reader, start=2):
        where = f"line {lineno}"
        obj: dict[str, Any] = {}
        for key in ("model_id", "dataset_id", "paradigm"):
            value = _cell(row, key)
            if value is None:
                raise RecordSchemaError(f"{where}: missing field '{key}'")
            obj[key] = value
        run_id = _cell(row, "run_id")
        if run_id is None:
            raise RecordSchemaError(f"{where}: missing field 'run_id'")
        obj["run_id"] = int(run_id) if run_id.isdigit() else run_id

        obj["quality"] = {
            key: _cell_float(row, key, where)
            for key in ("f1_macro", "precision_macro", "recall_macro", "accuracy")
        }

        samples = _cell(row, "latency_samples_ms")
        if samples is not None:
            try:
                parsed = [float(v) for v in samples.split(";") if v.strip()]
            except ValueError:
                raise RecordSyntaxError(
                    f"{where}: column 'latency_samples_ms' is not ';'-joined numbers"
                ) from None
            latency: dict[str, Any] = {"samples_ms": parsed}
            warmup = _cell(row, "latency_warmup_count")
            if warmup is not None:
                latency["warmup_count"] = int(warmup)
            obj["latency"] = latency
        else:
            obj["latency"] = {
                "p50_ms": _cell_float(row, "latency_p50_ms", where),
                "p95_ms": _cell_float(row, "latency_p95_ms", where),
                "p99_ms": _cell_float(row, "latency_p99_ms", where),
            }
            if any(v is None for v in obj["latency"].values()):
                raise RecordSchemaError(
                    f"{where}: needs either 'latency_samples_ms' or all of "
                    f"'latency_p50_ms'/'latency_p95_ms'/'latency_p99_ms'"
                )

        ttft = {
            "p50_ms": _cell_float(row, "ttft_p50_ms", where),
            "p95_ms": _cell_float(row, "ttft_p95_ms", where),
            "p99_ms": _cell_float(row, "ttft_p99_ms", where),
        }
        if any(v is not None for v in ttft.values()):
            obj["ttft"] = ttft

        tok_in = _cell_float(row, "avg_input_tokens_per_request", where)
        tok_out = _cell_float(row, "avg_output_tokens_per_request", where)
        if tok_in is not None or tok_out is not None:
            obj["tokens"] = {
                "avg_input_tokens_per_request": tok_in,
                "avg_output_tokens_per_request": tok_out,
            }

        vcpu = _cell_float(row, "vcpu", where)
        mem = _cell_float(row, "memory_gib", where)
        if vcpu is not None or mem is not None:
            obj["resources"] = {"vcpu": vcpu, "memory_gib": mem}

        temp = _cell_float(row, "temperature", where)
        top_p = _cell_float(row, "top_p", where)
        if temp is not None or top_p is not None:
            obj["decoding"] = {"temperature": temp, "top_p": top_p}

        prov = _cell(row, "provenance")
        if prov is not None:
            obj["provenance"] = prov

        out.append(record_from_dict(obj, where=where))
    return out


def load_records(path: Union[str, Path]) -> list[MeasurementRecord]:
    """Load records from a .jsonl/.ndjson or .csv file, by extension."""
    path = Path(path)
    if path.suffix.lower() == ".csv":
        return parse_records_csv(path)
    return parse_records(path)


# ---------------------------------------------------------------------------
# Consistency validation
# ---------------------------------------------------------------------------

EXPECTED_RUNS_PER_GROUP = 3


def group_key(record: MeasurementRecord) -> tuple[str, str, str]:
    """Identity of one benchmark configuration: dataset x model x paradigm."""
    return (record.dataset_id, record.model_id, record.paradigm.value)


def validate_consistency(records: list[MeasurementRecord]) -> list[Warning_]:
    """Protocol-level checks that flag questionable data without rejecting it.

    Warns on: fewer than 3 runs in a model/dataset group, mixed latency
    representations within a group, and TTFT present on fine-tuned records.
    """
    warnings: list[Warning_] = []
    groups: dict[tuple[str, str, str], list[MeasurementRecord]] = {}
    for record in records:
        groups.setdefault(group_key(record), []).append(record)

    for (dataset_id, model_id, paradigm), members in sorted(groups.items()):
        label = f"{model_id} [{paradigm}] on {dataset_id}"
        if len(members) < EXPECTED_RUNS_PER_GROUP:
            warnings.append(
                Warning_(
                    code="run_count_below_protocol",
                    message=(
                        f"{label}: expected {EXPECTED_RUNS_PER_GROUP} runs, "
                        f"found {len(members)}"
                    ),
                    model_id=model_id,
                    dataset_id=dataset_id,
                )
            )
        kinds = {type(m.latency).__name__ for m in members}
        if len(kinds) > 1:
            warnings.append(
                Warning_(
                    code="mixed_latency_representations",
                    message=f"{label}: mixes raw traces and precomputed percentiles",
                    model_id=model_id,
                    dataset_id=dataset_id,
                )
            )

    for record in records:
        if record.paradigm is Paradigm.FINE_TUNED and record.ttft is not None:
            warnings.append(
                Warning_(
                    code="unexpected_ttft",
                    message=(
                        f"{record.model_id} on {record.dataset_id} run={record.run_id}: "
                        f"TTFT recorded for a fine-tuned model"
                    ),
                    model_id=record.model_id,
                    dataset_id=record.dataset_id,
                )
            )
    return warnings
