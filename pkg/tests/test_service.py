"""Scenario service tests: pure evaluation, HTTP adapter, determinism."""

import dataclasses
import json
import threading
import urllib.error
import urllib.request

import pytest

from tradeoff import fixtures
from tradeoff.service import (
    ScenarioError,
    ServiceState,
    evaluate_scenario,
    get_models,
    make_server,
)


@pytest.fixture(scope="module")
def state():
    return ServiceState.load(
        fixtures.benchmark_records(), fixtures.pricing_snapshot(), check_consistency=False
    )


def test_catalog_has_all_entries(state):
    catalog = get_models(state)
    assert len(catalog["models"]) == 28
    assert catalog["datasets"] == ["agnews", "dbpedia", "imdb", "sst2"]
    assert catalog["snapshot_date"] == "2026-01-22"
    labels = {m["label"] for m in catalog["models"]}
    assert "gpt-4o (ZS)" in labels and "distilbert" in labels


def test_empty_record_set_empty_catalog():
    empty = ServiceState.load([], fixtures.pricing_snapshot())
    assert get_models(empty)["models"] == []


def test_duplicate_records_merge_with_warning():
    records = fixtures.benchmark_records()
    doubled = records + [records[0]]
    state = ServiceState.load(doubled, fixtures.pricing_snapshot(), check_consistency=False)
    assert len(get_models(state)["models"]) == 28
    assert any("duplicate" in w for w in state.warnings)


def test_scenario_matches_expected_ranking_cells(state):
    for tau in (250.0, 500.0, 1000.0):
        for ds in ("imdb", "sst2", "agnews", "dbpedia"):
            response = evaluate_scenario(state, {"dataset_id": ds, "tau_ms": tau})
            got = {
                (u["model_id"], u["paradigm"]): (u["display_value"], u["rank"])
                for u in response["utilities"]
            }
            for exp in fixtures.expected_utilities():
                if exp.dataset_id != ds or exp.tau_ms != tau:
                    continue
                display, rank = got[(exp.model_id, exp.paradigm)]
                assert rank == exp.rank, (ds, tau, exp.model_id)
                assert abs(round(display * 100) - round(exp.display_value * 100)) <= 1


def test_scenario_repeat_is_byte_identical(state):
    request = {"dataset_id": "imdb", "tau_ms": 500}
    a = json.dumps(evaluate_scenario(state, request), sort_keys=True)
    b = json.dumps(evaluate_scenario(state, request), sort_keys=True)
    assert a == b


def test_scenario_cost_utility_internal_consistency(state):
    response = evaluate_scenario(state, {"dataset_id": "sst2", "tau_ms": 333})
    costs = {
        (c["model_id"], c["paradigm"]): c["usd_per_million_requests"]
        for c in response["costs"]
    }
    for u in response["utilities"]:
        assert u["cost_usd_per_million"] == costs[(u["model_id"], u["paradigm"])]


def test_scenario_error_field_paths(state):
    with pytest.raises(ScenarioError) as exc:
        evaluate_scenario(state, {"dataset_id": "nope", "tau_ms": 500})
    assert exc.value.field == "dataset_id"

    with pytest.raises(ScenarioError) as exc:
        evaluate_scenario(state, {"dataset_id": "imdb", "tau_ms": 0})
    assert exc.value.field == "tau_ms"

    with pytest.raises(ScenarioError) as exc:
        evaluate_scenario(state, {"dataset_id": "imdb", "tau_ms": 1, "spaces": ["bogus"]})
    assert exc.value.field == "spaces[0]"

    with pytest.raises(ScenarioError) as exc:
        evaluate_scenario(
            state,
            {
                "dataset_id": "imdb",
                "tau_ms": 1,
                "pricing_overrides": {"token_prices": {"mystery": {}}},
            },
        )
    assert exc.value.field == "pricing_overrides"

    with pytest.raises(ScenarioError) as exc:
        evaluate_scenario(state, {"dataset_id": "imdb", "tau_ms": 1, "extra": True})
    assert exc.value.field == "extra"

    # prices that zero out a model's cost cannot be scored
    with pytest.raises(ScenarioError) as exc:
        evaluate_scenario(
            state,
            {
                "dataset_id": "imdb",
                "tau_ms": 1,
                "pricing_overrides": {
                    "token_prices": {
                        "gpt-4o": {
                            "input_usd_per_million_tokens": 0,
                            "output_usd_per_million_tokens": 0,
                        }
                    }
                },
            },
        )
    assert exc.value.field == "pricing_overrides"


def test_override_halved_gpt_input_price(state):
    response = evaluate_scenario(
        state,
        {
            "dataset_id": "imdb",
            "tau_ms": 500,
            "pricing_overrides": {
                "token_prices": {"gpt-4o": {"input_usd_per_million_tokens": 1.25}}
            },
        },
    )
    costs = {(c["model_id"], c["paradigm"]): c for c in response["costs"]}
    got = costs[("gpt-4o", "zero_shot")]["usd_per_million_requests"]
    assert got == pytest.approx(333.11 * 1.25 + 1.0 * 10.00)
    # non-overridden entries unchanged
    assert costs[("claude-sonnet-4.5", "zero_shot")][
        "usd_per_million_requests"
    ] == pytest.approx(366.65 * 3.00 + 5.0 * 15.00)


def test_mild_token_discount_keeps_distilbert_first(state):
    # halving both API token prices narrows the gap but does not close it
    response = evaluate_scenario(
        state,
        {
            "dataset_id": "imdb",
            "tau_ms": 500,
            "pricing_overrides": {
                "token_prices": {
                    "gpt-4o": {
                        "input_usd_per_million_tokens": 1.25,
                        "output_usd_per_million_tokens": 5.0,
                    },
                    "claude-sonnet-4.5": {
                        "input_usd_per_million_tokens": 1.5,
                        "output_usd_per_million_tokens": 7.5,
                    },
                }
            },
        },
    )
    top = next(u for u in response["utilities"] if u["rank"] == 1)
    assert top["model_id"] == "distilbert"


def test_extreme_token_discount_lets_llms_overtake(state):
    # at a millionth of the list price, token-billed utility dwarfs the
    # compute-billed encoders; verified against direct recomputation below
    overrides = {
        "token_prices": {
            "gpt-4o": {
                "input_usd_per_million_tokens": 2.50e-6,
                "output_usd_per_million_tokens": 10.00e-6,
            },
            "claude-sonnet-4.5": {
                "input_usd_per_million_tokens": 3.00e-6,
                "output_usd_per_million_tokens": 15.00e-6,
            },
        }
    }
    response = evaluate_scenario(
        state, {"dataset_id": "imdb", "tau_ms": 500, "pricing_overrides": overrides}
    )
    top = next(u for u in response["utilities"] if u["rank"] == 1)
    assert top["model_id"] == "gpt-4o" and top["paradigm"] == "zero_shot"

    # independent route: recompute the winner's utility from raw inputs
    import math

    cost = 333.11 * 2.50e-6 + 1.0 * 10.00e-6
    expect = (0.9611 / cost) * math.exp(-344.89 / 500)
    assert top["utility"] == pytest.approx(expect)


def test_scenario_pareto_spaces_filtering(state):
    response = evaluate_scenario(
        state, {"dataset_id": "imdb", "tau_ms": 500, "spaces": ["f1_vs_cost"]}
    )
    assert list(response["pareto"].keys()) == ["f1_vs_cost"]
    report = response["pareto"]["f1_vs_cost"]
    assert [d["label"] for d in report["dominated"]] == ["gpt-4o (FS)"]
    assert report["dominated"][0]["dominated_by"] == "claude-sonnet-4.5 (ZS)"


# --- HTTP adapter -------------------------------------------------------------


@pytest.fixture(scope="module")
def server(state):
    srv = make_server(state, "127.0.0.1", 0)
    thread = threading.Thread(target=srv.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{srv.server_address[1]}"
    srv.shutdown()
    srv.server_close()


def http_get(url):
    with urllib.request.urlopen(url, timeout=5) as resp:
        return resp.status, json.loads(resp.read())


def http_post(url, payload):
    data = json.dumps(payload).encode()
    req = urllib.request.Request(
        url, data=data, headers={"Content-Type": "application/json"}
    )
    try:
        with urllib.request.urlopen(req, timeout=5) as resp:
            return resp.status, json.loads(resp.read())
    except urllib.error.HTTPError as err:
        return err.code, json.loads(err.read())


def test_health_endpoint(server):
    status, body = http_get(server + "/api/health")
    assert status == 200
    assert body["status"] == "ok"
    assert body["datasets"] == ["agnews", "dbpedia", "imdb", "sst2"]


def test_models_endpoint_matches_library(server, state):
    status, body = http_get(server + "/api/models")
    assert status == 200
    assert body == json.loads(json.dumps(get_models(state)))


def test_scenario_endpoint_matches_library(server, state):
    request = {"dataset_id": "dbpedia", "tau_ms": 1000}
    status, body = http_post(server + "/api/scenario", request)
    assert status == 200
    assert body == json.loads(json.dumps(evaluate_scenario(state, request)))


def test_scenario_endpoint_structured_errors(server):
    status, body = http_post(server + "/api/scenario", {"dataset_id": "x", "tau_ms": 5})
    assert status == 400
    assert body["error"]["field"] == "dataset_id"

    status, body = http_post(server + "/api/scenario", {"dataset_id": "imdb"})
    assert status == 400
    assert body["error"]["field"] == "tau_ms"


def test_scenario_endpoint_rejects_bad_json(server):
    req = urllib.request.Request(
        server + "/api/scenario", data=b"{oops", headers={"Content-Type": "application/json"}
    )
    try:
        urllib.request.urlopen(req, timeout=5)
        raise AssertionError("expected a 400")
    except urllib.error.HTTPError as err:
        assert err.code == 400
        assert json.loads(err.read())["error"]["field"] == "$"


def test_unknown_api_endpoint_404(server):
    try:
        urllib.request.urlopen(server + "/api/missing", timeout=5)
        raise AssertionError("expected a 404")
    except urllib.error.HTTPError as err:
        assert err.code == 404


def test_static_index_served(server):
    with urllib.request.urlopen(server + "/", timeout=5) as resp:
        assert resp.status == 200
        assert b"<" in resp.read()


def test_static_traversal_blocked(server):
    for probe in ("/../pyproject.toml", "/.hidden"):
        try:
            with urllib.request.urlopen(server + probe, timeout=5) as resp:
                assert resp.status == 404
        except urllib.error.HTTPError as err:
            assert err.code == 404
