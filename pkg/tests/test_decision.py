"""Decision engine tests: utility, ranking, dominance, epoch selection."""

import math
import random

import pytest

from tradeoff.decision import (
    Candidate,
    EpochRecord,
    ObjectiveSpace,
    display_round,
    dominates,
    gap_penalized_score,
    pareto_frontier,
    rank_by_utility,
    select_best_epoch,
    tau_sweep,
    utility_score,
)
from tradeoff.records import Paradigm


def cand(f1, cost, lat, model_id="m", dataset_id="d", paradigm=Paradigm.FINE_TUNED):
    return Candidate(
        model_id=model_id,
        dataset_id=dataset_id,
        paradigm=paradigm,
        f1=f1,
        cost_usd_per_million=cost,
        p50_latency_ms=lat,
    )


def test_display_round_half_away_from_zero():
    assert display_round(0.005) == 0.01
    assert display_round(-0.005) == -0.01
    assert display_round(2.675) == 2.68
    assert display_round(16.335) == 16.34
    assert display_round(1.0) == 1.0
    assert display_round(0.004999) == 0.0


def test_utility_known_cells():
    s = utility_score(cand(0.9273, 12.44, 234.82), 500)
    assert s.display_value == 4.66
    s = utility_score(cand(0.8700, 192.48, 377.10), 250)
    assert s.display_value == 0.10


def test_utility_zero_latency_is_f1_over_cost():
    s = utility_score(cand(0.5, 4.0, 0.0), 123)
    assert s.utility == pytest.approx(0.5 / 4.0)


def test_utility_matches_independent_formula():
    rng = random.Random(11)
    for _ in range(200):
        f1 = rng.random()
        cost = rng.uniform(0.01, 5000)
        lat = rng.uniform(0, 3000)
        tau = rng.uniform(1, 5000)
        s = utility_score(cand(f1, cost, lat), tau)
        assert s.utility == pytest.approx((f1 / cost) * math.exp(-lat / tau))
        assert s.display_value == display_round(100 * s.utility)


def test_zero_cost_candidate_rejected():
    with pytest.raises(ValueError):
        cand(0.9, 0.0, 10.0)
    with pytest.raises(ValueError):
        cand(0.9, -1.0, 10.0)


def test_bad_tau_rejected():
    with pytest.raises(ValueError):
        utility_score(cand(0.9, 1.0, 10.0), 0)
    with pytest.raises(ValueError):
        utility_score(cand(0.9, 1.0, 10.0), -5)


def test_utility_monotone_in_each_argument():
    rng = random.Random(21)
    for _ in range(100):
        f1 = rng.uniform(0.01, 0.98)
        cost = rng.uniform(0.1, 100)
        lat = rng.uniform(0, 1000)
        tau = rng.uniform(10, 2000)
        base = utility_score(cand(f1, cost, lat), tau).utility
        assert utility_score(cand(f1 + 0.01, cost, lat), tau).utility > base
        assert utility_score(cand(f1, cost * 1.1, lat), tau).utility < base
        assert utility_score(cand(f1, cost, lat + 1), tau).utility < base


def test_rank_simple_order():
    cs = [cand(0.5, 1, 0, "a"), cand(0.3, 1, 0, "b"), cand(0.9, 1, 0, "c")]
    ranked = rank_by_utility([utility_score(c, 100) for c in cs])
    assert [s.rank for s in ranked] == [2, 3, 1]
    # input order preserved
    assert [s.candidate.model_id for s in ranked] == ["a", "b", "c"]


def test_rank_tie_breaks_on_cheaper_then_faster_then_name():
    # same f1/cost ratio and zero latency -> identical utility
    a = cand(0.8, 8.0, 0.0, "expensive")
    b = cand(0.4, 4.0, 0.0, "cheap")
    ranked = rank_by_utility([utility_score(c, 100) for c in (a, b)])
    by_model = {s.candidate.model_id: s.rank for s in ranked}
    assert by_model == {"cheap": 1, "expensive": 2}

    # full tie except latency
    a = cand(0.5, 5.0, 10.0, "slow")
    b = cand(0.5, 5.0, 10.0, "fast")
    # identical utilities and costs and latencies: name decides
    ranked = rank_by_utility([utility_score(c, 1e12) for c in (a, b)])
    by_model = {s.candidate.model_id: s.rank for s in ranked}
    assert by_model == {"fast": 1, "slow": 2}


def test_rank_rejects_mixed_groups():
    a = utility_score(cand(0.5, 1, 0, dataset_id="x"), 100)
    b = utility_score(cand(0.5, 1, 0, dataset_id="y"), 100)
    with pytest.raises(ValueError):
        rank_by_utility([a, b])
    c = utility_score(cand(0.5, 1, 0, dataset_id="x"), 200)
    with pytest.raises(ValueError):
        rank_by_utility([a, c])


def test_ranks_are_permutation():
    rng = random.Random(31)
    for _ in range(50):
        cs = [
            cand(rng.random(), rng.uniform(0.1, 100), rng.uniform(0, 500), f"m{i}")
            for i in range(rng.randint(1, 9))
        ]
        ranked = rank_by_utility([utility_score(c, 300) for c in cs])
        assert sorted(s.rank for s in ranked) == list(range(1, len(cs) + 1))
        # descending utility by rank
        by_rank = sorted(ranked, key=lambda s: s.rank)
        for hi, lo in zip(by_rank, by_rank[1:]):
            assert hi.utility >= lo.utility


def test_tau_sweep_singleton_rank_one():
    sweep = tau_sweep([cand(0.7, 3.0, 50.0)], [250, 500, 1000])
    assert all(table[0].rank == 1 for table in sweep.values())


def test_tau_sweep_rejects_mixed_datasets_and_empty():
    with pytest.raises(ValueError):
        tau_sweep([cand(0.5, 1, 0, dataset_id="x"), cand(0.5, 1, 0, dataset_id="y")])
    with pytest.raises(ValueError):
        tau_sweep([])
    with pytest.raises(ValueError):
        tau_sweep([cand(0.5, 1, 0)], [])


def test_cost_scale_argmax_invariance():
    rng = random.Random(41)
    for _ in range(60):
        cs = [
            cand(rng.random(), rng.uniform(0.1, 1000), rng.uniform(0, 2000), f"m{i}")
            for i in range(rng.randint(2, 8))
        ]
        c = rng.uniform(0.01, 50)
        scaled = [
            cand(x.f1, c * x.cost_usd_per_million, x.p50_latency_ms, x.model_id)
            for x in cs
        ]
        tau = rng.uniform(50, 2000)
        base_ranks = [s.rank for s in rank_by_utility([utility_score(x, tau) for x in cs])]
        scaled_ranks = [
            s.rank for s in rank_by_utility([utility_score(x, tau) for x in scaled])
        ]
        assert base_ranks == scaled_ranks


def test_tau_limit_is_f1_over_cost_ordering():
    rng = random.Random(51)
    for _ in range(40):
        cs = [
            cand(rng.uniform(0.01, 1), rng.uniform(0.1, 1000), rng.uniform(0, 2000), f"m{i}")
            for i in range(rng.randint(2, 8))
        ]
        ranked = rank_by_utility([utility_score(c, 1e9) for c in cs])
        by_rank = [s.candidate for s in sorted(ranked, key=lambda s: s.rank)]
        direct = sorted(cs, key=lambda c: -(c.f1 / c.cost_usd_per_million))
        assert [c.f1 / c.cost_usd_per_million for c in by_rank] == pytest.approx(
            [c.f1 / c.cost_usd_per_million for c in direct]
        )


# --- Pareto ------------------------------------------------------------------

SPACES = list(ObjectiveSpace)


def oracle_objectives(c, space):
    # independent objective extraction for the brute-force check
    if space is ObjectiveSpace.F1_LATENCY_COST_3D:
        return (-c.f1, c.p50_latency_ms, c.cost_usd_per_million)
    if space is ObjectiveSpace.F1_VS_COST:
        return (-c.f1, c.cost_usd_per_million)
    if space is ObjectiveSpace.COST_VS_LATENCY:
        return (c.cost_usd_per_million, c.p50_latency_ms)
    return (-c.f1, c.p50_latency_ms)


def oracle_dominates(a, b, space):
    va, vb = oracle_objectives(a, space), oracle_objectives(b, space)
    return all(x <= y for x, y in zip(va, vb)) and any(x < y for x, y in zip(va, vb))


def oracle_frontier(candidates, space):
    return [
        b
        for b in candidates
        if not any(oracle_dominates(a, b, space) for a in candidates if a is not b)
    ]


def random_candidates(rng, n=None):
    n = n or rng.randint(1, 10)
    out = []
    for i in range(n):
        # occasional duplicated coordinates exercise the weak-dominance rule
        if out and rng.random() < 0.2:
            twin = rng.choice(out)
            out.append(cand(twin.f1, twin.cost_usd_per_million, twin.p50_latency_ms, f"m{i}"))
        else:
            out.append(
                cand(
                    round(rng.random(), 2),
                    round(rng.uniform(0.5, 100), 1),
                    round(rng.uniform(0, 1000), 0),
                    f"m{i}",
                )
            )
    return out


def test_pareto_singleton():
    c = cand(0.5, 1.0, 10.0)
    result = pareto_frontier([c], ObjectiveSpace.F1_VS_COST)
    assert result.frontier == (c,)
    assert result.dominated == {}


def test_pareto_empty_rejected():
    with pytest.raises(ValueError):
        pareto_frontier([], ObjectiveSpace.F1_VS_COST)


def test_pareto_matches_brute_force_oracle():
    rng = random.Random(61)
    for _ in range(300):
        cs = random_candidates(rng)
        for space in SPACES:
            result = pareto_frontier(cs, space)
            assert set(result.frontier) == set(oracle_frontier(cs, space)), (cs, space)
            # partition
            assert set(result.frontier) | set(result.dominated) == set(cs)
            assert not set(result.frontier) & set(result.dominated)
            for loser, witness in result.dominated.items():
                assert oracle_dominates(witness, loser, space)


def test_pareto_witness_is_first_dominator_in_input_order():
    a = cand(0.9, 1.0, 1.0, "first")
    b = cand(0.9, 1.0, 1.0, "second")
    loser = cand(0.1, 50.0, 500.0, "loser")
    result = pareto_frontier([a, b, loser], ObjectiveSpace.F1_VS_COST)
    assert result.dominated[loser].model_id == "first"


def test_pareto_idempotent():
    rng = random.Random(71)
    for _ in range(100):
        cs = random_candidates(rng)
        for space in SPACES:
            frontier = list(pareto_frontier(cs, space).frontier)
            again = pareto_frontier(frontier, space)
            assert set(again.frontier) == set(frontier)
            assert again.dominated == {}


def test_max_f1_always_on_frontier_in_f1_spaces():
    rng = random.Random(81)
    for _ in range(100):
        cs = random_candidates(rng)
        best = max(cs, key=lambda c: c.f1)
        for space in (
            ObjectiveSpace.F1_VS_COST,
            ObjectiveSpace.F1_VS_LATENCY,
            ObjectiveSpace.F1_LATENCY_COST_3D,
        ):
            frontier = pareto_frontier(cs, space).frontier
            assert any(c.f1 == best.f1 for c in frontier)


def test_dominance_invariant_under_monotone_cost_transform():
    rng = random.Random(91)
    for _ in range(60):
        cs = [
            cand(rng.random(), rng.uniform(2, 1000), rng.uniform(0, 500), f"m{i}")
            for i in range(rng.randint(2, 8))
        ]
        logged = [
            cand(c.f1, math.log(c.cost_usd_per_million), c.p50_latency_ms, c.model_id)
            for c in cs
        ]
        for space in SPACES:
            before = {c.model_id for c in pareto_frontier(cs, space).frontier}
            after = {c.model_id for c in pareto_frontier(logged, space).frontier}
            assert before == after


def test_duplicate_points_are_co_frontier():
    a = cand(0.5, 2.0, 10.0, "a")
    b = cand(0.5, 2.0, 10.0, "b")
    for space in SPACES:
        result = pareto_frontier([a, b], space)
        assert set(result.frontier) == {a, b}


def test_dominates_is_irreflexive():
    c = cand(0.5, 2.0, 10.0)
    for space in SPACES:
        assert not dominates(c, c, space)


# --- checkpoint selection ------------------------------------------------------


def test_gap_score_examples():
    assert gap_penalized_score(EpochRecord(1, 0.95, 0.95)) == pytest.approx(0.95)
    assert gap_penalized_score(EpochRecord(1, 0.99, 0.93)) == pytest.approx(0.87)
    assert gap_penalized_score(EpochRecord(1, 0.90, 0.93)) == pytest.approx(0.90)


def test_gap_score_bounded_by_val_f1():
    rng = random.Random(13)
    for _ in range(200):
        train, val = rng.random(), rng.random()
        score = gap_penalized_score(EpochRecord(1, train, val))
        assert score <= val + 1e-12
        if train == val:
            assert score == val


def test_gap_score_decreases_with_gap():
    val = 0.9
    gaps = [0.0, 0.02, 0.05, 0.1]
    scores = [gap_penalized_score(EpochRecord(1, val + g, val)) for g in gaps]
    assert scores == sorted(scores, reverse=True)
    scores = [gap_penalized_score(EpochRecord(1, val - g, val)) for g in gaps]
    assert scores == sorted(scores, reverse=True)


def test_select_best_epoch_worked_example():
    epochs = [EpochRecord(1, 0.94, 0.93), EpochRecord(2, 0.99, 0.935)]
    assert select_best_epoch(epochs).epoch_index == 1


def test_select_best_epoch_singleton_and_tie():
    only = EpochRecord(3, 0.9, 0.9)
    assert select_best_epoch([only]) is only
    tie = [EpochRecord(2, 0.9, 0.9), EpochRecord(1, 0.9, 0.9)]
    assert select_best_epoch(tie).epoch_index == 1


def test_select_best_epoch_empty_rejected():
    with pytest.raises(ValueError):
        select_best_epoch([])


def test_select_best_epoch_matches_exhaustive_scan():
    rng = random.Random(17)
    for _ in range(300):
        epochs = [
            EpochRecord(i + 1, round(rng.random(), 3), round(rng.random(), 3))
            for i in range(rng.randint(1, 6))
        ]
        chosen = select_best_epoch(epochs)
        best_score = max(gap_penalized_score(e) for e in epochs)
        winners = [e for e in epochs if gap_penalized_score(e) == best_score]
        assert gap_penalized_score(chosen) == best_score
        assert chosen.epoch_index == min(w.epoch_index for w in winners)


def test_epoch_record_validation():
    with pytest.raises(ValueError):
        EpochRecord(0, 0.5, 0.5)
    with pytest.raises(ValueError):
        EpochRecord(1, 1.5, 0.5)
