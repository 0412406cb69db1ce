# How far do LLM token prices have to fall before an LLM outranks the
# fine-tuned encoders?
#
# $ python3 demos/pricing_whatif.py
#
# Bisect a uniform discount factor applied to both LLM price sheets. Latency
# doesn't move, so the exp(-p50/tau) drag stays while cost shrinks; the
# strict-tolerance columns hold out longest. On this benchmark the flip needs
# roughly a 100x price cut everywhere.

from tradeoff import fixtures
from tradeoff.analysis import candidates_for_dataset, summarize_records
from tradeoff.costing import apply_pricing_overrides
from tradeoff.decision import tau_sweep
from tradeoff.records import Paradigm

summaries = summarize_records(fixtures.benchmark_records())
base = fixtures.pricing_snapshot()


def top_is_llm(dataset, tau, factor):
    overrides = {
        "token_prices": {
            model: {
                "input_usd_per_million_tokens": p.input_usd_per_million_tokens * factor,
                "output_usd_per_million_tokens": p.output_usd_per_million_tokens * factor,
            }
            for model, p in base.token_prices.items()
        }
    }
    snapshot = apply_pricing_overrides(base, overrides)
    candidates, _ = candidates_for_dataset(summaries, dataset, snapshot)
    ranked = tau_sweep(candidates, [tau])[tau]
    top = next(s for s in ranked if s.rank == 1)
    return top.candidate.paradigm is not Paradigm.FINE_TUNED, top.candidate.label


for dataset in ("imdb", "sst2", "agnews", "dbpedia"):
    print(f"\n{dataset}")
    for tau in (250.0, 500.0, 1000.0):
        flipped, _ = top_is_llm(dataset, tau, 1e-9)
        if not flipped:
            print(f"  tau={tau:6g}: encoders keep rank 1 even at ~free tokens")
            continue
        lo, hi = 1e-9, 1.0  # invariant: flipped at lo, not at hi
        for _ in range(60):
            mid = (lo * hi) ** 0.5
            if top_is_llm(dataset, tau, mid)[0]:
                lo = mid
            else:
                hi = mid
        _, winner = top_is_llm(dataset, tau, lo)
        print(f"  tau={tau:6g}: flips to {winner} below a {lo:.2e}x price factor")
