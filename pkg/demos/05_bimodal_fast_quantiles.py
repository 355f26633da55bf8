"""Frequency-switching noise and the fast quantile preset.

alg2 costs more FLOPs than alg0 and alg1, but 60% of its runs hit a fast
mode. On the central (25,75) range its spread overlaps the cheap algorithms
and everything looks equivalent. The fast preset looks at the lower part of
the distributions, where alg2 is alone at the top: the FLOP count no longer
picks the fastest algorithm.

Run:  python demos/05_bimodal_fast_quantiles.py
"""

from flopsrank.harness import AlgorithmSpec, CampaignConfig, SyntheticSource, run_campaign

MIXTURES = {
    "alg0": [(1.0, 1.00, 0.01)],
    "alg1": [(1.0, 1.00, 0.01)],
    "alg2": [(0.6, 0.90, 0.01), (0.4, 1.70, 0.02)],
}
FLOPS = {"alg0": 270000, "alg1": 270000, "alg2": 1023750}

if __name__ == "__main__":
    algs = [AlgorithmSpec(a, FLOPS[a]) for a in MIXTURES]
    for preset in ("default", "fast"):
        config = CampaignConfig(quantiles=preset, max_measurements=60, seed=1)
        result = run_campaign(algs, SyntheticSource(MIXTURES, seed=1), config)
        seq = result.table.headline
        print(f"{preset:>7} quantiles, headline {config.headline}:")
        print("   ", "  ".join(f"{a}:{r}" for a, r in seq.entries),
              f"(N={result.state.n}, converged={result.state.converged})")
        print("    verdict:", result.verdict.kind.value)
        for e in result.verdict.evidence:
            print(f"      {e.alg_id} rank {e.rank} mean rank {e.mean_rank:.2f} RF {e.rf:.2f}")
