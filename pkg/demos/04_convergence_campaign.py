"""A measurement campaign that stops once the mean ranks stop moving.

Six synthetic algorithms form three pairs (around 1 s, 2 s and 3 s). Each
iteration adds three timings per algorithm, re-ranks on every quantile range
and compares the mean-rank gaps with the previous iteration.

With very few samples, two draws from the same distribution can still land
in disjoint inner quantile ranges; if that happens two iterations in a row the
loop stops with a spurious split. The second campaign below shows such a seed.

Run:  python demos/04_convergence_campaign.py
"""

from flopsrank.harness import AlgorithmSpec, CampaignConfig, SyntheticSource, run_campaign

PAIRS = {f"alg{i}": [(1.0, 1.0 + i // 2, 0.01)] for i in range(6)}


def campaign(seed):
    source = SyntheticSource(PAIRS, seed=seed)
    single = {a: source.next_batch(a, 1)[0] for a in PAIRS}
    return run_campaign([AlgorithmSpec(a) for a in PAIRS], source, CampaignConfig(seed=seed), single_run=single)


def narrate(seed):
    result = campaign(seed)
    print(f"seed {seed}: initial order {result.initial_order}")
    for rec in result.state.history:
        classes = " ".join(f"{a}:{r}" for a, r in zip(rec.sequence, rec.ranks))
        print(f"  iteration {rec.iteration}  N={rec.n_measurements:<3} norm={rec.norm:.4f}  {classes}")
    state = result.state
    print(f"  converged={state.converged} after N={state.n}" + (f" ({state.warning})" if state.warning else ""))
    print()


if __name__ == "__main__":
    narrate(0)
    narrate(3)
