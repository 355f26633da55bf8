"""Ranks on several quantile ranges, their mean, and the convergence norm.

Six synthetic algorithms are built so that their inter-quantile intervals
narrow at a controlled rate. alg2 and alg3 overlap on wide ranges and separate
on narrow ones, so their ranks differ across the range family; the mean rank
summarises that drift.

Run:  python demos/02_mean_ranks.py
"""

from flopsrank.driver import convergence_norm, rank_delta
from flopsrank.ranker import mean_ranks
from flopsrank.stats import MeasurementSet, quantile_pair

HALF_WIDTH = {5: 6.0, 10: 4.75, 15: 4.6, 20: 4.0, 25: 3.5, 30: 3.0, 35: 0.4}
CENTRES = {"alg1": 10.0, "alg0": 10.0, "alg3": 20.0, "alg2": 21.0, "alg4": 30.0, "alg5": 30.0}


def shaped_samples(centre):
    """21 timings (ms) whose k-th order statistic is the (5k)-th percentile."""
    s = [0.0] * 21
    s[0], s[20] = centre - 7, centre + 7
    for lo, w in HALF_WIDTH.items():
        s[lo // 5], s[20 - lo // 5] = centre - w, centre + w
    for k, off in zip(range(8, 13), (-0.3, -0.15, 0.0, 0.15, 0.3)):
        s[k] = centre + off
    return [x * 1e-3 for x in s]


if __name__ == "__main__":
    data = {a: MeasurementSet(a, shaped_samples(c)) for a, c in CENTRES.items()}
    table = mean_ranks(list(CENTRES), data)

    print("inter-quantile intervals of alg2 and alg3 (ms):")
    for r in table.ranges:
        a = [round(1e3 * v, 2) for v in quantile_pair(data["alg3"], r)]
        b = [round(1e3 * v, 2) for v in quantile_pair(data["alg2"], r)]
        print(f"  {str(r):>8}  alg3 {a}  alg2 {b}")

    print("\nranks per range:")
    print("        " + " ".join(f"{str(r):>8}" for r in table.ranges) + "   mean")
    for alg, ranks in table.rank_matrix().items():
        print(f"  {alg}  " + " ".join(f"{x:>8}" for x in ranks) + f"   {table.mean_rank[alg]:.2f}")

    x = [round(v, 2) for v in table.ordered_mean_ranks()]
    dx = rank_delta(x)
    print("\nmean ranks in headline order:", x)
    print("adjacent differences dx:", [round(v, 2) for v in dx])

    # Suppose the previous iteration differed only in the alg3/alg2 gap.
    dy = [0, 0.86, 0, 0.57, 0]
    print("norm against", dy, "=", round(convergence_norm(dx, dy, len(x)), 4),
          "(divided by p); divided by p-1:", round(convergence_norm(dx, dy, len(x), divisor=5), 4))
