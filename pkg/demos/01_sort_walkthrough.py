"""Sorting four algorithms into performance classes, one comparison at a time.

The comparator here is scripted rather than computed from timings, so every
swap, merge and split of the bubble sort can be followed by hand:

    alg2 beats alg1, alg4 beats alg3 and alg1, alg1 ~ alg3, alg2 ~ alg4.

Run:  python demos/01_sort_walkthrough.py
"""

from flopsrank.comparator import Outcome
from flopsrank.ranker import sort_algs

FASTER = {("alg2", "alg1"), ("alg4", "alg3"), ("alg4", "alg1")}
SAME = {frozenset(("alg1", "alg3")), frozenset(("alg4", "alg2"))}


def scripted(left, right):
    if frozenset((left, right)) in SAME:
        return Outcome.EQUIVALENT
    return Outcome.FASTER if (left, right) in FASTER else Outcome.SLOWER


def show(order, ranks):
    return "  ".join(f"{a}:{r}" for a, r in zip(order, ranks))


if __name__ == "__main__":
    start = ["alg1", "alg2", "alg3", "alg4"]
    print("initial hypothesis:", show(start, range(1, 5)))
    print()
    trace = []
    final = sort_algs(start, None, comparator=scripted, trace=trace)
    for step in trace:
        print(f"pass {step.pass_no}  {step.left:>4} vs {step.right:<4} {step.outcome.name:<10} "
              f"{step.action:<10} -> {show(step.order, step.ranks)}")
    print()
    print("final:", show(final.ids, final.ranks))

    # The shrinking passes alone never revisit the tail of the sequence.
    literal = sort_algs(start, None, comparator=scripted, settle=False)
    print("without the settling passes:", show(literal.ids, literal.ranks))
