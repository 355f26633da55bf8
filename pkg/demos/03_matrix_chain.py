"""Variants of a matrix chain product and their FLOP counts.

Every full parenthesization of A*B*C*D, combined with every admissible order
of executing its independent products, is a separate algorithm. Costs are
multiply-accumulate counts; FLOPs are twice that.

Run:  python demos/03_matrix_chain.py [d0 d1 ... dL]
"""

import sys

from flopsrank.chain import (
    ChainInstance,
    count_parenthesizations,
    enumerate_variants,
    optimal_cost,
    relative_flops,
    shortlist,
)

if __name__ == "__main__":
    dims = tuple(int(d) for d in sys.argv[1:]) or (75, 75, 8, 75, 75)
    inst = ChainInstance(dims)
    variants = enumerate_variants(inst)
    names = inst.names()
    print(f"instance {dims}: {count_parenthesizations(variants)} parenthesizations, {len(variants)} variants")
    print(f"dynamic-programming optimum: {optimal_cost(dims)} multiply-accumulates\n")

    rf = relative_flops([v.cost for v in variants])
    for v, score in zip(variants, rf):
        print(f"  {v.id:<5} {v.parenthesization(names):<12} flops={v.flops:<9} RF={score:.2f}  kernels: {', '.join(v.kernels(names))}")

    # Pretend one timed run per variant came back, with a costlier variant doing well.
    times = [1.0, 1.05, 0.9, 1.6, 2.2, 2.3]
    single = {v.id: t for v, t in zip(variants, times)} if len(variants) == len(times) else {
        v.id: 1.0 + 0.1 * i for i, v in enumerate(variants)}
    picked = shortlist({v.id: v.flops for v in variants}, single, rt_threshold=1.5)
    print("\nsingle-run times:", {k: round(t, 2) for k, t in single.items()})
    print("worth measuring further (minimum FLOPs, or relative time < 1.5):", picked)
