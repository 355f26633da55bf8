import pytest
from hypothesis import given
from hypothesis import strategies as st

from flopsrank.ranker import RankedSequence
from flopsrank.verdict import VerdictKind, classify


def ranking(pairs):
    return RankedSequence(tuple(pairs))


def test_all_minimum_and_all_best():
    v = classify(ranking([("a", 1), ("b", 1)]), {"a": 10, "b": 10})
    assert v.kind is VerdictKind.FLOPS_VALID and not v.is_anomaly
    assert v.min_flops == ["a", "b"]


def test_costlier_algorithm_alone_in_front():
    # fast-frequency scenario: a costlier variant is the only one in the best class
    seq = ranking([("alg2", 1), ("alg0", 2), ("alg1", 2), ("alg3", 2), ("alg4", 3)])
    flops = {"alg0": 100, "alg1": 100, "alg2": 104, "alg3": 111, "alg4": 127}
    v = classify(seq, flops)
    assert v.kind is VerdictKind.ANOMALY_OUTSIDE_MIN_FLOPS and v.is_anomaly


def test_minimum_set_split_across_classes():
    seq = ranking([("a", 1), ("c", 1), ("b", 2)])
    v = classify(seq, {"a": 5, "b": 5, "c": 9})
    assert v.kind is VerdictKind.ANOMALY_WITHIN_MIN_FLOPS


def test_single_cheapest_in_front_is_valid_whatever_else():
    seq = ranking([("a", 1), ("x", 1), ("y", 2), ("z", 3)])
    v = classify(seq, {"a": 1, "x": 3, "y": 2, "z": 2})
    assert v.kind is VerdictKind.FLOPS_VALID


def test_evidence():
    v = classify(ranking([("a", 1), ("b", 2)]), {"a": 100, "b": 150}, {"a": 1.0, "b": 1.71})
    assert [(e.alg_id, e.rank, e.flops, e.rf, e.mean_rank) for e in v.evidence] == [
        ("a", 1, 100, 0.0, 1.0),
        ("b", 2, 150, 0.5, 1.71),
    ]


def test_zero_flops_gives_no_relative_score():
    v = classify(ranking([("a", 1)]), {"a": 0})
    assert v.evidence[0].rf is None


def test_missing_flops():
    with pytest.raises(ValueError, match="no FLOP count"):
        classify(ranking([("a", 1), ("b", 1)]), {"a": 1})


def test_cheaper_unranked_algorithm_rejected():
    with pytest.raises(ValueError, match="not ranked"):
        classify(ranking([("a", 1)]), {"a": 5, "ghost": 1})


def test_costlier_unranked_algorithms_ignored():
    v = classify(ranking([("a", 1)]), {"a": 5, "dropped": 50})
    assert v.kind is VerdictKind.FLOPS_VALID


rank_lists = st.lists(st.integers(0, 1), min_size=1, max_size=8).map(
    lambda steps: [1 + sum(steps[1:i + 1]) for i in range(len(steps))]
)


@given(rank_lists, st.data())
def test_depends_only_on_ranks_and_membership(ranks, data):
    ids = [f"a{i}" for i in range(len(ranks))]
    flops = {a: data.draw(st.integers(1, 3)) for a in ids}
    base = classify(RankedSequence.from_lists(ids, ranks), flops).kind
    # permute ids inside each equal-rank block
    blocks = {}
    for a, r in zip(ids, ranks):
        blocks.setdefault(r, []).append(a)
    permuted = []
    for r in sorted(blocks):
        permuted += data.draw(st.permutations(blocks[r]))
    assert classify(RankedSequence.from_lists(permuted, ranks), flops).kind is base
    # uniform scaling of FLOP counts
    k = data.draw(st.integers(2, 1000))
    assert classify(RankedSequence.from_lists(ids, ranks), {a: f * k for a, f in flops.items()}).kind is base
    # consistency with the definition
    best = [r == 1 for a, r in zip(ids, ranks) if flops[a] == min(flops.values())]
    expected = (
        VerdictKind.FLOPS_VALID if all(best)
        else VerdictKind.ANOMALY_OUTSIDE_MIN_FLOPS if not any(best)
        else VerdictKind.ANOMALY_WITHIN_MIN_FLOPS
    )
    assert base is expected
