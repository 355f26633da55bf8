import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flopsrank.comparator import Outcome, compare
from flopsrank.ranker import (
    DEFAULT_RANGES,
    FAST_HEADLINE_RANGE,
    FAST_RANGES,
    HEADLINE_RANGE,
    RankedSequence,
    RankingError,
    mean_ranks,
    parse_ranges,
    sort_algs,
)
from flopsrank.stats import MeasurementSet, QuantileRange

from .conftest import TABLE3_ORDER

FIG4_FASTER = {("alg2", "alg1"), ("alg4", "alg3"), ("alg4", "alg1")}
FIG4_EQUIVALENT = {frozenset(("alg1", "alg3")), frozenset(("alg4", "alg2"))}


def fig4_comparator(left, right):
    if frozenset((left, right)) in FIG4_EQUIVALENT:
        return Outcome.EQUIVALENT
    if (left, right) in FIG4_FASTER:
        return Outcome.FASTER
    if (right, left) in FIG4_FASTER:
        return Outcome.SLOWER
    raise AssertionError(f"walkthrough never compares {left} with {right}")


def check_fixed_point(seq, data, r):
    """One extra full pass: no adjacent pair may swap or change ranks."""
    for (a, ra), (b, rb) in zip(seq.entries, seq.entries[1:]):
        out = compare(data[a], data[b], r)
        assert out is not Outcome.SLOWER, f"{b} is faster than {a} but sits after it"
        if out is Outcome.EQUIVALENT:
            assert ra == rb, f"{a} ~ {b} but ranks {ra} != {rb}"


def test_single_algorithm():
    seq = sort_algs(["x"], {"x": MeasurementSet("x", [1.0])})
    assert seq.entries == (("x", 1),)


def test_figure4_walkthrough_final():
    seq = sort_algs(["alg1", "alg2", "alg3", "alg4"], None, comparator=fig4_comparator)
    assert seq.ids == ["alg2", "alg4", "alg1", "alg3"]
    assert seq.ranks == [1, 1, 2, 2]


def test_figure4_walkthrough_steps():
    trace = []
    sort_algs(["alg1", "alg2", "alg3", "alg4"], None, comparator=fig4_comparator, trace=trace)
    steps = [(s.left, s.right, s.action, s.order, s.ranks) for s in trace]
    # pass 1: swap, merge, swap
    assert steps[0] == ("alg1", "alg2", "swap", ("alg2", "alg1", "alg3", "alg4"), (1, 2, 3, 4))
    assert steps[1] == ("alg1", "alg3", "merge", ("alg2", "alg1", "alg3", "alg4"), (1, 2, 2, 3))
    assert steps[2] == ("alg3", "alg4", "swap", ("alg2", "alg1", "alg4", "alg3"), (1, 2, 2, 3))
    # pass 2: alg2/alg1 again, then alg4 overtakes alg1 which shared its rank
    assert steps[3][2] == "leave"
    assert steps[4] == ("alg1", "alg4", "swap+split", ("alg2", "alg4", "alg1", "alg3"), (1, 2, 3, 4))
    # pass 3: alg4 joins alg2
    assert steps[5] == ("alg2", "alg4", "merge", ("alg2", "alg4", "alg1", "alg3"), (1, 1, 2, 3))
    assert [s.pass_no for s in trace[:6]] == [1, 1, 1, 2, 2, 3]


def test_figure4_literal_passes_leave_tail_unmerged():
    seq = sort_algs(["alg1", "alg2", "alg3", "alg4"], None, comparator=fig4_comparator, settle=False)
    assert seq.ids == ["alg2", "alg4", "alg1", "alg3"]
    assert seq.ranks == [1, 1, 2, 3]


def test_cyclic_comparator_does_not_settle():
    # a comparator claiming the right-hand algorithm always wins swaps forever
    with pytest.raises(RankingError, match="did not settle"):
        sort_algs(["a", "b", "c"], None, comparator=lambda left, right: Outcome.SLOWER)


def test_three_separated_pairs():
    data = {}
    for i, loc in enumerate([1.0, 1.0, 2.0, 2.0, 3.0, 3.0]):
        data[f"alg{i}"] = MeasurementSet(f"alg{i}", [loc - 0.01, loc, loc + 0.01])
    for order in itertools.permutations(data):
        seq = sort_algs(list(order), data)
        assert sorted(seq.as_dict().items()) == [
            ("alg0", 1), ("alg1", 1), ("alg2", 2), ("alg3", 2), ("alg4", 3), ("alg5", 3)
        ]


def test_duplicate_and_empty_orders():
    with pytest.raises(ValueError):
        sort_algs([], {})
    with pytest.raises(ValueError):
        sort_algs(["a", "a"], {"a": MeasurementSet("a", [1.0])})


@pytest.mark.parametrize(
    "ranks,ok",
    [([1, 1, 2], True), ([1, 2, 2, 3], True), ([2, 2], False), ([1, 3], False), ([1, 2, 1], False)],
)
def test_ranked_sequence_validate(ranks, ok):
    seq = RankedSequence.from_lists([f"a{i}" for i in range(len(ranks))], ranks)
    if ok:
        seq.validate()
    else:
        with pytest.raises(RankingError):
            seq.validate()


TABLE3 = {
    (5, 95): [1, 1, 1, 1, 1, 1],
    (10, 90): [1, 1, 2, 2, 2, 2],
    (15, 85): [1, 1, 2, 2, 2, 2],
    (20, 80): [1, 1, 2, 2, 3, 3],
    (25, 75): [1, 1, 2, 2, 3, 3],
    (30, 70): [1, 1, 2, 2, 3, 3],
    (35, 65): [1, 1, 2, 3, 4, 4],
}


def test_table3_rank_matrix(table3_data):
    table = mean_ranks(TABLE3_ORDER, table3_data, DEFAULT_RANGES)
    for r, seq in zip(table.ranges, table.sequences):
        assert seq.ids == TABLE3_ORDER
        assert seq.ranks == TABLE3[(r.lower, r.upper)], r
    assert table.headline.ranks == [1, 1, 2, 2, 3, 3]
    assert [f"{table.mean_rank[a]:.2f}" for a in TABLE3_ORDER] == ["1.00", "1.00", "1.86", "2.00", "2.57", "2.57"]
    assert table.ordered_mean_ranks() == pytest.approx([1, 1, 13 / 7, 2, 18 / 7, 18 / 7], abs=1e-15)
    assert table.rank_matrix()["alg3"] == [1, 2, 2, 2, 2, 2, 2]


def test_mean_ranks_average_over_ranges(table3_data):
    table = mean_ranks(TABLE3_ORDER, table3_data, [QuantileRange(5, 95), QuantileRange(25, 75)])
    assert table.mean_rank == {"alg1": 1.0, "alg0": 1.0, "alg3": 1.5, "alg2": 1.5, "alg4": 2.0, "alg5": 2.0}


def test_mean_ranks_parallel_matches_serial(table3_data):
    serial = mean_ranks(TABLE3_ORDER, table3_data)
    threaded = mean_ranks(TABLE3_ORDER, table3_data, workers=4)
    assert serial.sequences == threaded.sequences
    assert serial.mean_rank == threaded.mean_rank


def test_mean_ranks_requires_headline(table3_data):
    with pytest.raises(ValueError, match="headline"):
        mean_ranks(TABLE3_ORDER, table3_data, FAST_RANGES)
    table = mean_ranks(TABLE3_ORDER, table3_data, FAST_RANGES, headline=FAST_HEADLINE_RANGE)
    assert table.headline_range == FAST_HEADLINE_RANGE


def test_parse_ranges():
    assert parse_ranges("default") == (DEFAULT_RANGES, HEADLINE_RANGE)
    assert parse_ranges("fast") == (FAST_RANGES, FAST_HEADLINE_RANGE)
    rs, head = parse_ranges("10,90; 25,75")
    assert rs == (QuantileRange(10, 90), QuantileRange(25, 75)) and head == HEADLINE_RANGE
    rs, head = parse_ranges("5,50;20,40")
    assert head == QuantileRange(5, 50)
    for bad in ["", "5", "5,50,60", "60,40", "a,b"]:
        with pytest.raises(ValueError):
            parse_ranges(bad)


# ---- properties over random measurement data -------------------------------------------

sample_lists = st.lists(st.integers(min_value=1, max_value=40), min_size=1, max_size=8)
datasets = st.lists(sample_lists, min_size=1, max_size=7)
range_st = st.sampled_from(DEFAULT_RANGES + FAST_RANGES)


def build(data_lists):
    return {f"a{i}": MeasurementSet(f"a{i}", [float(x) for x in xs]) for i, xs in enumerate(data_lists)}


@settings(max_examples=300)
@given(datasets, range_st, st.randoms(use_true_random=False))
def test_sort_properties(lists, r, rnd):
    data = build(lists)
    order = list(data)
    rnd.shuffle(order)
    seq = sort_algs(order, data, r)
    seq.validate()
    assert sorted(seq.ids) == sorted(order)
    check_fixed_point(seq, data, r)


@settings(max_examples=200)
@given(datasets, range_st, st.integers(-6, 6))
def test_sort_scale_invariant(lists, r, e):
    data = build(lists)
    scaled = {a: m.scaled(2.0**e) for a, m in data.items()}
    assert sort_algs(list(data), data, r) == sort_algs(list(data), scaled, r)


@given(sample_lists, sample_lists, range_st)
def test_two_algorithms(a, b, r):
    data = build([a, b])
    out = compare(data["a0"], data["a1"], r)
    seq = sort_algs(["a0", "a1"], data, r)
    if out is Outcome.EQUIVALENT:
        assert seq.ranks == [1, 1]
    else:
        assert seq.ranks == [1, 2]
        assert seq.ids[0] == ("a0" if out is Outcome.FASTER else "a1")
