"""Sorting algorithms into performance classes and averaging ranks over quantile ranges.

The sort is a bubble sort driven by the three-way comparison. Ranks live on
positions, not on algorithms: a swap moves algorithms while the rank vector
stays put, and the rank vector is only changed by two rules,

* right-hand algorithm faster and both ranks equal: split the class by
  incrementing every rank from the right-hand position onwards;
* equivalent and ranks differ: merge by decrementing every rank from the
  right-hand position onwards.

After the shrinking bubble passes, full passes are repeated until one makes
no change, which makes the result a fixed point of the update rules.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Hashable, Mapping, Sequence

from .comparator import Outcome, compare_bounds
from .stats import MeasurementSet, QuantileRange, quantile_pair

AlgId = Hashable
PairComparator = Callable[[AlgId, AlgId], Outcome]

HEADLINE_RANGE = QuantileRange(25, 75)

# fmt: off
DEFAULT_RANGES: tuple[QuantileRange, ...] = tuple(
    QuantileRange(lo, hi)
    for lo, hi in [(5, 95), (10, 90), (15, 85), (20, 80), (25, 75), (30, 70), (35, 65)]
)
# left part of the distribution only, for processors that switch frequency modes
FAST_RANGES: tuple[QuantileRange, ...] = tuple(
    QuantileRange(lo, hi) for lo, hi in [(5, 50), (15, 45), (20, 40), (25, 35)]
)
# fmt: on
FAST_HEADLINE_RANGE = QuantileRange(25, 35)

PRESETS: dict[str, tuple[tuple[QuantileRange, ...], QuantileRange]] = {
    "default": (DEFAULT_RANGES, HEADLINE_RANGE),
    "fast": (FAST_RANGES, FAST_HEADLINE_RANGE),
}


class RankingError(RuntimeError):
    """The sort produced an invalid rank vector or failed to settle."""


def parse_ranges(text: str) -> tuple[tuple[QuantileRange, ...], QuantileRange]:
    """Parse ``default``, ``fast`` or ``l1,u1;l2,u2;...`` into ``(ranges, headline)``.

    For an explicit list the headline is (25,75) when listed, else the first range.
    """
    text = text.strip()
    if text in PRESETS:
        return PRESETS[text]
    ranges = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        try:
            lo, hi = (float(x) for x in part.split(","))
        except ValueError:
            raise ValueError(f"bad quantile range {part!r}, expected 'lower,upper'") from None
        ranges.append(QuantileRange(lo, hi))
    if not ranges:
        raise ValueError(f"no quantile ranges in {text!r}")
    headline = HEADLINE_RANGE if HEADLINE_RANGE in ranges else ranges[0]
    return tuple(ranges), headline


@dataclass(frozen=True)
class RankedSequence:
    """Algorithms in sorted order, each paired with its integer rank."""

    entries: tuple[tuple[AlgId, int], ...]

    @classmethod
    def from_lists(cls, ids: Sequence[AlgId], ranks: Sequence[int]) -> RankedSequence:
        if len(ids) != len(ranks):
            raise ValueError("ids and ranks differ in length")
        return cls(tuple(zip(ids, (int(r) for r in ranks))))

    @property
    def ids(self) -> list[AlgId]:
        return [a for a, _ in self.entries]

    @property
    def ranks(self) -> list[int]:
        return [r for _, r in self.entries]

    def rank_of(self, alg_id: AlgId) -> int:
        for a, r in self.entries:
            if a == alg_id:
                return r
        raise KeyError(alg_id)

    def as_dict(self) -> dict[AlgId, int]:
        return dict(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def validate(self) -> None:
        """Check ranks start at 1, never decrease and never skip a value."""
        ranks = self.ranks
        if not ranks:
            raise RankingError("empty ranking")
        if ranks[0] != 1:
            raise RankingError(f"first rank is {ranks[0]}, expected 1: {ranks}")
        for prev, cur in zip(ranks, ranks[1:]):
            if cur not in (prev, prev + 1):
                raise RankingError(f"ranks are not contiguous and non-decreasing: {ranks}")
        if len(set(self.ids)) != len(ranks):
            raise RankingError(f"duplicate algorithm ids in ranking: {self.ids}")


@dataclass
class SortStep:
    """One comparison inside ``sort_algs`` (recorded when a trace list is passed)."""

    pass_no: int
    position: int
    left: AlgId
    right: AlgId
    outcome: Outcome
    action: str
    order: tuple[AlgId, ...]
    ranks: tuple[int, ...]


def _quantile_comparator(
    data: Mapping[AlgId, MeasurementSet], ids: Sequence[AlgId], r: QuantileRange
) -> PairComparator:
    bounds = {a: quantile_pair(data[a], r) for a in ids}

    def cmp(left: AlgId, right: AlgId) -> Outcome:
        return compare_bounds(bounds[left], bounds[right])

    return cmp


def _bubble_pass(
    seq: list[AlgId],
    ranks: list[int],
    stop: int,
    cmp: PairComparator,
    pass_no: int,
    trace: list[SortStep] | None,
) -> bool:
    changed = False
    p = len(seq)
    for j in range(stop):
        left, right = seq[j], seq[j + 1]
        ret = cmp(left, right)
        action = "leave"
        if ret is Outcome.SLOWER:
            seq[j], seq[j + 1] = right, left
            changed = True
            action = "swap"
            if ranks[j + 1] == ranks[j]:
                for m in range(j + 1, p):
                    ranks[m] += 1
                action = "swap+split"
        elif ret is Outcome.EQUIVALENT:
            if ranks[j + 1] != ranks[j]:
                for m in range(j + 1, p):
                    ranks[m] -= 1
                changed = True
                action = "merge"
        if trace is not None:
            trace.append(SortStep(pass_no, j, left, right, ret, action, tuple(seq), tuple(ranks)))
    return changed


def sort_algs(
    order: Sequence[AlgId],
    data: Mapping[AlgId, MeasurementSet] | None,
    r: QuantileRange = HEADLINE_RANGE,
    *,
    comparator: PairComparator | None = None,
    trace: list[SortStep] | None = None,
    settle: bool = True,
) -> RankedSequence:
    """Sort ``order`` into performance classes on quantile range ``r``.

    ``comparator`` overrides the quantile comparison; it is called as
    ``comparator(left_id, right_id)`` and returns the outcome for ``left``.
    With ``settle=False`` only the shrinking bubble passes run.
    """
    seq = list(order)
    p = len(seq)
    if p == 0:
        raise ValueError("cannot rank an empty set of algorithms")
    if len(set(seq)) != p:
        raise ValueError(f"duplicate algorithm ids: {seq}")
    if comparator is None:
        if data is None:
            raise ValueError("either data or comparator is required")
        comparator = _quantile_comparator(data, seq, r)
    ranks = list(range(1, p + 1))

    for k in range(1, p + 1):
        _bubble_pass(seq, ranks, p - k, comparator, k, trace)

    if settle and p > 1:
        # the shrinking passes never revisit the tail; repeat full passes until stable
        limit = p * p + 1
        for extra in range(1, limit + 1):
            if not _bubble_pass(seq, ranks, p - 1, comparator, p + extra, trace):
                break
        else:
            raise RankingError(f"ranking did not settle after {limit} full passes: {seq} {ranks}")

    result = RankedSequence.from_lists(seq, ranks)
    result.validate()
    return result


@dataclass
class MeanRankTable:
    """Per-range rankings and the mean rank of every algorithm across them."""

    initial_order: tuple[AlgId, ...]
    ranges: tuple[QuantileRange, ...]
    sequences: tuple[RankedSequence, ...]
    mean_rank: dict[AlgId, float]
    headline_range: QuantileRange = HEADLINE_RANGE
    headline: RankedSequence = field(init=False)

    def __post_init__(self) -> None:
        self.headline = self.sequence_for(self.headline_range)

    def sequence_for(self, r: QuantileRange) -> RankedSequence:
        try:
            return self.sequences[self.ranges.index(r)]
        except ValueError:
            raise KeyError(f"range {r} was not ranked") from None

    def ordered_mean_ranks(self) -> list[float]:
        """Mean ranks listed in the order of the headline sequence."""
        return [self.mean_rank[a] for a in self.headline.ids]

    def rank_matrix(self) -> dict[AlgId, list[int]]:
        """Per algorithm, its rank on each range (in range order)."""
        per_range = [s.as_dict() for s in self.sequences]
        return {a: [d[a] for d in per_range] for a in self.headline.ids}


def mean_ranks(
    order: Sequence[AlgId],
    data: Mapping[AlgId, MeasurementSet],
    ranges: Sequence[QuantileRange] = DEFAULT_RANGES,
    *,
    headline: QuantileRange = HEADLINE_RANGE,
    workers: int | None = None,
) -> MeanRankTable:
    """Run :func:`sort_algs` once per range on the same data and average the ranks."""
    ranges = tuple(ranges)
    if not ranges:
        raise ValueError("at least one quantile range is required")
    if headline not in ranges:
        raise ValueError(f"headline range {headline} is not among the ranked ranges")
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            sequences = tuple(pool.map(lambda r: sort_algs(order, data, r), ranges))
    else:
        sequences = tuple(sort_algs(order, data, r) for r in ranges)
    totals = {a: 0 for a in order}
    for s in sequences:
        for a, rank in s.entries:
            totals[a] += rank
    mean = {a: totals[a] / len(ranges) for a in order}
    return MeanRankTable(tuple(order), ranges, sequences, mean, headline)
