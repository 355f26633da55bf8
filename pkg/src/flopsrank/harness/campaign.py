"""End-to-end campaign: single-run hypothesis, shortlist, measure-and-rank, verdict."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Mapping, Sequence

from ..chain import DEFAULT_RT_THRESHOLD, shortlist
from ..driver import DEFAULT_BATCH, DEFAULT_EPS, DEFAULT_MAX, ConvergenceState, MeasurementSource, measure_and_rank
from ..ranker import MeanRankTable, parse_ranges
from ..stats import QuantileRange
from ..verdict import Verdict, classify
from .files import AlgorithmSpec

AlgId = Hashable


@dataclass
class CampaignConfig:
    batch: int = DEFAULT_BATCH
    eps: float = DEFAULT_EPS
    max_measurements: int = DEFAULT_MAX
    quantiles: str = "default"
    rt_threshold: float = DEFAULT_RT_THRESHOLD
    warmup: int = 1
    seed: int = 0
    interleave: bool = True

    @property
    def ranges(self) -> tuple[QuantileRange, ...]:
        return parse_ranges(self.quantiles)[0]

    @property
    def headline(self) -> QuantileRange:
        return parse_ranges(self.quantiles)[1]


@dataclass
class CampaignResult:
    algorithms: list[AlgorithmSpec]
    candidates: list[AlgId]
    initial_order: list[AlgId]
    table: MeanRankTable
    state: ConvergenceState
    verdict: Verdict | None
    config: CampaignConfig
    single_run: dict[AlgId, float] | None = None
    instance: object = None
    clock: dict | None = field(default=None)


def initial_hypothesis(single_run_times: Mapping[AlgId, float], ids: Sequence[AlgId] | None = None) -> list[AlgId]:
    """Order ``ids`` by increasing single-run time; ties keep their given order."""
    ids = list(single_run_times) if ids is None else list(ids)
    return sorted(ids, key=lambda a: single_run_times[a])


def run_campaign(
    algorithms: Sequence[AlgorithmSpec],
    source: MeasurementSource,
    config: CampaignConfig | None = None,
    *,
    single_run: Mapping[AlgId, float] | None = None,
    instance: object = None,
    clock: dict | None = None,
) -> CampaignResult:
    """Rank ``algorithms`` and, when every one has a FLOP count, classify the instance.

    With ``single_run`` times the candidates are shortlisted (if FLOPs are
    known) and the initial order follows those times; otherwise every
    algorithm is measured, starting from the given order.
    """
    config = config or CampaignConfig()
    algorithms = list(algorithms)
    ids = [a.id for a in algorithms]
    if len(set(ids)) != len(ids):
        raise ValueError(f"duplicate algorithm ids: {ids}")
    flops = {a.id: a.flops for a in algorithms if a.flops is not None}
    have_flops = len(flops) == len(ids)

    if single_run is not None:
        candidates = shortlist(flops, single_run, config.rt_threshold) if have_flops else ids
        order0 = initial_hypothesis(single_run, candidates)
    else:
        candidates = ids
        order0 = ids

    table, state = measure_and_rank(
        order0,
        source,
        config.batch,
        config.eps,
        config.max_measurements,
        config.ranges,
        headline=config.headline,
        seed=config.seed,
        interleave=config.interleave,
    )
    verdict = None
    if have_flops:
        verdict = classify(table.headline, {a: flops[a] for a in candidates}, table.mean_rank)
    return CampaignResult(
        algorithms,
        list(candidates),
        list(order0),
        table,
        state,
        verdict,
        config,
        None if single_run is None else dict(single_run),
        instance,
        clock,
    )
