"""Rank mathematically equivalent algorithms into performance classes from
repeated timings, and test whether FLOP counts pick the fastest ones."""

from .chain import (
    AlgorithmVariant,
    ChainInstance,
    chain_cost,
    enumerate_variants,
    optimal_cost,
    relative_flops,
    relative_time,
    shortlist,
)
from .comparator import Outcome, compare
from .driver import (
    CampaignError,
    ConvergenceState,
    MeasurementError,
    SourceExhausted,
    convergence_norm,
    measure_and_rank,
    rank_delta,
)
from .ranker import (
    DEFAULT_RANGES,
    FAST_RANGES,
    HEADLINE_RANGE,
    MeanRankTable,
    RankedSequence,
    RankingError,
    mean_ranks,
    sort_algs,
)
from .stats import MeasurementSet, NoMeasurementsError, QuantileRange, quantile, shuffle
from .verdict import Verdict, VerdictKind, classify

__version__ = "0.1.0"
