"""Iterative measure-and-rank loop with mean-rank convergence detection."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Hashable, Protocol, Sequence

import numpy as np

from .ranker import DEFAULT_RANGES, HEADLINE_RANGE, MeanRankTable, mean_ranks
from .stats import MeasurementSet, QuantileRange, shuffle

logger = logging.getLogger(__name__)

AlgId = Hashable

DEFAULT_BATCH = 3
DEFAULT_EPS = 0.03
DEFAULT_MAX = 30


class MeasurementError(RuntimeError):
    """A measurement source could not deliver a batch."""


class SourceExhausted(MeasurementError):
    """A replay source ran out of recorded samples."""


class CampaignError(MeasurementError):
    """A campaign aborted; ``state`` holds the history collected so far."""

    def __init__(self, message: str, state: ConvergenceState):
        super().__init__(message)
        self.state = state


class MeasurementSource(Protocol):
    def next_batch(self, alg_id: AlgId, m: int) -> list[float]:
        """Return exactly ``m`` positive execution times for ``alg_id``."""
        ...


@dataclass
class IterationRecord:
    iteration: int
    n_measurements: int
    norm: float
    sequence: list[AlgId]
    ranks: list[int]
    mean_ranks: list[float]
    dx: list[float]


@dataclass
class ConvergenceState:
    p: int
    batch: int
    eps: float
    max_measurements: int
    iteration: int = 0
    n: int = 0
    x: list[float] = field(default_factory=list)
    dx: list[float] = field(default_factory=list)
    dy: list[float] = field(default_factory=list)
    norm: float = math.inf
    converged: bool = False
    warning: str | None = None
    history: list[IterationRecord] = field(default_factory=list)
    measurements: dict[AlgId, MeasurementSet] = field(default_factory=dict)


def rank_delta(x: Sequence[float]) -> list[float]:
    """Differences between adjacent mean ranks, ``x[j+1] - x[j]``."""
    return [b - a for a, b in zip(x, x[1:])]


def convergence_norm(
    dx: Sequence[float], dy: Sequence[float], p: int, divisor: float | None = None
) -> float:
    """L2 norm of ``dx - dy`` divided by the number of algorithms ``p``.

    ``divisor`` replaces ``p`` in the denominator when given.
    """
    if len(dx) != len(dy):
        raise ValueError(f"difference vectors differ in length: {len(dx)} != {len(dy)}")
    d = p if divisor is None else divisor
    if d <= 0:
        raise ValueError(f"divisor must be positive, got {d}")
    return math.sqrt(sum((a - b) ** 2 for a, b in zip(dx, dy))) / d


def _shuffle_seed(seed: int, iteration: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, iteration, index]))


def measure_and_rank(
    order0: Sequence[AlgId],
    source: MeasurementSource,
    batch: int = DEFAULT_BATCH,
    eps: float = DEFAULT_EPS,
    max_measurements: int = DEFAULT_MAX,
    ranges: Sequence[QuantileRange] = DEFAULT_RANGES,
    *,
    headline: QuantileRange = HEADLINE_RANGE,
    seed: int = 0,
    interleave: bool = True,
    on_iteration: Callable[[IterationRecord], None] | None = None,
) -> tuple[MeanRankTable, ConvergenceState]:
    """Measure in batches of ``batch`` until mean ranks settle or ``max_measurements`` is hit.

    Each iteration adds ``batch`` samples per algorithm, reshuffles every
    accumulated set, ranks on all ``ranges`` starting from the previous
    headline ordering, and stops once the change in adjacent mean-rank gaps
    drops below ``eps``. With ``interleave`` the order in which algorithms are
    measured is drawn afresh (seeded) every iteration.
    """
    order = list(order0)
    p = len(order)
    if p == 0:
        raise ValueError("no algorithms to measure")
    if len(set(order)) != p:
        raise ValueError(f"duplicate algorithm ids: {order}")
    if batch < 1:
        raise ValueError(f"batch size must be >= 1, got {batch}")
    if max_measurements < batch:
        raise ValueError(f"max ({max_measurements}) must be >= batch size ({batch})")
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")

    index = {a: i for i, a in enumerate(order)}
    data = {a: MeasurementSet(a) for a in order}
    state = ConvergenceState(p, batch, eps, max_measurements, dy=[1.0] * (p - 1), measurements=data)
    schedule_rng = np.random.default_rng(np.random.SeedSequence([seed, 0x5C4ED]))
    table: MeanRankTable | None = None

    while state.norm >= eps and state.n < max_measurements:
        state.iteration += 1
        schedule = list(order)
        if interleave:
            schedule = [schedule[i] for i in schedule_rng.permutation(p)]
        for a in schedule:
            try:
                times = list(source.next_batch(a, batch))
                if len(times) != batch:
                    raise MeasurementError(f"source returned {len(times)} samples for {a!r}, expected {batch}")
                data[a].extend(times)
            except Exception as exc:
                state.iteration -= 1
                raise CampaignError(f"measuring {a!r} failed: {exc}", state) from exc
        state.n += batch
        for a in order:
            data[a] = shuffle(data[a], _shuffle_seed(seed, state.iteration, index[a]))
        state.measurements = data

        table = mean_ranks(order, data, ranges, headline=headline)
        state.x = table.ordered_mean_ranks()
        state.dx = rank_delta(state.x)
        state.norm = convergence_norm(state.dx, state.dy, p)
        state.dy = state.dx
        order = table.headline.ids

        record = IterationRecord(
            state.iteration, state.n, state.norm, list(order), table.headline.ranks, list(state.x), list(state.dx)
        )
        state.history.append(record)
        logger.debug("iteration %d: N=%d norm=%.4g sequence=%s", record.iteration, record.n_measurements, record.norm, order)
        if on_iteration is not None:
            on_iteration(record)

    state.converged = state.norm < eps
    if not state.converged:
        state.warning = (
            f"not converged: norm {state.norm:.4g} >= eps {eps:g} after {state.n} measurements per algorithm"
        )
        logger.warning(state.warning)
    assert table is not None
    return table, state
