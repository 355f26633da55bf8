"""Measurement storage and quantile estimation."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Hashable, Iterable

import numpy as np


class NoMeasurementsError(ValueError):
    """Raised when a statistic is requested from an empty measurement set."""

    def __init__(self, alg_id: Hashable | None = None):
        msg = "no measurements"
        if alg_id is not None:
            msg += f" for {alg_id!r}"
        super().__init__(msg)
        self.alg_id = alg_id


@dataclass
class MeasurementSet:
    """Execution times (seconds) of one algorithm, in insertion order."""

    alg_id: Hashable
    samples: list[float] = field(default_factory=list)

    def __post_init__(self) -> None:
        samples = list(self.samples)
        self.samples = []
        self.extend(samples)

    def append(self, t: float) -> None:
        t = float(t)
        if not (math.isfinite(t) and t > 0):
            raise ValueError(f"sample for {self.alg_id!r} must be positive and finite, got {t!r}")
        self.samples.append(t)

    def extend(self, ts: Iterable[float]) -> None:
        for t in ts:
            self.append(t)

    def count(self) -> int:
        return len(self.samples)

    def __len__(self) -> int:
        return len(self.samples)

    def scaled(self, c: float) -> MeasurementSet:
        return MeasurementSet(self.alg_id, [c * t for t in self.samples])

    def shifted(self, d: float) -> MeasurementSet:
        return MeasurementSet(self.alg_id, [t + d for t in self.samples])


@dataclass(frozen=True, order=True)
class QuantileRange:
    """A ``(lower, upper)`` pair of percentiles with ``0 < lower < upper < 100``."""

    lower: float
    upper: float

    def __post_init__(self) -> None:
        if not (0 < self.lower < 100 and 0 < self.upper < 100):
            raise ValueError(f"quantiles must lie in (0, 100), got ({self.lower}, {self.upper})")
        if not self.upper > self.lower:
            raise ValueError(f"upper quantile must exceed lower, got ({self.lower}, {self.upper})")

    def __str__(self) -> str:
        return f"({self.lower:g},{self.upper:g})"

    def as_list(self) -> list[float]:
        return [self.lower, self.upper]


def _samples_of(data: MeasurementSet | Iterable[float]) -> list[float]:
    if isinstance(data, MeasurementSet):
        if not data.samples:
            raise NoMeasurementsError(data.alg_id)
        return data.samples
    samples = list(data)
    if not samples:
        raise NoMeasurementsError()
    return samples


def quantile(data: MeasurementSet | Iterable[float], q: float) -> float:
    """Percentile ``q`` (0..100) by linear interpolation between order statistics.

    With sorted samples ``s`` and ``h = (n - 1) * q / 100`` the result is
    ``s[floor(h)] + (h - floor(h)) * (s[floor(h) + 1] - s[floor(h)])``.
    """
    if not 0 <= q <= 100:
        raise ValueError(f"q must lie in [0, 100], got {q!r}")
    s = sorted(_samples_of(data))
    n = len(s)
    if n == 1:
        return s[0]
    h = (n - 1) * q / 100.0
    lo = math.floor(h)
    if lo >= n - 1:
        return s[-1]
    frac = h - lo
    return s[lo] + frac * (s[lo + 1] - s[lo])


def quantile_pair(data: MeasurementSet | Iterable[float], r: QuantileRange) -> tuple[float, float]:
    """``(quantile(data, r.lower), quantile(data, r.upper))``."""
    samples = _samples_of(data)
    return quantile(samples, r.lower), quantile(samples, r.upper)


def shuffle(data: MeasurementSet, rng: np.random.Generator | int | None = None) -> MeasurementSet:
    """Return a copy of ``data`` with samples permuted by a seeded Fisher-Yates shuffle."""
    rng = np.random.default_rng(rng)
    samples = list(data.samples)
    # Fisher-Yates, drawing from the generator so the permutation is reproducible
    for i in range(len(samples) - 1, 0, -1):
        j = int(rng.integers(0, i + 1))
        samples[i], samples[j] = samples[j], samples[i]
    return MeasurementSet(data.alg_id, samples)
