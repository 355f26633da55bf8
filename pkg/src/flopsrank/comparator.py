"""Three-way comparison of two timing distributions over a quantile range."""

from __future__ import annotations

import enum

from .stats import MeasurementSet, QuantileRange, quantile_pair


class Outcome(enum.Enum):
    """Result of ``compare(a, b, r)`` read from the point of view of ``a``."""

    FASTER = "faster"
    SLOWER = "slower"
    EQUIVALENT = "equivalent"

    def flipped(self) -> Outcome:
        if self is Outcome.FASTER:
            return Outcome.SLOWER
        if self is Outcome.SLOWER:
            return Outcome.FASTER
        return self


def compare_bounds(a: tuple[float, float], b: tuple[float, float]) -> Outcome:
    """Compare precomputed ``(low, up)`` quantile pairs.

    Ties on the boundary count as equivalent since both tests are strict.
    """
    a_low, a_up = a
    b_low, b_up = b
    if a_up < b_low:
        return Outcome.FASTER
    if b_up < a_low:
        return Outcome.SLOWER
    return Outcome.EQUIVALENT


def compare(a: MeasurementSet, b: MeasurementSet, r: QuantileRange) -> Outcome:
    """Is ``a`` faster than, slower than, or equivalent to ``b`` on range ``r``?

    ``a`` is faster when its upper quantile lies strictly below the lower
    quantile of ``b``, and slower in the mirrored case. Anything else, i.e.
    overlapping or touching inter-quantile intervals, is equivalent.
    """
    return compare_bounds(quantile_pair(a, r), quantile_pair(b, r))
