"""Is the FLOP count a valid discriminant for a ranked instance?"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Hashable, Mapping

from .chain import relative_flops
from .ranker import RankedSequence

AlgId = Hashable


class VerdictKind(enum.Enum):
    FLOPS_VALID = "FlopsValid"
    # no minimum-FLOP algorithm reaches the best class
    ANOMALY_OUTSIDE_MIN_FLOPS = "AnomalyOutsideMinFlops"
    # minimum-FLOP algorithms split across classes
    ANOMALY_WITHIN_MIN_FLOPS = "AnomalyWithinMinFlops"

    @property
    def is_anomaly(self) -> bool:
        return self is not VerdictKind.FLOPS_VALID


@dataclass
class Evidence:
    alg_id: AlgId
    rank: int
    flops: int
    rf: float | None
    mean_rank: float | None = None


@dataclass
class Verdict:
    kind: VerdictKind
    min_flops: list[AlgId]
    evidence: list[Evidence] = field(default_factory=list)

    @property
    def is_anomaly(self) -> bool:
        return self.kind.is_anomaly


def classify(
    ranking: RankedSequence,
    flops: Mapping[AlgId, int],
    mean_rank: Mapping[AlgId, float] | None = None,
) -> Verdict:
    """Classify a final ranking against FLOP counts.

    The minimum-FLOP set must contain a rank-1 algorithm, otherwise some
    costlier algorithm is noticeably faster than all of them. Failing that
    check first, it must then sit entirely in rank 1, otherwise picking any
    of the cheapest algorithms at random is not safe. FLOP ties are exact.
    """
    missing = [a for a in ranking.ids if a not in flops]
    if missing:
        raise ValueError(f"no FLOP count for ranked algorithms {missing}")
    ranks = ranking.as_dict()
    fmin = min(flops[a] for a in ranks)
    s_f = [a for a in ranking.ids if flops[a] == fmin]
    unranked = [a for a, f in flops.items() if f < fmin]
    if unranked:
        raise ValueError(f"algorithms {unranked} have fewer FLOPs than any ranked algorithm but are not ranked")

    best = [ranks[a] == 1 for a in s_f]
    if all(best):
        kind = VerdictKind.FLOPS_VALID
    elif not any(best):
        kind = VerdictKind.ANOMALY_OUTSIDE_MIN_FLOPS
    else:
        kind = VerdictKind.ANOMALY_WITHIN_MIN_FLOPS

    if fmin > 0:
        rf = dict(zip(ranking.ids, relative_flops([flops[a] for a in ranking.ids])))
    else:
        rf = dict.fromkeys(ranking.ids)
    evidence = [
        Evidence(a, ranks[a], int(flops[a]), rf[a], None if mean_rank is None else mean_rank.get(a))
        for a in ranking.ids
    ]
    return Verdict(kind, s_f, evidence)
