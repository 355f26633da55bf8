"""JSON campaign report: construction, schema and byte-stable serialization."""

from __future__ import annotations

import datetime as _dt
import json
from pathlib import Path
from typing import Any, TextIO

import jsonschema

from ..chain import relative_flops
from .campaign import CampaignResult

REPORT_VERSION = 1

_ranked_entry = {
    "type": "object",
    "required": ["id", "rank"],
    "properties": {"id": {"type": "string"}, "rank": {"type": "integer", "minimum": 1}},
}
_nullable_num = {"type": ["number", "null"]}

REPORT_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["version", "instance", "algorithms", "sequence", "iterations", "converged", "verdict", "config"],
    "properties": {
        "version": {"const": REPORT_VERSION},
        "instance": {},
        "algorithms": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "flops", "rf", "shortlisted", "rank_q25_75", "mean_rank", "mean_rank_display"],
                "properties": {
                    "id": {"type": "string"},
                    "flops": {"type": ["integer", "null"], "minimum": 0},
                    "rf": _nullable_num,
                    "single_run_seconds": _nullable_num,
                    "shortlisted": {"type": "boolean"},
                    "rank_q25_75": {"type": ["integer", "null"], "minimum": 1},
                    "mean_rank": _nullable_num,
                    "mean_rank_display": {"type": ["string", "null"]},
                },
            },
        },
        "sequence": {"type": "array", "minItems": 1, "items": _ranked_entry},
        "initial_order": {"type": "array", "items": {"type": "string"}},
        "iterations": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["n_measurements", "norm", "sequence", "ranks", "mean_ranks"],
                "properties": {
                    "n_measurements": {"type": "integer", "minimum": 1},
                    "norm": {"type": "number", "minimum": 0},
                    "sequence": {"type": "array", "items": {"type": "string"}},
                    "ranks": {"type": "array", "items": {"type": "integer", "minimum": 1}},
                    "mean_ranks": {"type": "array", "items": {"type": "number"}},
                },
            },
        },
        "converged": {"type": "boolean"},
        "warning": {"type": ["string", "null"]},
        "norm_divisor": {"type": "integer", "minimum": 1},
        "verdict": {
            "oneOf": [
                {"type": "null"},
                {
                    "type": "object",
                    "required": ["kind", "min_flops", "evidence"],
                    "properties": {
                        "kind": {"enum": ["FlopsValid", "AnomalyOutsideMinFlops", "AnomalyWithinMinFlops"]},
                        "min_flops": {"type": "array", "minItems": 1, "items": {"type": "string"}},
                        "evidence": {"type": "array"},
                    },
                },
            ]
        },
        "config": {
            "type": "object",
            "required": ["M", "eps", "max", "quantile_set", "seed", "rt_threshold"],
            "properties": {
                "M": {"type": "integer", "minimum": 1},
                "eps": {"type": "number", "exclusiveMinimum": 0},
                "max": {"type": "integer", "minimum": 1},
                "quantile_set": {"type": "array", "items": {"type": "array", "minItems": 2, "maxItems": 2}},
                "headline_range": {"type": "array", "minItems": 2, "maxItems": 2},
                "seed": {"type": "integer"},
                "rt_threshold": {"type": "number"},
                "warmup": {"type": "integer", "minimum": 0},
            },
        },
        "clock": {"type": ["object", "null"]},
    },
}


def _num(x: float) -> float | int:
    # integral percentiles print as ints so "25" stays "25" in the report
    return int(x) if float(x).is_integer() else x


def build_report(result: CampaignResult, *, timestamp: bool = False) -> dict[str, Any]:
    """Assemble the report dictionary for a finished campaign."""
    state, table, cfg = result.state, result.table, result.config
    if not state.history:
        raise ValueError("cannot report a campaign without any iteration")
    headline = table.headline.as_dict()
    flops = {a.id: a.flops for a in result.algorithms}
    rf: dict[str, float | None] = dict.fromkeys(flops)
    if all(f is not None for f in flops.values()) and min(flops.values()) > 0:
        rf = dict(zip(flops, relative_flops(list(flops.values()))))

    algorithms = []
    for a in result.algorithms:
        mr = table.mean_rank.get(a.id)
        algorithms.append(
            {
                "id": str(a.id),
                "flops": a.flops,
                "rf": rf[a.id],
                "single_run_seconds": None if result.single_run is None else result.single_run.get(a.id),
                "shortlisted": a.id in result.candidates,
                "rank_q25_75": headline.get(a.id),
                "mean_rank": mr,
                "mean_rank_display": None if mr is None else f"{mr:.2f}",
            }
        )

    verdict = None
    if result.verdict is not None:
        v = result.verdict
        verdict = {
            "kind": v.kind.value,
            "min_flops": [str(a) for a in v.min_flops],
            "evidence": [
                {"id": str(e.alg_id), "rank": e.rank, "flops": e.flops, "rf": e.rf, "mean_rank": e.mean_rank}
                for e in v.evidence
            ],
        }

    report: dict[str, Any] = {
        "version": REPORT_VERSION,
        "instance": result.instance,
        "algorithms": algorithms,
        "sequence": [{"id": str(a), "rank": r} for a, r in table.headline.entries],
        "initial_order": [str(a) for a in result.initial_order],
        "iterations": [
            {
                "n_measurements": h.n_measurements,
                "norm": h.norm,
                "sequence": [str(a) for a in h.sequence],
                "ranks": h.ranks,
                "mean_ranks": h.mean_ranks,
            }
            for h in state.history
        ],
        "converged": state.converged,
        "warning": state.warning,
        "norm_divisor": state.p,
        "verdict": verdict,
        "config": {
            "M": cfg.batch,
            "eps": cfg.eps,
            "max": cfg.max_measurements,
            "quantile_set": [[_num(r.lower), _num(r.upper)] for r in cfg.ranges],
            "headline_range": [_num(cfg.headline.lower), _num(cfg.headline.upper)],
            "seed": cfg.seed,
            "rt_threshold": cfg.rt_threshold,
            "warmup": cfg.warmup,
        },
        "clock": result.clock,
    }
    if timestamp:
        report["generated_at"] = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    return report


def validate_report(report: dict[str, Any]) -> None:
    """Schema check plus the ranking invariants on the reported sequence."""
    jsonschema.validate(report, REPORT_SCHEMA)
    ranks = [e["rank"] for e in report["sequence"]]
    if ranks[0] != 1 or any(b not in (a, a + 1) for a, b in zip(ranks, ranks[1:])):
        raise jsonschema.ValidationError(f"sequence ranks are not contiguous and non-decreasing: {ranks}")


def dumps_report(report: dict[str, Any]) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def emit_report(result: CampaignResult, dest: str | Path | TextIO, *, timestamp: bool = False) -> dict[str, Any]:
    """Validate and write the report for ``result`` to a path or an open text stream."""
    report = build_report(result, timestamp=timestamp)
    validate_report(report)
    text = dumps_report(report)
    if isinstance(dest, (str, Path)):
        Path(dest).write_text(text, encoding="utf-8")
    else:
        dest.write(text)
    return report
