"""Timings CSV, mixture spec and command manifest formats."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Hashable, Iterable, Mapping, Sequence

from .sources import ConfigError, _as_components

CSV_HEADER = ("algorithm", "run_index", "time_seconds")


class TimingsFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


@dataclass
class AlgorithmSpec:
    """An algorithm in a campaign: its id, FLOP count and how to measure it."""

    id: str
    flops: int | None = None
    command: str | list[str] | None = None

    def __post_init__(self) -> None:
        if self.flops is not None:
            if isinstance(self.flops, bool) or int(self.flops) != self.flops or self.flops < 0:
                raise ConfigError(f"{self.id}: flops must be a nonnegative integer, got {self.flops!r}")
            self.flops = int(self.flops)


def read_timings(path: str | Path) -> dict[str, list[float]]:
    """Read ``algorithm,run_index,time_seconds`` rows, grouped by algorithm and ordered by run index."""
    with open(path, newline="", encoding="utf-8") as fh:
        return parse_timings(fh)


def parse_timings(fh: Iterable[str]) -> dict[str, list[float]]:
    reader = csv.reader(fh)
    try:
        header = next(reader)
    except StopIteration:
        raise TimingsFormatError("empty file", 1) from None
    if tuple(h.strip() for h in header) != CSV_HEADER:
        raise TimingsFormatError(f"unknown header {header!r}, expected {','.join(CSV_HEADER)}", 1)
    rows: dict[str, list[tuple[int, float]]] = {}
    seen: dict[str, set[int]] = {}
    for row in reader:
        line = reader.line_num
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 3:
            raise TimingsFormatError(f"expected 3 fields, got {len(row)}", line)
        alg, idx_s, t_s = (c.strip() for c in row)
        if not alg:
            raise TimingsFormatError("empty algorithm id", line)
        try:
            idx = int(idx_s)
        except ValueError:
            raise TimingsFormatError(f"run_index {idx_s!r} is not an integer", line) from None
        try:
            t = float(t_s)
        except ValueError:
            raise TimingsFormatError(f"time_seconds {t_s!r} is not a number", line) from None
        if not (math.isfinite(t) and t > 0):
            raise TimingsFormatError(f"time_seconds must be positive and finite, got {t_s}", line)
        if idx in seen.setdefault(alg, set()):
            raise TimingsFormatError(f"duplicate run_index {idx} for {alg!r}", line)
        seen[alg].add(idx)
        rows.setdefault(alg, []).append((idx, t))
    return {alg: [t for _, t in sorted(samples)] for alg, samples in rows.items()}


def format_timings(table: Mapping[Hashable, Sequence[float]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for alg, samples in table.items():
        for i, t in enumerate(samples):
            writer.writerow([alg, i, repr(float(t))])
    return buf.getvalue()


def write_timings(table: Mapping[Hashable, Sequence[float]], path: str | Path) -> None:
    Path(path).write_text(format_timings(table), encoding="utf-8")


def _load_json(path: str | Path) -> dict:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: expected a JSON object at top level")
    return doc


def load_mixtures(path: str | Path) -> dict[str, list]:
    """Mixture spec: ``{"algorithms": {id: [{"weight", "location", "spread"}, ...]}}``."""
    doc = _load_json(path)
    algs = doc.get("algorithms")
    if not isinstance(algs, dict) or not algs:
        raise ConfigError(f"{path}: 'algorithms' must map ids to mixture component lists")
    return {str(a): _as_components(comps) for a, comps in algs.items()}


def load_manifest(path: str | Path) -> tuple[list[AlgorithmSpec], object]:
    """Command manifest: ``{"instance": ..., "algorithms": [{"id", "flops", "command"}]}``."""
    doc = _load_json(path)
    entries = doc.get("algorithms")
    if not isinstance(entries, list) or not entries:
        raise ConfigError(f"{path}: 'algorithms' must be a non-empty list")
    specs = []
    for e in entries:
        if not isinstance(e, dict) or "id" not in e:
            raise ConfigError(f"{path}: every algorithm needs an 'id': {e!r}")
        if not e.get("command"):
            raise ConfigError(f"{path}: algorithm {e['id']!r} has no command")
        specs.append(AlgorithmSpec(str(e["id"]), e.get("flops"), e["command"]))
    ids = [s.id for s in specs]
    if len(set(ids)) != len(ids):
        raise ConfigError(f"{path}: duplicate algorithm ids")
    return specs, doc.get("instance")


def load_flops(path: str | Path) -> dict[str, int]:
    """FLOP counts: a JSON object mapping algorithm id to an integer count."""
    doc = _load_json(path)
    return {str(a): AlgorithmSpec(str(a), f).flops for a, f in doc.items()}
