"""Measurement sources: recorded timings, seeded synthetic mixtures, external commands."""

from __future__ import annotations

import math
import shlex
import subprocess
import time
from dataclasses import dataclass
from typing import Hashable, Mapping, Sequence

import numpy as np

from ..driver import MeasurementError, SourceExhausted

AlgId = Hashable

MIN_SAMPLE = 1e-9  # floor for synthetic draws, seconds


class ConfigError(ValueError):
    """Invalid synthetic mixture or algorithm configuration."""


class ReplaySource:
    """Serves recorded samples per algorithm, in order, batch after batch."""

    def __init__(self, table: Mapping[AlgId, Sequence[float]]):
        self.table = {a: [float(t) for t in ts] for a, ts in table.items()}
        self._pos = {a: 0 for a in self.table}

    def available(self, alg_id: AlgId) -> int:
        return len(self.table[alg_id]) - self._pos[alg_id]

    def next_batch(self, alg_id: AlgId, m: int) -> list[float]:
        if alg_id not in self.table:
            raise MeasurementError(f"no recorded timings for {alg_id!r}")
        start = self._pos[alg_id]
        if start + m > len(self.table[alg_id]):
            raise SourceExhausted(
                f"{alg_id!r}: requested {m} samples but only {self.available(alg_id)} remain"
            )
        self._pos[alg_id] = start + m
        return self.table[alg_id][start : start + m]


@dataclass(frozen=True)
class Component:
    """One mode of a timing distribution: normal with ``location`` and ``spread`` (seconds)."""

    weight: float
    location: float
    spread: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.weight) and self.weight > 0):
            raise ConfigError(f"component weight must be > 0, got {self.weight}")
        if not (math.isfinite(self.location) and self.location > 0):
            raise ConfigError(f"component location must be > 0, got {self.location}")
        if not (math.isfinite(self.spread) and self.spread >= 0):
            raise ConfigError(f"component spread must be >= 0, got {self.spread}")


def _as_components(spec) -> list[Component]:
    comps = []
    for c in spec:
        if isinstance(c, Component):
            comps.append(c)
        elif isinstance(c, Mapping):
            try:
                comps.append(Component(float(c["weight"]), float(c["location"]), float(c.get("spread", 0.0))))
            except KeyError as exc:
                raise ConfigError(f"mixture component is missing {exc.args[0]!r}: {dict(c)}") from None
        else:
            comps.append(Component(*(float(v) for v in c)))
    if not comps:
        raise ConfigError("an algorithm needs at least one mixture component")
    total = sum(c.weight for c in comps)
    if not math.isclose(total, 1.0, rel_tol=0, abs_tol=1e-9):
        raise ConfigError(f"mixture weights sum to {total}, expected 1")
    return comps


class SyntheticSource:
    """Draws from per-algorithm normal mixtures, deterministic under ``seed``.

    Every algorithm owns an independent random stream, so the samples an
    algorithm receives do not depend on the order in which batches are requested.
    """

    def __init__(self, mixtures: Mapping[AlgId, Sequence], seed: int = 0):
        self.mixtures = {a: _as_components(spec) for a, spec in mixtures.items()}
        self.seed = seed
        self._rngs = {
            a: np.random.default_rng(np.random.SeedSequence([seed, i]))
            for i, a in enumerate(self.mixtures)
        }

    def next_batch(self, alg_id: AlgId, m: int) -> list[float]:
        try:
            comps = self.mixtures[alg_id]
        except KeyError:
            raise MeasurementError(f"no mixture configured for {alg_id!r}") from None
        rng = self._rngs[alg_id]
        weights = np.array([c.weight for c in comps])
        picks = rng.choice(len(comps), size=m, p=weights / weights.sum())
        loc = np.array([comps[k].location for k in picks])
        spread = np.array([comps[k].spread for k in picks])
        draws = loc + spread * rng.standard_normal(m)
        return [max(float(t), MIN_SAMPLE) for t in draws]


def _argv(command: str | Sequence[str]) -> list[str]:
    return shlex.split(command) if isinstance(command, str) else list(command)


def run_external(
    command: str | Sequence[str],
    warmup: int = 1,
    m: int = 1,
    timeout: float | None = None,
    *,
    do_warmup: bool = True,
) -> list[float]:
    """Run ``command`` ``warmup`` times untimed, then ``m`` times timed (monotonic wall clock).

    Each timed run is one process spawn measured with :func:`time.perf_counter`.
    """
    argv = _argv(command)
    if not argv:
        raise MeasurementError("empty command")

    def run_once() -> float:
        start = time.perf_counter()
        try:
            proc = subprocess.run(argv, stdout=subprocess.DEVNULL, stderr=subprocess.PIPE, timeout=timeout)
        except FileNotFoundError as exc:
            raise MeasurementError(f"cannot spawn {argv[0]!r}: {exc.strerror}") from exc
        except PermissionError as exc:
            raise MeasurementError(f"cannot spawn {argv[0]!r}: {exc.strerror}") from exc
        except subprocess.TimeoutExpired as exc:
            raise MeasurementError(f"{shlex.join(argv)!r} timed out after {timeout} s") from exc
        elapsed = time.perf_counter() - start
        if proc.returncode != 0:
            err = proc.stderr.decode(errors="replace").strip()
            raise MeasurementError(
                f"{shlex.join(argv)!r} exited with status {proc.returncode}" + (f": {err}" if err else "")
            )
        return elapsed

    if do_warmup:
        for _ in range(warmup):
            run_once()
    return [run_once() for _ in range(m)]


class CommandSource:
    """Times external commands; the warm-up runs once per algorithm, before its first batch."""

    def __init__(self, commands: Mapping[AlgId, str | Sequence[str]], warmup: int = 1, timeout: float | None = None):
        self.commands = dict(commands)
        self.warmup = warmup
        self.timeout = timeout
        self._warm: set[AlgId] = set()

    def next_batch(self, alg_id: AlgId, m: int) -> list[float]:
        try:
            command = self.commands[alg_id]
        except KeyError:
            raise MeasurementError(f"no command configured for {alg_id!r}") from None
        first = alg_id not in self._warm
        times = run_external(command, self.warmup, m, self.timeout, do_warmup=first)
        self._warm.add(alg_id)
        return times
