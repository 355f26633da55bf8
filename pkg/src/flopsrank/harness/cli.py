"""Command line interface: ``flopsrank {rank,measure,chain,synth}``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path
from typing import Sequence

from ..chain import ChainInstance, enumerate_variants, relative_flops
from ..driver import DEFAULT_BATCH, DEFAULT_EPS, DEFAULT_MAX, MeasurementError
from ..ranker import parse_ranges
from .campaign import CampaignConfig, CampaignResult, run_campaign
from .files import AlgorithmSpec, TimingsFormatError, format_timings, load_flops, load_manifest, load_mixtures, read_timings
from .report import emit_report
from .sources import CommandSource, ConfigError, ReplaySource, SyntheticSource, run_external

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_ANOMALY = 10

log = logging.getLogger("flopsrank")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--eps", type=float, default=DEFAULT_EPS, help="convergence threshold (default: %(default)s)")
    p.add_argument("--max", type=int, default=DEFAULT_MAX, dest="max_measurements",
                   help="maximum measurements per algorithm (default: %(default)s)")
    p.add_argument("--batch", "-M", type=int, default=DEFAULT_BATCH,
                   help="measurements added per algorithm each iteration (default: %(default)s)")
    p.add_argument("--quantiles", default="default",
                   help="'default', 'fast' or an explicit list 'l1,u1;l2,u2;...' (default: %(default)s)")
    p.add_argument("--rt-threshold", type=float, default=1.5,
                   help="relative single-run time below which costlier algorithms are kept (default: %(default)s)")
    p.add_argument("--warmup", type=int, default=1, help="untimed warm-up runs per algorithm (default: %(default)s)")
    p.add_argument("--seed", type=int, default=0, help="seed for shuffling and synthetic draws (default: %(default)s)")
    p.add_argument("--out", "-o", type=Path, help="write the JSON report (or CSV for synth) here instead of stdout")
    p.add_argument("--timestamp", action="store_true", help="embed a generation timestamp in the report")
    p.add_argument("-v", "--verbose", action="store_true")


def _config(args: argparse.Namespace) -> CampaignConfig:
    parse_ranges(args.quantiles)  # fail early on a bad range list
    return CampaignConfig(
        batch=args.batch,
        eps=args.eps,
        max_measurements=args.max_measurements,
        quantiles=args.quantiles,
        rt_threshold=args.rt_threshold,
        warmup=args.warmup,
        seed=args.seed,
    )


def _finish(result: CampaignResult, args: argparse.Namespace) -> int:
    if args.out is not None:
        emit_report(result, args.out, timestamp=args.timestamp)
        _print_summary(result)
    else:
        emit_report(result, sys.stdout, timestamp=args.timestamp)
    if result.state.warning:
        print(f"warning: {result.state.warning}", file=sys.stderr)
    if result.verdict is not None and result.verdict.is_anomaly:
        return EXIT_ANOMALY
    return EXIT_OK


def _print_summary(result: CampaignResult) -> None:
    table, state = result.table, result.state
    status = "converged" if state.converged else "not converged"
    print(f"{status} after {state.n} measurements per algorithm ({state.iteration} iterations, norm {state.norm:.4g})")
    print(f"{'algorithm':<16}{'rank':>6}{'mean rank':>11}")
    for a, r in table.headline.entries:
        print(f"{str(a):<16}{r:>6}{table.mean_rank[a]:>11.2f}")
    if result.verdict is not None:
        print(f"verdict: {result.verdict.kind.value} (minimum FLOPs: {', '.join(map(str, result.verdict.min_flops))})")


def _replay_campaign(
    timings: dict[str, list[float]],
    algorithms: list[AlgorithmSpec],
    config: CampaignConfig,
    instance: object,
) -> CampaignResult:
    ids = [a.id for a in algorithms]
    missing = [a for a in ids if a not in timings]
    if missing:
        raise ConfigError(f"no timings recorded for {missing}")
    # the first recorded sample stands in for the single run that orders the hypothesis
    single = {a: timings[a][0] for a in ids}
    return run_campaign(algorithms, ReplaySource(timings), config, single_run=single, instance=instance)


def cmd_rank(args: argparse.Namespace) -> int:
    config = _config(args)
    timings = read_timings(args.timings)
    flops = load_flops(args.flops) if args.flops else {}
    unknown = sorted(set(flops) - set(timings))
    if unknown:
        raise ConfigError(f"FLOP counts given for algorithms without timings: {unknown}")
    algorithms = [AlgorithmSpec(a, flops.get(a)) for a in timings]
    result = _replay_campaign(timings, algorithms, config, {"timings": Path(args.timings).name})
    return _finish(result, args)


def cmd_measure(args: argparse.Namespace) -> int:
    config = _config(args)
    specs, instance = load_manifest(args.manifest)
    single = {}
    for spec in specs:
        log.info("warm-up and single run of %s", spec.id)
        single[spec.id] = run_external(spec.command, config.warmup, 1, args.timeout)[0]
    source = CommandSource({s.id: s.command for s in specs}, warmup=0, timeout=args.timeout)
    info = time.get_clock_info("perf_counter")
    clock = {"name": "perf_counter", "implementation": info.implementation, "monotonic": info.monotonic,
             "resolution": info.resolution}
    result = run_campaign(specs, source, config, single_run=single, instance=instance, clock=clock)
    if args.timings_out is not None:
        data = {a: result.state.measurements[a].samples for a in result.candidates}
        args.timings_out.write_text(format_timings(data), encoding="utf-8")
    return _finish(result, args)


def cmd_chain(args: argparse.Namespace) -> int:
    inst = ChainInstance(tuple(args.dims))
    variants = enumerate_variants(inst, max_length=args.max_length)
    names = inst.names()
    rf = relative_flops([v.cost for v in variants])
    if args.timings is None:
        if args.json:
            rows = [
                {"id": v.id, "parenthesization": v.parenthesization(names), "kernels": v.kernels(names),
                 "cost": v.cost, "flops": v.flops, "rf": r}
                for v, r in zip(variants, rf)
            ]
            print(json.dumps({"dims": list(inst.dims), "variants": rows}, indent=2))
        else:
            print(f"{'id':<8}{'parenthesization':<24}{'kernel order':<36}{'cost':>14}{'RF':>8}")
            for v, r in zip(variants, rf):
                print(f"{v.id:<8}{v.parenthesization(names):<24}{'; '.join(v.kernels(names)):<36}{v.cost:>14}{r:>8.2f}")
        return EXIT_OK
    config = _config(args)
    timings = read_timings(args.timings)
    algorithms = [AlgorithmSpec(v.id, v.flops) for v in variants]
    result = _replay_campaign(timings, algorithms, config, {"dims": list(inst.dims)})
    return _finish(result, args)


def cmd_synth(args: argparse.Namespace) -> int:
    mixtures = load_mixtures(args.spec)
    n = args.n if args.n is not None else args.max_measurements
    source = SyntheticSource(mixtures, seed=args.seed)
    text = format_timings({a: source.next_batch(a, n) for a in mixtures})
    if args.out is not None:
        args.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flopsrank",
        description="Rank equivalent algorithms into performance classes and test FLOPs as a discriminant.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rank", help="rank algorithms from a recorded timings CSV")
    p.add_argument("timings", type=Path, help="CSV with header algorithm,run_index,time_seconds")
    p.add_argument("--flops", type=Path, help="JSON object mapping algorithm id to FLOP count")
    _add_common(p)
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("measure", help="time external commands from a manifest and rank them")
    p.add_argument("manifest", type=Path, help='JSON {"instance": ..., "algorithms": [{"id", "flops", "command"}]}')
    p.add_argument("--timeout", type=float, help="per-run timeout in seconds")
    p.add_argument("--timings-out", type=Path, help="also write the collected timings as CSV")
    _add_common(p)
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("chain", help="matrix-chain variants, costs and relative FLOPs")
    p.add_argument("dims", type=int, nargs="+", help="chain dimensions d0 d1 ... dL")
    p.add_argument("--timings", type=Path, help="timings CSV keyed by variant id; runs a ranking campaign")
    p.add_argument("--json", action="store_true", help="print the variant table as JSON")
    p.add_argument("--max-length", type=int, default=8, help="refuse to enumerate longer chains (default: %(default)s)")
    _add_common(p)
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("synth", help="generate a timings CSV from a mixture spec")
    p.add_argument("spec", type=Path, help='JSON {"algorithms": {id: [{"weight", "location", "spread"}]}}')
    p.add_argument("--n", type=int, help="samples per algorithm (default: --max)")
    _add_common(p)
    p.set_defaults(func=cmd_synth)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (MeasurementError, ConfigError, TimingsFormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
