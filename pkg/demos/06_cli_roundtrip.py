"""The command-line tool end to end: synthesize timings, rank them, read the report.

Equivalent shell session:

    flopsrank synth mixtures.json --seed 4 --out timings.csv
    flopsrank rank timings.csv --flops flops.json --out report.json
    flopsrank chain 75 75 8 75 75

Exit code 0 means the FLOP count picked the fastest class, 10 flags an anomaly
and 1 an operational error.

Run:  python demos/06_cli_roundtrip.py
"""

import json
import tempfile
from pathlib import Path

from flopsrank.harness.cli import main

if __name__ == "__main__":
    work = Path(tempfile.mkdtemp(prefix="flopsrank-demo-"))
    (work / "mixtures.json").write_text(json.dumps({"algorithms": {
        "blas_a": [{"weight": 1, "location": 0.020, "spread": 0.0005}],
        "blas_b": [{"weight": 1, "location": 0.020, "spread": 0.0005}],
        "blocked": [{"weight": 1, "location": 0.014, "spread": 0.0005}],
    }}))
    (work / "flops.json").write_text(json.dumps({"blas_a": 1000, "blas_b": 1000, "blocked": 1400}))

    print("$ flopsrank synth ...")
    main(["synth", str(work / "mixtures.json"), "--seed", "4", "--out", str(work / "timings.csv")])
    print("\n$ flopsrank rank ...")
    code = main(["rank", str(work / "timings.csv"), "--flops", str(work / "flops.json"),
                 "--out", str(work / "report.json")])
    print("exit code", code)

    report = json.loads((work / "report.json").read_text())
    print("\nfrom the report:")
    for alg in report["algorithms"]:
        print(f"  {alg['id']:<8} flops={alg['flops']:<5} rank={alg['rank_q25_75']} mean={alg['mean_rank_display']}")
    print("  verdict:", report["verdict"]["kind"])

    print("\n$ flopsrank chain 75 75 8 75 75")
    main(["chain", "75", "75", "8", "75", "75"])
    print(f"\nfiles left in {work}")
