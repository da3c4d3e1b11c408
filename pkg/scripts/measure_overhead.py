#!/usr/bin/env python3
"""Tracer overhead experiment: run every scenario instrumented and
uninstrumented at desk scale and report the per-scenario latency ratio
against the 10% budget.

    python scripts/measure_overhead.py --corpus harness/corpus --out overhead.json
"""

import argparse
import json
import shlex
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from coldpath import bench


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--corpus", required=True)
    parser.add_argument("--out", default="overhead.json")
    parser.add_argument("--work-dir", default="overhead-runs")
    parser.add_argument("--reps", type=int, default=bench.DESK_REPETITIONS)
    parser.add_argument("--cold-starts", type=int, default=bench.DESK_COLD_STARTS)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--timeout", type=float, default=120.0)
    parser.add_argument("--runner")
    args = parser.parse_args()

    cfg = bench.RunConfig(
        cold_starts_per_rep=args.cold_starts,
        repetitions=args.reps,
        seed=args.seed,
        timeout_s=args.timeout,
        runner=tuple(shlex.split(args.runner)) if args.runner else None,
    )
    scenarios, problems = bench.discover_scenarios(args.corpus)
    for problem in problems:
        print(f"skipping {problem.path}: {problem.reason}", file=sys.stderr)

    rows = []
    for meta in scenarios:
        result = bench.measure_overhead(meta, cfg, Path(args.work_dir) / meta.id)
        rows.append(result)
        mark = "ok" if result.passed else "OVER"
        print(f"{meta.id:>28}: baseline {result.baseline_median_ns / 1e6:8.2f} ms  "
              f"instrumented {result.instrumented_median_ns / 1e6:8.2f} ms  "
              f"{result.ratio:+7.2%} [{mark}]")

    doc = [
        {
            "scenario": r.scenario_id,
            "baseline_median_ns": r.baseline_median_ns,
            "instrumented_median_ns": r.instrumented_median_ns,
            "ratio": r.ratio,
            "passed": r.passed,
        }
        for r in rows
    ]
    Path(args.out).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
    failed = [r for r in rows if not r.passed]
    print(f"{len(rows) - len(failed)}/{len(rows)} scenarios within the 10% budget")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
