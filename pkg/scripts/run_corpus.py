#!/usr/bin/env python3
"""End-to-end corpus experiment.

Runs the repetition protocol over every scenario in a corpus, checks
stability, takes one profiling run per scenario, turns it into a blame
verdict, and scores the verdicts against ground truth. Everything lands in
one results directory: manifest.json, per-scenario reports, coldpath
verdicts, and the evaluation table.

    python scripts/run_corpus.py --corpus harness/corpus --out results/ \
        [--reps 5 --cold-starts 20 --warm 20 --seed 0 --runner "python -m coldtrace"]
"""

import argparse
import json
import shlex
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from coldpath import bench, evaluate, report
from coldpath.cct import attribute_usage, build_cct, merge
from coldpath.scoring import score_cct
from coldpath.trace import parse_trace


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--corpus", required=True)
    parser.add_argument("--out", required=True)
    parser.add_argument("--reps", type=int, default=bench.DESK_REPETITIONS)
    parser.add_argument("--cold-starts", type=int, default=bench.DESK_COLD_STARTS)
    parser.add_argument("--paper-scale", action="store_true")
    parser.add_argument("--warm", type=int, default=20,
                        help="warm invocations for the profiling run")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--theta", type=float, default=evaluate.DEFAULT_THETA)
    parser.add_argument("--floor-ms", type=float, default=10.0)
    parser.add_argument("--timeout", type=float, default=120.0)
    parser.add_argument("--runner", help="runner argv, default 'python -m coldtrace'")
    args = parser.parse_args()

    cfg = bench.RunConfig(
        cold_starts_per_rep=bench.PAPER_COLD_STARTS if args.paper_scale else args.cold_starts,
        repetitions=bench.PAPER_REPETITIONS if args.paper_scale else args.reps,
        seed=args.seed,
        timeout_s=args.timeout,
        runner=tuple(shlex.split(args.runner)) if args.runner else None,
    )
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    scenarios, problems = bench.discover_scenarios(args.corpus)
    for problem in problems:
        print(f"skipping {problem.path}: {problem.reason}", file=sys.stderr)
    print(f"running {len(scenarios)} scenarios "
          f"({cfg.repetitions} reps x {cfg.cold_starts_per_rep} cold starts)")

    results = bench.run_corpus(scenarios, cfg, out / "runs")
    stability = [bench.check_stability(res) for res in results] if cfg.repetitions > 1 else []
    bench.write_manifest(out / "manifest.json", cfg, results, stability=stability)

    config = report.ReportConfig(theta=args.theta, floor_ns=int(args.floor_ms * 1e6),
                                 seed=args.seed)
    verdicts = []
    for meta in scenarios:
        cold_path, warm_path = bench.profile_scenario(meta, cfg, out / "profiles",
                                                      warm_invocations=args.warm)
        annotated = merge(build_cct(parse_trace(cold_path)),
                          attribute_usage(parse_trace(warm_path)))
        scores = score_cct(annotated)
        rep = report.build_report(annotated, scores, config)
        (out / "reports").mkdir(exist_ok=True)
        (out / "reports" / f"{meta.id}.json").write_text(
            report.render_report(rep, report.FORMAT_JSON), encoding="utf-8")
        verdicts.append({"scenario": meta.id,
                         "blamed": sorted(site.module for site in rep.source)})

    verdict_path = out / "coldpath_verdicts.json"
    verdict_path.write_text(json.dumps({"tool": "coldpath", "verdicts": verdicts},
                                       indent=2) + "\n", encoding="utf-8")
    comparisons = evaluate.compare_tools([verdict_path], scenarios)
    categories = sorted({meta.category for meta in scenarios})
    table = report.render_comparison(comparisons, categories)
    (out / "evaluation.txt").write_text(table, encoding="utf-8")
    print(table)
    for check in stability:
        if not check.passed:
            print(f"UNSTABLE {check.scenario_id}: spread {check.rel_spread:.2%}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
