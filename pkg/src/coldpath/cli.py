"""Command-line entry point.

Subcommands: trace (run the tracing runner on a target), analyze (traces
to report), bench (run a scenario corpus), eval (verdicts + truth to
metrics), compare (multi-tool table with statistics), report (re-render a
saved JSON report). Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import shlex
import subprocess
import sys
from itertools import combinations
from pathlib import Path
from typing import Sequence

from . import bench, evaluate, report, stats
from .cct import attribute_usage, build_cct, merge, UsageTable
from .scoring import score_cct
from .trace import parse_trace

_DOMAIN_ERRORS = (
    OSError,
    bench.MetadataInvalid,
    bench.RunnerFailure,
    bench.ScenarioTimeout,
    bench.InsufficientReps,
    bench.ZeroBaseline,
    evaluate.MalformedVerdictFile,
    evaluate.ScenarioMismatch,
    report.InconsistentInputs,
    report.UnsupportedSchema,
    ValueError,
)


def _parse_weights(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("weights must look like '0.8,0.2'")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError("weights must be numbers") from None


def _add_scoring_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--weights", type=_parse_weights, default=(0.8, 0.2),
                        metavar="L,U", help="latency,usage weights (default 0.8,0.2)")
    parser.add_argument("--theta", type=float, default=evaluate.DEFAULT_THETA,
                        help="relative blame threshold (default 0.5)")
    parser.add_argument("--floor-ms", type=float,
                        default=evaluate.DEFAULT_FLOOR_NS / 1e6,
                        help="absolute blame floor in ms (default 10)")
    parser.add_argument("--basis", choices=("exclusive", "inclusive"),
                        default="exclusive", help="init-time basis for scoring")
    parser.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coldpath")
    sub = parser.add_subparsers(dest="command", required=True)

    p_trace = sub.add_parser("trace", help="run the tracing runner on a target")
    p_trace.add_argument("--entry", required=True, metavar="pkg.mod:handler")
    p_trace.add_argument("--warm", type=int, default=1)
    p_trace.add_argument("--interval-ms", type=int, default=10)
    p_trace.add_argument("--cold-out", required=True)
    p_trace.add_argument("--warm-out", required=True)
    p_trace.add_argument("--payload")
    p_trace.add_argument("--path", action="append", default=[],
                         help="extra sys.path entry for the target (repeatable)")
    p_trace.add_argument("--runner", help="runner command override, e.g. 'python -m coldtrace'")
    p_trace.add_argument("--baseline", action="store_true",
                         help="run without instrumentation (latency markers only)")

    p_an = sub.add_parser("analyze", help="turn cold/warm traces into a report")
    p_an.add_argument("--cold", required=True)
    p_an.add_argument("--warm")
    p_an.add_argument("--out")
    p_an.add_argument("--format", choices=report.FORMATS, default=report.FORMAT_TEXT)
    _add_scoring_flags(p_an)

    p_bench = sub.add_parser("bench", help="run a scenario corpus")
    p_bench.add_argument("--corpus", required=True)
    p_bench.add_argument("--out", required=True)
    p_bench.add_argument("--reps", type=int, default=bench.DESK_REPETITIONS)
    p_bench.add_argument("--cold-starts", type=int, default=bench.DESK_COLD_STARTS)
    p_bench.add_argument("--paper-scale", action="store_true",
                         help="use the full 500x5 protocol")
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--no-randomize", action="store_true")
    p_bench.add_argument("--warm", type=int, default=1)
    p_bench.add_argument("--interval-ms", type=int, default=10)
    p_bench.add_argument("--timeout", type=float, default=120.0)
    p_bench.add_argument("--runner")
    p_bench.add_argument("--measure-overhead", action="store_true")
    p_bench.add_argument("--baseline", action="store_true",
                         help="run the corpus uninstrumented (latency markers only)")
    p_bench.add_argument("--scenario", action="append", default=[],
                         help="restrict to these scenario ids (repeatable)")

    p_eval = sub.add_parser("eval", help="score verdict files against ground truth")
    p_eval.add_argument("--verdicts", nargs="+", required=True, metavar="FILE")
    p_eval.add_argument("--corpus", required=True)
    p_eval.add_argument("--format", choices=(report.FORMAT_TEXT, report.FORMAT_JSON),
                        default=report.FORMAT_TEXT)
    p_eval.add_argument("--out")

    p_cmp = sub.add_parser("compare", help="multi-tool table with statistics")
    p_cmp.add_argument("--verdicts", nargs="+", required=True, metavar="FILE")
    p_cmp.add_argument("--corpus", required=True)
    p_cmp.add_argument("--format", choices=(report.FORMAT_TEXT, report.FORMAT_JSON),
                       default=report.FORMAT_TEXT)
    p_cmp.add_argument("--alpha", type=float, default=0.05)
    p_cmp.add_argument("--seed", type=int, default=0)
    p_cmp.add_argument("--out")

    p_rep = sub.add_parser("report", help="re-render a saved JSON report")
    p_rep.add_argument("--in", dest="input", required=True)
    p_rep.add_argument("--format", choices=report.FORMATS, default=report.FORMAT_TEXT)
    p_rep.add_argument("--out")

    return parser


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _cmd_trace(args: argparse.Namespace) -> int:
    runner = tuple(shlex.split(args.runner)) if args.runner else bench.default_runner()
    cmd = list(runner) + [
        "--entry", args.entry,
        "--warm", str(args.warm),
        "--interval-ms", str(args.interval_ms),
        "--cold-out", args.cold_out,
        "--warm-out", args.warm_out,
    ]
    for entry in args.path:
        cmd += ["--path", entry]
    if args.payload:
        cmd += ["--payload", args.payload]
    if args.baseline:
        cmd.append("--baseline")
    proc = subprocess.run(cmd)
    if proc.returncode != 0:
        print(f"runner exited with status {proc.returncode}", file=sys.stderr)
        return 1
    return 0


def _analyze(cold_path: str, warm_path: str | None, config: report.ReportConfig) -> report.Report:
    cold = parse_trace(cold_path)
    root = build_cct(cold)
    if warm_path:
        usage = attribute_usage(parse_trace(warm_path))
    else:
        usage = UsageTable(counts={}, total_samples=0)
    annotated = merge(root, usage)
    scores = score_cct(
        annotated,
        w_latency=config.w_latency,
        w_usage=config.w_usage,
        basis=config.basis,
    )
    return report.build_report(annotated, scores, config)


def _cmd_analyze(args: argparse.Namespace) -> int:
    config = report.ReportConfig(
        w_latency=args.weights[0],
        w_usage=args.weights[1],
        theta=args.theta,
        floor_ns=int(args.floor_ms * 1e6),
        seed=args.seed,
        basis=args.basis,
    )
    doc = report.render_report(_analyze(args.cold, args.warm, config), args.format)
    _emit(doc, args.out)
    return 0


def _cmd_bench(args: argparse.Namespace) -> int:
    cfg = bench.RunConfig(
        cold_starts_per_rep=bench.PAPER_COLD_STARTS if args.paper_scale else args.cold_starts,
        repetitions=bench.PAPER_REPETITIONS if args.paper_scale else args.reps,
        randomize_order=not args.no_randomize,
        seed=args.seed,
        timeout_s=args.timeout,
        warm_invocations=args.warm,
        sample_interval_ms=args.interval_ms,
        runner=tuple(shlex.split(args.runner)) if args.runner else None,
    )
    scenarios, problems = bench.discover_scenarios(args.corpus)
    for problem in problems:
        print(f"skipping {problem.path}: {problem.reason}", file=sys.stderr)
    if args.scenario:
        wanted = set(args.scenario)
        unknown = wanted - {meta.id for meta in scenarios}
        if unknown:
            print(f"unknown scenario ids: {sorted(unknown)}", file=sys.stderr)
            return 1
        scenarios = [meta for meta in scenarios if meta.id in wanted]
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    overheads = []
    if args.measure_overhead:
        # Overhead mode runs each repetition in both modes (interleaved);
        # the instrumented side doubles as the scenario's run result.
        overheads = [
            bench.measure_overhead(meta, cfg, out_dir / "overhead" / meta.id)
            for meta in scenarios
        ]
        results = [ovh.instrumented for ovh in overheads]
    else:
        results = bench.run_corpus(scenarios, cfg, out_dir / "runs", baseline=args.baseline)
    stability = []
    if cfg.repetitions >= 2:
        stability = [bench.check_stability(res) for res in results]
    bench.write_manifest(out_dir / "manifest.json", cfg, results, overheads, stability)
    for res in results:
        line = f"{res.scenario_id}: median {res.grand_median_ns / 1e6:.2f} ms, spread {res.rel_spread:.2%}"
        print(line)
    for check in stability:
        if not check.passed:
            print(f"UNSTABLE {check.scenario_id}: spread {check.rel_spread:.2%}")
    for ovh in overheads:
        mark = "ok" if ovh.passed else "OVER"
        print(f"overhead {ovh.scenario_id}: {ovh.ratio:+.2%} [{mark}]")
    return 0


def _load_truth(corpus: str) -> list[bench.ScenarioMetadata]:
    scenarios, problems = bench.discover_scenarios(corpus)
    for problem in problems:
        print(f"skipping {problem.path}: {problem.reason}", file=sys.stderr)
    return scenarios


def _cmd_eval(args: argparse.Namespace) -> int:
    truth = _load_truth(args.corpus)
    try:
        comparisons = evaluate.compare_tools(args.verdicts, truth)
    except evaluate.UnknownScenarioId as exc:
        print(f"verdict references unknown scenario id: {exc.args[0]}", file=sys.stderr)
        return 1
    categories = sorted({meta.category for meta in truth})
    doc = report.render_comparison(comparisons, categories, fmt=args.format)
    _emit(doc, args.out)
    return 0


def _cmd_compare(args: argparse.Namespace) -> int:
    truth = _load_truth(args.corpus)
    try:
        comparisons = evaluate.compare_tools(args.verdicts, truth)
    except evaluate.UnknownScenarioId as exc:
        print(f"verdict references unknown scenario id: {exc.args[0]}", file=sys.stderr)
        return 1
    categories = sorted({meta.category for meta in truth})
    outcome_score = {"success": 1.0, "partial": 0.5, "miss": 0.0}
    scenario_ids = sorted({meta.id for meta in truth})
    pairs = list(combinations(comparisons, 2))
    tests: list[stats.TestResult] = []
    effects: list[stats.EffectSize] = []
    for comp_a, comp_b in pairs:
        xs = [outcome_score[comp_a.results[sid].outcome] for sid in scenario_ids]
        ys = [outcome_score[comp_b.results[sid].outcome] for sid in scenario_ids]
        diffs = [x - y for x, y in zip(xs, ys)]
        try:
            tests.append(stats.wilcoxon_signed_rank(diffs))
        except stats.AllZeroDiffs:
            tests.append(stats.TestResult(statistic=0.0, p_value=1.0,
                                          method=stats.METHOD_EXACT,
                                          n=0, m=0))
        effects.append(stats.cliffs_delta(xs, ys, seed=args.seed))
    rejected = stats.holm_bonferroni([t.p_value for t in tests], alpha=args.alpha) if tests else []
    pairwise = [
        report.PairwiseStat(
            tool_a=pair[0].tool_id,
            tool_b=pair[1].tool_id,
            test=test,
            effect=effect,
            rejected=flag,
        )
        for pair, test, effect, flag in zip(pairs, tests, effects, rejected)
    ]
    doc = report.render_comparison(comparisons, categories, pairwise, fmt=args.format)
    _emit(doc, args.out)
    return 0


def _cmd_report(args: argparse.Namespace) -> int:
    loaded = report.load_report_json(Path(args.input).read_text(encoding="utf-8"))
    _emit(report.render_report(loaded, args.format), args.out)
    return 0


_COMMANDS = {
    "trace": _cmd_trace,
    "analyze": _cmd_analyze,
    "bench": _cmd_bench,
    "eval": _cmd_eval,
    "compare": _cmd_compare,
    "report": _cmd_report,
}


def cli_dispatch(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except _DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(cli_dispatch())


if __name__ == "__main__":
    main()
