"""Benchmark harness: scenario discovery, the cold-start repetition
protocol with fresh-process resets, median-of-medians aggregation,
stability checking, and tracer overhead measurement.

A scenario is a directory holding a ``scenario.json`` ground-truth file, a
source tree under ``src/`` and a driver module exposing the entry handler.
Every cold start runs in a brand-new process with a scratch working
directory, the local analog of a container reset, and its latency is taken
from the trace itself (process-entry marker to first handler return) so
interpreter boot noise stays out of the numbers.
"""

from __future__ import annotations

import json
import os
import random
import statistics
import subprocess
import sys
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping, Sequence

from .trace import KIND_INVOKE_END, Trace, parse_trace

CATEGORIES = tuple(f"B{i}" for i in range(1, 9))
LAYERS = frozenset({"design", "packaging", "runtime", "environment"})
PHASES = frozenset({"import", "first_invocation", "per_invocation"})
VARIANTS = frozenset({"simulated", "native"})
TAG_VOCAB = frozenset(
    [f"A{i}" for i in range(1, 7)]
    + [f"R{i}" for i in range(1, 7)]
    + [f"L{i}" for i in range(1, 6)]
)

METADATA_FILENAME = "scenario.json"
DEFAULT_ENTRY = "driver:handler"
SCRATCH_ENV = "COLDPATH_SCRATCH"

OVERHEAD_THRESHOLD = 0.10
STABILITY_THRESHOLD = 0.05

# Desk-scale defaults; --paper-scale bumps them to 500 x 5.
DESK_COLD_STARTS = 20
DESK_REPETITIONS = 5
PAPER_COLD_STARTS = 500
PAPER_REPETITIONS = 5


class MetadataInvalid(ValueError):
    pass


class RunnerFailure(RuntimeError):
    pass


class ScenarioTimeout(RuntimeError):
    pass


class InsufficientReps(ValueError):
    pass


class ZeroBaseline(ArithmeticError):
    pass


@dataclass(frozen=True)
class ScenarioMetadata:
    id: str
    category: str
    layer: str
    phase: str
    must_blame: tuple[str, ...]
    must_not_blame: tuple[str, ...]
    params: Mapping[str, Any]
    variant: str
    tags: tuple[str, ...]
    root: Path | None = None

    @property
    def entry(self) -> str:
        return str(self.params.get("entry", DEFAULT_ENTRY))


@dataclass(frozen=True)
class MetadataProblem:
    path: Path
    reason: str


@dataclass(frozen=True)
class RunConfig:
    cold_starts_per_rep: int = DESK_COLD_STARTS
    repetitions: int = DESK_REPETITIONS
    randomize_order: bool = True
    seed: int = 0
    timeout_s: float = 120.0
    warm_invocations: int = 1
    sample_interval_ms: int = 10
    runner: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")
        if self.cold_starts_per_rep < 1:
            raise ValueError("cold_starts_per_rep must be >= 1")

    @classmethod
    def paper_scale(cls, **overrides: Any) -> "RunConfig":
        overrides.setdefault("cold_starts_per_rep", PAPER_COLD_STARTS)
        overrides.setdefault("repetitions", PAPER_REPETITIONS)
        return cls(**overrides)


@dataclass(frozen=True)
class RunTrace:
    rep: int
    index: int
    cold: Path
    warm: Path
    latency_ns: int


@dataclass(frozen=True)
class RunResult:
    scenario_id: str
    per_rep_medians: tuple[float, ...]
    grand_median_ns: float
    rel_spread: float
    traces: tuple[RunTrace, ...]


@dataclass(frozen=True)
class StabilityCheck:
    scenario_id: str
    passed: bool
    rel_spread: float
    threshold: float


@dataclass(frozen=True)
class OverheadResult:
    scenario_id: str
    baseline_median_ns: float
    instrumented_median_ns: float
    ratio: float
    passed: bool
    threshold: float = OVERHEAD_THRESHOLD
    instrumented: "RunResult | None" = None
    baseline: "RunResult | None" = None


def default_runner() -> tuple[str, ...]:
    """Argv prefix for the tracing runner process."""
    return (sys.executable, "-m", "coldtrace")


def _meta_error(path: Path, reason: str) -> MetadataProblem:
    return MetadataProblem(path=path, reason=reason)


def parse_scenario(path: str | Path) -> ScenarioMetadata:
    """Load and validate one scenario.json file."""
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise MetadataInvalid(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise MetadataInvalid("metadata must be a JSON object")

    def str_field(key: str) -> str:
        val = doc.get(key)
        if not isinstance(val, str) or not val:
            raise MetadataInvalid(f"field {key!r} must be a non-empty string")
        return val

    def str_list(key: str) -> tuple[str, ...]:
        val = doc.get(key)
        if not isinstance(val, list) or not all(isinstance(x, str) and x for x in val):
            raise MetadataInvalid(f"field {key!r} must be a list of strings")
        return tuple(val)

    scenario_id = str_field("id")
    category = str_field("category")
    if category not in CATEGORIES:
        raise MetadataInvalid(f"unknown category {category!r}")
    layer = str_field("layer")
    if layer not in LAYERS:
        raise MetadataInvalid(f"unknown layer {layer!r}")
    phase = str_field("phase")
    if phase not in PHASES:
        raise MetadataInvalid(f"unknown phase {phase!r}")
    must_blame = str_list("must_blame")
    if not must_blame:
        raise MetadataInvalid("must_blame must be non-empty")
    must_not_blame = str_list("must_not_blame")
    overlap = set(must_blame) & set(must_not_blame)
    if overlap:
        raise MetadataInvalid(f"must_blame and must_not_blame overlap: {sorted(overlap)}")
    params = doc.get("params", {})
    if not isinstance(params, dict):
        raise MetadataInvalid("field 'params' must be an object")
    variant = str_field("variant")
    if variant not in VARIANTS:
        raise MetadataInvalid(f"unknown variant {variant!r}")
    tags = str_list("tags")
    bad_tags = [t for t in tags if t not in TAG_VOCAB]
    if bad_tags:
        raise MetadataInvalid(f"unknown taxonomy tags {bad_tags}")
    return ScenarioMetadata(
        id=scenario_id,
        category=category,
        layer=layer,
        phase=phase,
        must_blame=must_blame,
        must_not_blame=must_not_blame,
        params=params,
        variant=variant,
        tags=tags,
        root=path.parent,
    )


def discover_scenarios(
    corpus_dir: str | Path,
) -> tuple[list[ScenarioMetadata], list[MetadataProblem]]:
    """Find every scenario.json under ``corpus_dir``.

    Returns the valid scenarios sorted by id plus per-file problems for the
    invalid ones. Raises MetadataInvalid only if files were found and none
    parsed.
    """
    corpus_dir = Path(corpus_dir)
    if not corpus_dir.is_dir():
        raise FileNotFoundError(f"corpus directory {corpus_dir} does not exist")
    scenarios: list[ScenarioMetadata] = []
    problems: list[MetadataProblem] = []
    files = sorted(corpus_dir.rglob(METADATA_FILENAME))
    for path in files:
        try:
            scenarios.append(parse_scenario(path))
        except MetadataInvalid as exc:
            problems.append(_meta_error(path, str(exc)))
    if files and not scenarios:
        details = "; ".join(f"{p.path}: {p.reason}" for p in problems)
        raise MetadataInvalid(f"no valid scenario metadata in {corpus_dir} ({details})")
    seen: dict[str, Path] = {}
    for meta in scenarios:
        if meta.id in seen:
            raise MetadataInvalid(
                f"duplicate scenario id {meta.id!r} in {seen[meta.id]} and {meta.root}"
            )
        seen[meta.id] = meta.root or corpus_dir
    scenarios.sort(key=lambda meta: meta.id)
    return scenarios, problems


def scratch_base(out_dir: str | Path) -> Path:
    """Where per-run working directories live; COLDPATH_SCRATCH overrides."""
    override = os.environ.get(SCRATCH_ENV)
    return Path(override) if override else Path(out_dir)


def run_cold_start(
    meta: ScenarioMetadata,
    cfg: RunConfig,
    work_dir: Path,
    baseline: bool = False,
    env_extra: Mapping[str, str] | None = None,
) -> RunTrace:
    """Execute one cold start in a fresh process and pull its latency out
    of the traces (first invoke_end minus the process-entry marker)."""
    if meta.root is None:
        raise RunnerFailure(f"scenario {meta.id} has no directory to run from")
    root = meta.root.resolve()
    work_dir.mkdir(parents=True, exist_ok=True)
    work_dir = work_dir.resolve()
    cold_path = work_dir / "cold.jsonl"
    warm_path = work_dir / "warm.jsonl"
    runner = cfg.runner or default_runner()
    cmd = list(runner) + [
        "--entry",
        meta.entry,
        "--warm",
        str(cfg.warm_invocations),
        "--interval-ms",
        str(cfg.sample_interval_ms),
        "--cold-out",
        str(cold_path),
        "--warm-out",
        str(warm_path),
        "--path",
        str(root),
        "--path",
        str(root / "src"),
    ]
    if baseline:
        cmd.append("--baseline")
    env = dict(os.environ)
    env["COLDPATH_SCENARIO"] = meta.id
    # Keep scenario trees pyc-free so every cold start pays the same loader cost.
    env["PYTHONDONTWRITEBYTECODE"] = "1"
    if env_extra:
        env.update(env_extra)
    try:
        proc = subprocess.run(
            cmd,
            cwd=work_dir,
            env=env,
            capture_output=True,
            text=True,
            timeout=cfg.timeout_s,
        )
    except subprocess.TimeoutExpired as exc:
        raise ScenarioTimeout(f"{meta.id}: cold start exceeded {cfg.timeout_s}s") from exc
    if proc.returncode != 0:
        raise RunnerFailure(
            f"{meta.id}: runner exited {proc.returncode}\n"
            f"stdout: {proc.stdout[-2000:]}\nstderr: {proc.stderr[-2000:]}"
        )
    latency = extract_latency_ns(parse_trace(cold_path), parse_trace(warm_path))
    return RunTrace(rep=-1, index=-1, cold=cold_path, warm=warm_path, latency_ns=latency)


def extract_latency_ns(cold: Trace, warm: Trace) -> int:
    """Cold-start latency: first invocation's end marker relative to the
    process-entry meta record. Both traces share one monotonic clock."""
    first_end: int | None = None
    first_seq: int | None = None
    for rec in warm.records:
        if rec.kind == KIND_INVOKE_END:
            if first_seq is None or rec.data["seq"] < first_seq:
                first_seq = rec.data["seq"]
                first_end = rec.ts_ns
    if first_end is None:
        raise RunnerFailure("warm trace has no invoke_end marker")
    return first_end - cold.entry_ts_ns


def _run_one(
    meta: ScenarioMetadata,
    cfg: RunConfig,
    rep: int,
    index: int,
    out_dir: Path,
    baseline: bool = False,
) -> RunTrace:
    work_dir = scratch_base(out_dir) / meta.id / f"rep{rep:02d}" / f"run{index:03d}"
    trace = run_cold_start(
        meta,
        cfg,
        work_dir,
        baseline=baseline,
        env_extra={"COLDPATH_REP": str(rep), "COLDPATH_COLD_INDEX": str(index)},
    )
    return RunTrace(rep=rep, index=index, cold=trace.cold, warm=trace.warm,
                    latency_ns=trace.latency_ns)


def _run_rep(
    meta: ScenarioMetadata,
    cfg: RunConfig,
    rep: int,
    out_dir: Path,
    baseline: bool = False,
) -> list[RunTrace]:
    return [
        _run_one(meta, cfg, rep, index, out_dir, baseline=baseline)
        for index in range(cfg.cold_starts_per_rep)
    ]


def aggregate_runs(scenario_id: str, traces: Sequence[RunTrace]) -> RunResult:
    """Median per repetition, then the median of those medians."""
    by_rep: dict[int, list[int]] = {}
    for trace in traces:
        by_rep.setdefault(trace.rep, []).append(trace.latency_ns)
    per_rep = tuple(float(statistics.median(by_rep[rep])) for rep in sorted(by_rep))
    grand = float(statistics.median(per_rep))
    spread = (max(per_rep) - min(per_rep)) / grand if len(per_rep) > 1 and grand > 0 else 0.0
    return RunResult(
        scenario_id=scenario_id,
        per_rep_medians=per_rep,
        grand_median_ns=grand,
        rel_spread=spread,
        traces=tuple(sorted(traces, key=lambda t: (t.rep, t.index))),
    )


def run_scenario(
    meta: ScenarioMetadata,
    cfg: RunConfig,
    out_dir: str | Path,
    baseline: bool = False,
) -> RunResult:
    """Run the full repetition protocol for one scenario.

    With randomize_order on, individual cold starts are shuffled across
    repetitions so every repetition samples the same conditions; the
    shuffle affects scheduling only, never aggregation.
    """
    out_dir = Path(out_dir)
    tasks = [
        (rep, index)
        for rep in range(cfg.repetitions)
        for index in range(cfg.cold_starts_per_rep)
    ]
    if cfg.randomize_order:
        random.Random(cfg.seed).shuffle(tasks)
    traces = [
        _run_one(meta, cfg, rep, index, out_dir, baseline=baseline)
        for rep, index in tasks
    ]
    return aggregate_runs(meta.id, traces)


def run_corpus(
    scenarios: Sequence[ScenarioMetadata],
    cfg: RunConfig,
    out_dir: str | Path,
    baseline: bool = False,
) -> list[RunResult]:
    """Run the protocol over a corpus. With randomize_order on, individual
    cold starts are shuffled across scenarios and repetitions to remove
    caching and drift bias; aggregation is order-independent either way."""
    out_dir = Path(out_dir)
    tasks = [
        (meta, rep, index)
        for meta in scenarios
        for rep in range(cfg.repetitions)
        for index in range(cfg.cold_starts_per_rep)
    ]
    if cfg.randomize_order:
        random.Random(cfg.seed).shuffle(tasks)
    collected: dict[str, list[RunTrace]] = {meta.id: [] for meta in scenarios}
    for meta, rep, index in tasks:
        collected[meta.id].append(_run_one(meta, cfg, rep, index, out_dir, baseline=baseline))
    return [aggregate_runs(meta.id, collected[meta.id]) for meta in sorted(scenarios, key=lambda m: m.id)]


def check_stability(result: RunResult, threshold: float = STABILITY_THRESHOLD) -> StabilityCheck:
    """Pass iff (max - min) / median over the per-rep medians stays within
    the threshold."""
    if len(result.per_rep_medians) < 2:
        raise InsufficientReps("stability needs at least 2 repetitions")
    return StabilityCheck(
        scenario_id=result.scenario_id,
        passed=result.rel_spread <= threshold,
        rel_spread=result.rel_spread,
        threshold=threshold,
    )


def measure_overhead(
    meta: ScenarioMetadata,
    cfg: RunConfig,
    out_dir: str | Path,
    threshold: float = OVERHEAD_THRESHOLD,
) -> OverheadResult:
    """Run the scenario instrumented and uninstrumented and compare grand
    medians: (instrumented - baseline) / baseline.

    Each cold start runs back-to-back in both modes so drift in machine
    speed affects both sides alike instead of biasing the ratio.
    """
    out_dir = Path(out_dir)
    tasks = [
        (rep, index)
        for rep in range(cfg.repetitions)
        for index in range(cfg.cold_starts_per_rep)
    ]
    if cfg.randomize_order:
        random.Random(cfg.seed).shuffle(tasks)
    inst_traces: list[RunTrace] = []
    base_traces: list[RunTrace] = []
    for rep, index in tasks:
        inst_traces.append(_run_one(meta, cfg, rep, index, out_dir / "instrumented"))
        base_traces.append(_run_one(meta, cfg, rep, index, out_dir / "baseline", baseline=True))
    instrumented = aggregate_runs(meta.id, inst_traces)
    baseline = aggregate_runs(meta.id, base_traces)
    if baseline.grand_median_ns == 0:
        raise ZeroBaseline(f"{meta.id}: baseline median is zero")
    ratio = (
        instrumented.grand_median_ns - baseline.grand_median_ns
    ) / baseline.grand_median_ns
    return OverheadResult(
        scenario_id=meta.id,
        baseline_median_ns=baseline.grand_median_ns,
        instrumented_median_ns=instrumented.grand_median_ns,
        ratio=ratio,
        passed=ratio <= threshold,
        threshold=threshold,
        instrumented=instrumented,
        baseline=baseline,
    )


def profile_scenario(
    meta: ScenarioMetadata,
    cfg: RunConfig,
    out_dir: str | Path,
    warm_invocations: int = 20,
) -> tuple[Path, Path]:
    """One instrumented run with enough warm invocations for usage
    attribution; returns the cold and warm trace paths."""
    profile_cfg = RunConfig(
        cold_starts_per_rep=1,
        repetitions=1,
        randomize_order=False,
        seed=cfg.seed,
        timeout_s=cfg.timeout_s,
        warm_invocations=warm_invocations,
        sample_interval_ms=cfg.sample_interval_ms,
        runner=cfg.runner,
    )
    trace = run_cold_start(meta, profile_cfg, scratch_base(out_dir) / meta.id / "profile")
    return trace.cold, trace.warm


def write_manifest(
    path: str | Path,
    cfg: RunConfig,
    results: Sequence[RunResult],
    overheads: Sequence[OverheadResult] = (),
    stability: Sequence[StabilityCheck] = (),
) -> None:
    """Persist a machine-readable record of a harness run."""
    doc = {
        "schema": 1,
        "run_id": uuid.uuid4().hex,
        "config": {
            "cold_starts_per_rep": cfg.cold_starts_per_rep,
            "repetitions": cfg.repetitions,
            "randomize_order": cfg.randomize_order,
            "seed": cfg.seed,
            "timeout_s": cfg.timeout_s,
            "warm_invocations": cfg.warm_invocations,
            "sample_interval_ms": cfg.sample_interval_ms,
        },
        "results": [
            {
                "scenario": res.scenario_id,
                "per_rep_medians_ns": list(res.per_rep_medians),
                "grand_median_ns": res.grand_median_ns,
                "rel_spread": res.rel_spread,
                "traces": [
                    {
                        "rep": t.rep,
                        "index": t.index,
                        "cold": str(t.cold),
                        "warm": str(t.warm),
                        "latency_ns": t.latency_ns,
                    }
                    for t in res.traces
                ],
            }
            for res in results
        ],
        "overhead": [
            {
                "scenario": o.scenario_id,
                "baseline_median_ns": o.baseline_median_ns,
                "instrumented_median_ns": o.instrumented_median_ns,
                "ratio": o.ratio,
                "passed": o.passed,
                "threshold": o.threshold,
            }
            for o in overheads
        ],
        "stability": [
            {
                "scenario": s.scenario_id,
                "rel_spread": s.rel_spread,
                "passed": s.passed,
                "threshold": s.threshold,
            }
            for s in stability
        ],
    }
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")
