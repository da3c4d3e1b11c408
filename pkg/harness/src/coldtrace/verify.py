"""Scenario verification: checks that a benchmark scenario's ground truth
is actually observable.

For each scenario this runs the driver once under the tracing runner in a
scratch directory, then checks against the raw trace files that (a) the
metadata is well formed, (b) every must_blame module was freshly imported,
(c) the blamed subtree's initialization cost clears the scenario's
min_cost_ms floor, (d) it dominates the costliest must_not module by at
least 3x, and (e) the blamed import lands in the phase the metadata
declares (import phase vs first invocation).

    python -m coldtrace.verify CORPUS_DIR [--keep] [--warm N]
"""

from __future__ import annotations

import argparse
import json
import subprocess
import sys
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

CATEGORIES = {f"B{i}" for i in range(1, 9)}
LAYERS = {"design", "packaging", "runtime", "environment"}
PHASES = {"import", "first_invocation", "per_invocation"}
VARIANTS = {"simulated", "native"}
TAGS = (
    {f"A{i}" for i in range(1, 7)}
    | {f"R{i}" for i in range(1, 7)}
    | {f"L{i}" for i in range(1, 6)}
)

DOMINANCE_FACTOR = 3.0


@dataclass
class VerifyResult:
    scenario_id: str
    passed: bool
    diagnostics: list[str] = field(default_factory=list)


def check_metadata(doc: dict) -> list[str]:
    problems = []
    if not isinstance(doc.get("id"), str) or not doc.get("id"):
        problems.append("id missing")
    if doc.get("category") not in CATEGORIES:
        problems.append(f"bad category {doc.get('category')!r}")
    if doc.get("layer") not in LAYERS:
        problems.append(f"bad layer {doc.get('layer')!r}")
    if doc.get("phase") not in PHASES:
        problems.append(f"bad phase {doc.get('phase')!r}")
    if doc.get("variant") not in VARIANTS:
        problems.append(f"bad variant {doc.get('variant')!r}")
    must = doc.get("must_blame")
    must_not = doc.get("must_not_blame")
    if not isinstance(must, list) or not must:
        problems.append("must_blame must be a non-empty list")
    if not isinstance(must_not, list):
        problems.append("must_not_blame must be a list")
    if isinstance(must, list) and isinstance(must_not, list):
        overlap = set(must) & set(must_not)
        if overlap:
            problems.append(f"must/must_not overlap: {sorted(overlap)}")
    if not isinstance(doc.get("params"), dict):
        problems.append("params must be an object")
    tags = doc.get("tags")
    if not isinstance(tags, list) or any(t not in TAGS for t in tags):
        problems.append(f"bad tags {tags!r}")
    return problems


def load_records(path: Path) -> list[dict]:
    records = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                records.append(json.loads(line))
    return records


def matched_imports(records: list[dict]) -> tuple[dict[str, tuple[int, int]], dict[str, int]]:
    """Per module: first matched (begin_ts, end_ts) span plus exclusive
    time (span minus directly nested import spans), by per-thread nesting."""
    spans: dict[str, tuple[int, int]] = {}
    exclusive: dict[str, int] = {}
    stacks: dict[int, list[list]] = {}
    for rec in records:
        if rec["k"] == "import_begin":
            stacks.setdefault(rec["tid"], []).append([rec["mod"], rec["ts_ns"], 0])
        elif rec["k"] == "import_end":
            stack = stacks.get(rec["tid"], [])
            if stack and stack[-1][0] == rec["mod"]:
                mod, begin_ts, child_ns = stack.pop()
                span = rec["ts_ns"] - begin_ts
                spans.setdefault(mod, (begin_ts, rec["ts_ns"]))
                exclusive[mod] = exclusive.get(mod, 0) + span - child_ns
                if stack:
                    stack[-1][2] += span
    return spans, exclusive


def run_driver(scenario_dir: Path, work_dir: Path, warm: int,
               runner: list[str] | None = None) -> tuple[Path, Path]:
    runner = runner or [sys.executable, "-m", "coldtrace"]
    scenario_dir = scenario_dir.resolve()
    cold = work_dir / "cold.jsonl"
    warm_path = work_dir / "warm.jsonl"
    entry = "driver:handler"
    meta = json.loads((scenario_dir / "scenario.json").read_text())
    entry = meta.get("params", {}).get("entry", entry)
    cmd = runner + [
        "--entry", entry,
        "--warm", str(warm),
        "--interval-ms", "10",
        "--cold-out", str(cold),
        "--warm-out", str(warm_path),
        "--path", str(scenario_dir),
        "--path", str(scenario_dir / "src"),
    ]
    import os

    env = dict(os.environ)
    env["PYTHONDONTWRITEBYTECODE"] = "1"
    proc = subprocess.run(cmd, cwd=work_dir, capture_output=True, text=True,
                          timeout=120, env=env)
    if proc.returncode != 0:
        raise RuntimeError(
            f"runner exited {proc.returncode}: {proc.stderr[-1500:]}"
        )
    return cold, warm_path


def verify_scenario(scenario_dir: Path, work_dir: Path | None = None,
                    warm: int = 3) -> VerifyResult:
    meta_path = scenario_dir / "scenario.json"
    if not meta_path.exists():
        return VerifyResult(str(scenario_dir), False, ["scenario.json missing"])
    doc = json.loads(meta_path.read_text())
    scenario_id = doc.get("id", str(scenario_dir))
    problems = check_metadata(doc)
    if problems:
        return VerifyResult(scenario_id, False, problems)

    own_tmp = None
    if work_dir is None:
        own_tmp = tempfile.TemporaryDirectory(prefix="coldtrace-verify-")
        work_dir = Path(own_tmp.name)
    try:
        try:
            cold_path, warm_path = run_driver(scenario_dir, work_dir, warm)
        except Exception as exc:
            return VerifyResult(scenario_id, False, [f"driver run failed: {exc}"])
        cold = load_records(cold_path)
        warm_records = load_records(warm_path)
        spans, exclusive = matched_imports(cold)
        diagnostics = []

        for mod in doc["must_blame"]:
            if mod not in spans:
                diagnostics.append(f"must_blame module {mod!r} never freshly imported")

        blamed_ns = sum(end - begin for mod, (begin, end) in spans.items()
                        if mod in set(doc["must_blame"]))
        min_cost_ms = float(doc["params"].get("min_cost_ms", 0))
        if blamed_ns < min_cost_ms * 1e6:
            diagnostics.append(
                f"blamed subtree {blamed_ns / 1e6:.2f} ms under floor {min_cost_ms} ms"
            )

        # Dominance compares against must_not modules' own-body (exclusive)
        # cost; their inclusive spans contain the blamed subtree whenever
        # they sit above it in the import graph (the driver always does).
        must_not_costs = [(mod, ns) for mod, ns in exclusive.items()
                          if mod in set(doc["must_not_blame"])]
        if must_not_costs:
            worst_mod, worst_ns = max(must_not_costs, key=lambda item: item[1])
            if blamed_ns < DOMINANCE_FACTOR * worst_ns:
                diagnostics.append(
                    f"blamed {blamed_ns / 1e6:.2f} ms does not dominate "
                    f"{worst_mod} ({worst_ns / 1e6:.2f} ms exclusive) by {DOMINANCE_FACTOR}x"
                )

        windows = {}
        for rec in warm_records:
            if rec["k"] == "invoke_begin":
                windows.setdefault(rec["seq"], [None, None])[0] = rec["ts_ns"]
            elif rec["k"] == "invoke_end":
                windows.setdefault(rec["seq"], [None, None])[1] = rec["ts_ns"]
        first = windows.get(0)
        if first is None or first[0] is None or first[1] is None:
            diagnostics.append("warm trace lacks a complete first invocation window")
        else:
            for mod in doc["must_blame"]:
                if mod not in spans:
                    continue
                begin, _ = spans[mod]
                in_first = first[0] <= begin <= first[1]
                if doc["phase"] == "first_invocation" and not in_first:
                    diagnostics.append(
                        f"{mod!r} expected to load during the first invocation"
                    )
                if doc["phase"] == "import" and begin >= first[0]:
                    diagnostics.append(
                        f"{mod!r} expected to load before the first invocation"
                    )
        return VerifyResult(scenario_id, not diagnostics, diagnostics)
    finally:
        if own_tmp is not None:
            own_tmp.cleanup()


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("corpus", help="corpus directory")
    parser.add_argument("--warm", type=int, default=3)
    args = parser.parse_args()
    corpus = Path(args.corpus)
    scenario_dirs = sorted(p.parent for p in corpus.rglob("scenario.json"))
    if not scenario_dirs:
        print(f"no scenarios under {corpus}", file=sys.stderr)
        sys.exit(1)
    failed = 0
    for scenario_dir in scenario_dirs:
        result = verify_scenario(scenario_dir, warm=args.warm)
        mark = "pass" if result.passed else "FAIL"
        print(f"{result.scenario_id:>24}: {mark}")
        for diag in result.diagnostics:
            print(f"{'':>26}- {diag}")
        failed += 0 if result.passed else 1
    sys.exit(1 if failed else 0)


if __name__ == "__main__":
    main()
