"""Shared test helpers: wire-record builders, a seeded random generator of
well-nested import traces, and an interval-nesting oracle used to check
tree construction independently of the builder under test."""

from __future__ import annotations

import json
import random
from pathlib import Path

import pytest

from coldpath.bench import ScenarioMetadata
from coldpath.trace import Trace, parse_trace

FIXTURES = Path(__file__).parent / "fixtures"

MS = 1_000_000


def meta_rec(ts=0, tid=1, run_id="run-1", phase="cold", clock="perf_counter_ns"):
    return {"k": "meta", "ts_ns": ts, "tid": tid, "run_id": run_id,
            "phase": phase, "schema": 1, "clock": clock}


def begin_rec(mod, ts, depth=0, parent=None, file=None, tid=1):
    return {"k": "import_begin", "ts_ns": ts, "tid": tid, "mod": mod,
            "parent": parent, "depth": depth, "file": file}


def end_rec(mod, ts, dur, tid=1):
    return {"k": "import_end", "ts_ns": ts, "tid": tid, "mod": mod, "dur_ns": dur}


def sample_rec(ts, stack, tid=1, w=None):
    rec = {"k": "sample", "ts_ns": ts, "tid": tid,
           "stack": [{"mod": m, "fn": f, "file": fl, "line": ln} for m, f, fl, ln in stack]}
    if w is not None:
        rec["w"] = w
    return rec


def invoke_rec(kind, seq, ts, tid=1):
    return {"k": kind, "ts_ns": ts, "tid": tid, "seq": seq}


def write_trace(path: Path, records: list[dict]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec) + "\n")
    return path


def trace_from(tmp_path: Path, records: list[dict], name="trace.jsonl") -> Trace:
    return parse_trace(write_trace(tmp_path / name, records))


def mk_meta(scenario_id, category, must, must_not, phase="import", root=None,
            params=None, variant="simulated"):
    return ScenarioMetadata(
        id=scenario_id,
        category=category,
        layer="design",
        phase=phase,
        must_blame=tuple(must),
        must_not_blame=tuple(must_not),
        params=params or {},
        variant=variant,
        tags=("A1",),
        root=root,
    )


class _Clock:
    def __init__(self, start=1):
        self.now = start

    def tick(self, rng: random.Random) -> int:
        self.now += rng.randint(1, 10_000)
        return self.now


def random_cold_records(rng: random.Random, max_imports: int = 40, tids=(1,)):
    """Generate meta plus a well-nested random import event sequence.

    Returns (records, pairs) where pairs holds (mod, tid, begin_ts, end_ts)
    for the independent interval oracle. Module names are unique.
    """
    records = [meta_rec(ts=0, tid=tids[0])]
    pairs = []
    budget = [rng.randint(1, max_imports)]
    counter = [0]
    clock = _Clock()

    def subtree(tid: int, depth: int, parent: str | None):
        mod = f"m{counter[0]:03d}"
        counter[0] += 1
        begin = clock.tick(rng)
        records.append(begin_rec(mod, begin, depth=depth, parent=parent,
                                 file=f"/src/{mod}.py", tid=tid))
        while budget[0] > 0 and rng.random() < 0.45 and depth < 6:
            budget[0] -= 1
            subtree(tid, depth + 1, mod)
        end = clock.tick(rng)
        records.append(end_rec(mod, end, end - begin, tid=tid))
        pairs.append((mod, tid, begin, end))

    while budget[0] > 0:
        budget[0] -= 1
        tid = rng.choice(tids)
        subtree(tid, 0, None)
    return records, pairs


def oracle_tree(pairs):
    """Brute-force interval-nesting oracle: the parent of an import is the
    smallest same-thread interval strictly containing it. Returns nested
    dicts {module: (inclusive, exclusive, children_dict)}."""
    parents = {}
    for mod, tid, begin, end in pairs:
        best = None
        for omod, otid, obegin, oend in pairs:
            if omod == mod or otid != tid:
                continue
            if obegin < begin and oend > end:
                if best is None or (oend - obegin) < (best[3] - best[2]):
                    best = (omod, otid, obegin, oend)
        parents[mod] = best[0] if best else None

    children = {mod: [] for mod, *_ in pairs}
    roots = []
    for mod, tid, begin, end in sorted(pairs, key=lambda p: p[2]):
        if parents[mod] is None:
            roots.append(mod)
        else:
            children[parents[mod]].append(mod)
    spans = {mod: end - begin for mod, _, begin, end in pairs}

    def build(mod):
        kids = {kid: build(kid) for kid in children[mod]}
        inclusive = spans[mod]
        exclusive = inclusive - sum(kids[k][0] for k in kids)
        return (inclusive, exclusive, kids)

    return {mod: build(mod) for mod in roots}


def cct_as_dict(node):
    """Shape a built tree like the oracle output for comparison."""
    return {
        child.module: (
            child.inclusive_ns,
            child.exclusive_ns,
            cct_as_dict(child),
        )
        for child in node.children
    }


@pytest.fixture
def stub_runner():
    return (str(Path(__import__("sys").executable)), str(FIXTURES / "stub_runner.py"))
