"""Harness test helpers: run the tracing runner on fixtures and read raw
trace files (the wire format is the public contract, so tests parse the
JSON lines directly rather than going through any analyzer internals)."""

from __future__ import annotations

import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

HARNESS = Path(__file__).resolve().parent.parent
CORPUS = HARNESS / "corpus"

RUNNER = (sys.executable, "-m", "coldtrace")
COLDPATH_CLI = (sys.executable, "-m", "coldpath.cli")


def run_runner(work_dir: Path, entry: str, paths: list[Path], warm: int = 1,
               interval_ms: int = 10, baseline: bool = False,
               payload: Path | None = None, timeout: float = 120.0):
    """Invoke the runner in a scratch cwd; returns (proc, cold, warm)."""
    work_dir.mkdir(parents=True, exist_ok=True)
    cold = work_dir / "cold.jsonl"
    warm_path = work_dir / "warm.jsonl"
    cmd = list(RUNNER) + [
        "--entry", entry,
        "--warm", str(warm),
        "--interval-ms", str(interval_ms),
        "--cold-out", str(cold),
        "--warm-out", str(warm_path),
    ]
    for p in paths:
        cmd += ["--path", str(p)]
    if baseline:
        cmd.append("--baseline")
    if payload is not None:
        cmd += ["--payload", str(payload)]
    env = dict(os.environ)
    env["PYTHONDONTWRITEBYTECODE"] = "1"
    proc = subprocess.run(cmd, cwd=work_dir, capture_output=True, text=True,
                          timeout=timeout, env=env)
    return proc, cold, warm_path


def read_records(path: Path) -> list[dict]:
    return [json.loads(line) for line in path.read_text().splitlines() if line.strip()]


def latency_ns(cold_records: list[dict], warm_records: list[dict]) -> int:
    entry_ts = cold_records[0]["ts_ns"]
    ends = [r["ts_ns"] for r in warm_records if r["k"] == "invoke_end" and r["seq"] == 0]
    return min(ends) - entry_ts


def run_scenario_once(scenario_dir: Path, work_dir: Path, warm: int = 1,
                      baseline: bool = False):
    proc, cold, warm_path = run_runner(
        work_dir, "driver:handler",
        [scenario_dir, scenario_dir / "src"],
        warm=warm, baseline=baseline,
    )
    assert proc.returncode == 0, proc.stderr[-2000:]
    return read_records(cold), read_records(warm_path), proc


@pytest.fixture
def two_module_target(tmp_path):
    """Minimal target: module alpha imports module beta."""
    src = tmp_path / "src"
    src.mkdir()
    (src / "beta.py").write_text("VALUE = 7\nTOTAL = sum(range(2000))\n")
    (src / "alpha.py").write_text(
        "import beta\n\n\ndef compute():\n    return beta.VALUE * 6\n"
    )
    (tmp_path / "driver.py").write_text(
        "import alpha\n\n\ndef handler(payload=None):\n"
        "    return alpha.compute() + (len(payload) if payload else 0)\n"
    )
    return tmp_path
