import json
import random

import pytest

from coldpath.bench import (
    InsufficientReps,
    MetadataInvalid,
    RunConfig,
    RunnerFailure,
    RunTrace,
    ScenarioTimeout,
    ZeroBaseline,
    aggregate_runs,
    check_stability,
    discover_scenarios,
    measure_overhead,
    parse_scenario,
    profile_scenario,
    run_corpus,
    run_scenario,
    write_manifest,
)

from conftest import FIXTURES

GOLDEN_CORPUS = FIXTURES / "golden" / "corpus"


def write_scenario(tmp_path, scenario_id, category="B1", **overrides):
    doc = {
        "id": scenario_id,
        "category": category,
        "layer": "design",
        "phase": "import",
        "must_blame": ["heavy"],
        "must_not_blame": ["driver"],
        "params": {},
        "variant": "simulated",
        "tags": ["A1"],
    }
    doc.update(overrides)
    sdir = tmp_path / category / scenario_id
    sdir.mkdir(parents=True, exist_ok=True)
    (sdir / "scenario.json").write_text(json.dumps(doc))
    return sdir


def test_discover_golden_corpus():
    scenarios, problems = discover_scenarios(GOLDEN_CORPUS)
    assert [m.id for m in scenarios] == ["g1", "g2", "g3", "g4"]
    assert problems == []
    assert scenarios[0].category == "B1"
    assert scenarios[0].root == GOLDEN_CORPUS / "B1" / "g1"


def test_discover_reports_invalid_files(tmp_path):
    write_scenario(tmp_path, "ok")
    write_scenario(tmp_path, "broken", must_blame=["x"], must_not_blame=["x"])
    scenarios, problems = discover_scenarios(tmp_path)
    assert [m.id for m in scenarios] == ["ok"]
    assert len(problems) == 1
    assert "overlap" in problems[0].reason


def test_discover_empty_dir(tmp_path):
    assert discover_scenarios(tmp_path) == ([], [])


def test_discover_missing_dir(tmp_path):
    with pytest.raises(OSError):
        discover_scenarios(tmp_path / "nope")


def test_discover_all_invalid_raises(tmp_path):
    write_scenario(tmp_path, "bad1", category="B99")
    with pytest.raises(MetadataInvalid):
        discover_scenarios(tmp_path)


def test_discover_duplicate_ids(tmp_path):
    write_scenario(tmp_path, "dup", category="B1")
    write_scenario(tmp_path, "dup", category="B2")
    with pytest.raises(MetadataInvalid, match="duplicate"):
        discover_scenarios(tmp_path)


@pytest.mark.parametrize("field,value,msg", [
    ("category", "B9", "category"),
    ("layer", "kernel", "layer"),
    ("phase", "sometime", "phase"),
    ("must_blame", [], "must_blame"),
    ("variant", "hybrid", "variant"),
    ("tags", ["Z9"], "tags"),
    ("params", [1], "params"),
])
def test_parse_scenario_validation(tmp_path, field, value, msg):
    sdir = write_scenario(tmp_path, "s", **{field: value})
    with pytest.raises(MetadataInvalid, match=msg):
        parse_scenario(sdir / "scenario.json")


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig(repetitions=0)
    with pytest.raises(ValueError):
        RunConfig(cold_starts_per_rep=0)
    paper = RunConfig.paper_scale(seed=9)
    assert paper.cold_starts_per_rep == 500
    assert paper.repetitions == 5
    assert paper.seed == 9


def _trace_stub(rep, index, latency):
    from pathlib import Path

    return RunTrace(rep=rep, index=index, cold=Path("c"), warm=Path("w"),
                    latency_ns=latency)


def test_median_of_medians_example():
    # Reps [[1,2,3],[4,5,6],[7,8,9]] -> per-rep medians [2,5,8], grand 5.
    traces = [
        _trace_stub(rep, i, lat)
        for rep, lats in enumerate([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
        for i, lat in enumerate(lats)
    ]
    result = aggregate_runs("s", traces)
    assert result.per_rep_medians == (2, 5, 8)
    assert result.grand_median_ns == 5


def test_aggregation_order_independent():
    latencies = [[10, 30, 20], [40, 60, 50]]
    traces = [
        _trace_stub(rep, i, lat)
        for rep, lats in enumerate(latencies)
        for i, lat in enumerate(lats)
    ]
    shuffled = list(traces)
    random.Random(1).shuffle(shuffled)
    assert aggregate_runs("s", traces) == aggregate_runs("s", shuffled)


def test_median_of_medians_permutation_within_reps():
    base = [[5, 1, 9], [4, 8, 6]]
    traces_a = [_trace_stub(r, i, v) for r, lats in enumerate(base) for i, v in enumerate(lats)]
    permuted = [list(reversed(lats)) for lats in base]
    traces_b = [_trace_stub(r, i, v) for r, lats in enumerate(permuted) for i, v in enumerate(lats)]
    assert aggregate_runs("s", traces_a).per_rep_medians == aggregate_runs("s", traces_b).per_rep_medians


def test_single_repetition_spread_zero():
    result = aggregate_runs("s", [_trace_stub(0, 0, 5), _trace_stub(0, 1, 7)])
    assert result.rel_spread == 0.0
    with pytest.raises(InsufficientReps):
        check_stability(result)


def test_stability_pass_example():
    # Hand arithmetic: (103 - 100) / 102 = 2.94%.
    result = aggregate_runs("s", [_trace_stub(0, 0, 100), _trace_stub(1, 0, 102),
                                  _trace_stub(2, 0, 103)])
    check = check_stability(result)
    assert check.passed
    assert check.rel_spread == pytest.approx(3 / 102)


def test_stability_fail_example():
    # (120 - 100) / 110 = 18.2%.
    result = aggregate_runs("s", [_trace_stub(0, 0, 100), _trace_stub(1, 0, 120)])
    check = check_stability(result)
    assert not check.passed
    assert check.rel_spread == pytest.approx(20 / 110)


def _cfg(stub_runner, **kw):
    kw.setdefault("cold_starts_per_rep", 3)
    kw.setdefault("repetitions", 2)
    kw.setdefault("timeout_s", 30.0)
    kw.setdefault("runner", stub_runner)
    return RunConfig(**kw)


def test_run_scenario_with_stub(tmp_path, stub_runner):
    sdir = write_scenario(tmp_path / "corpus", "alpha")
    meta = parse_scenario(sdir / "scenario.json")
    result = run_scenario(meta, _cfg(stub_runner), tmp_path / "out")
    assert result.scenario_id == "alpha"
    assert len(result.per_rep_medians) == 2
    assert len(result.traces) == 6
    for trace in result.traces:
        assert trace.cold.exists()
        assert trace.warm.exists()
        assert trace.latency_ns > 0
    # Stub latency grows by 200us per rep; medians must reflect rep order.
    assert result.per_rep_medians[1] == result.per_rep_medians[0] + 200_000


def test_runner_failure_surfaces_output(tmp_path, stub_runner):
    sdir = write_scenario(tmp_path / "corpus", "crash-case")
    meta = parse_scenario(sdir / "scenario.json")
    with pytest.raises(RunnerFailure, match="synthetic failure"):
        run_scenario(meta, _cfg(stub_runner), tmp_path / "out")


def test_runner_timeout(tmp_path, stub_runner):
    sdir = write_scenario(tmp_path / "corpus", "hang-case")
    meta = parse_scenario(sdir / "scenario.json")
    with pytest.raises(ScenarioTimeout):
        run_scenario(meta, _cfg(stub_runner, timeout_s=1.5, cold_starts_per_rep=1,
                                repetitions=1), tmp_path / "out")


def test_measure_overhead_pass(tmp_path, stub_runner):
    sdir = write_scenario(tmp_path / "corpus", "alpha")
    meta = parse_scenario(sdir / "scenario.json")
    result = measure_overhead(meta, _cfg(stub_runner), tmp_path / "out")
    assert result.passed
    assert result.ratio == pytest.approx(0.05, abs=0.002)


def test_measure_overhead_fail(tmp_path, stub_runner):
    sdir = write_scenario(tmp_path / "corpus", "slowtracer")
    meta = parse_scenario(sdir / "scenario.json")
    result = measure_overhead(meta, _cfg(stub_runner), tmp_path / "out")
    assert not result.passed
    assert result.ratio > 0.10


def test_measure_overhead_zero_baseline(tmp_path, stub_runner):
    sdir = write_scenario(tmp_path / "corpus", "zero")
    meta = parse_scenario(sdir / "scenario.json")
    with pytest.raises(ZeroBaseline):
        measure_overhead(meta, _cfg(stub_runner), tmp_path / "out")


def test_run_corpus_randomized_matches_sequential(tmp_path, stub_runner):
    corpus = tmp_path / "corpus"
    write_scenario(corpus, "alpha")
    write_scenario(corpus, "beta", category="B2")
    scenarios, _ = discover_scenarios(corpus)
    shuffled = run_corpus(scenarios, _cfg(stub_runner, randomize_order=True, seed=3),
                          tmp_path / "o1")
    ordered = run_corpus(scenarios, _cfg(stub_runner, randomize_order=False),
                         tmp_path / "o2")
    assert [r.scenario_id for r in shuffled] == [r.scenario_id for r in ordered]
    assert [r.per_rep_medians for r in shuffled] == [r.per_rep_medians for r in ordered]


def test_profile_scenario(tmp_path, stub_runner):
    sdir = write_scenario(tmp_path / "corpus", "alpha")
    meta = parse_scenario(sdir / "scenario.json")
    cold, warm = profile_scenario(meta, _cfg(stub_runner), tmp_path / "out",
                                  warm_invocations=5)
    assert cold.exists() and warm.exists()
    warm_lines = warm.read_text().splitlines()
    assert sum(1 for ln in warm_lines if '"invoke_end"' in ln) == 5


def test_scratch_env_override(tmp_path, stub_runner, monkeypatch):
    scratch = tmp_path / "elsewhere"
    monkeypatch.setenv("COLDPATH_SCRATCH", str(scratch))
    sdir = write_scenario(tmp_path / "corpus", "alpha")
    meta = parse_scenario(sdir / "scenario.json")
    result = run_scenario(meta, _cfg(stub_runner, repetitions=1, cold_starts_per_rep=1),
                          tmp_path / "out")
    assert result.traces[0].cold.is_relative_to(scratch)


def test_fresh_import_every_run(tmp_path, stub_runner):
    # Reset soundness: every cold start is a fresh process, so the blamed
    # module's import_begin shows up in every run's trace.
    from coldpath.trace import parse_trace

    sdir = write_scenario(tmp_path / "corpus", "alpha")
    meta = parse_scenario(sdir / "scenario.json")
    result = run_scenario(meta, _cfg(stub_runner), tmp_path / "out")
    for trace in result.traces:
        cold = parse_trace(trace.cold)
        begins = {r.data["mod"] for r in cold.records if r.kind == "import_begin"}
        assert set(meta.must_blame) <= begins


def test_manifest_roundtrip(tmp_path, stub_runner):
    sdir = write_scenario(tmp_path / "corpus", "alpha")
    meta = parse_scenario(sdir / "scenario.json")
    cfg = _cfg(stub_runner)
    result = run_scenario(meta, cfg, tmp_path / "out")
    stability = [check_stability(result)]
    path = tmp_path / "manifest.json"
    write_manifest(path, cfg, [result], stability=stability)
    doc = json.loads(path.read_text())
    assert doc["schema"] == 1
    assert doc["config"]["repetitions"] == 2
    assert doc["results"][0]["scenario"] == "alpha"
    assert len(doc["results"][0]["traces"]) == 6
    assert doc["stability"][0]["passed"] is True
