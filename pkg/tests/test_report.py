import json

import pytest

from coldpath.cct import attribute_usage, build_cct, merge
from coldpath.evaluate import compare_tools
from coldpath.report import (
    FORMAT_HTML,
    FORMAT_JSON,
    FORMAT_TEXT,
    InconsistentInputs,
    PairwiseStat,
    Report,
    ReportConfig,
    UnsupportedSchema,
    build_report,
    find_import_site,
    load_report_json,
    render_comparison,
    render_report,
)
from coldpath.scoring import ModuleScore, score_cct
from coldpath.stats import cliffs_delta, wilcoxon_signed_rank
from coldpath.trace import parse_trace

from conftest import FIXTURES, mk_meta

GOLDEN = FIXTURES / "golden"

MS = 1_000_000


@pytest.fixture(scope="module")
def g1_report():
    cold = parse_trace(GOLDEN / "traces" / "g1_cold.jsonl")
    warm = parse_trace(GOLDEN / "traces" / "g1_warm.jsonl")
    annotated = merge(build_cct(cold), attribute_usage(warm))
    scores = score_cct(annotated)
    return annotated, scores, build_report(annotated, scores)


def test_overhead_view_sorted_by_cost(g1_report):
    _, _, report = g1_report
    order = [s.module for s in report.overhead]
    assert order == ["chain_tail", "app", "util_a", "chain_head"]


def test_overhead_view_pairwise_example(tmp_path):
    from conftest import begin_rec, end_rec, meta_rec, trace_from
    from coldpath.cct import UsageTable

    cold = trace_from(tmp_path, [
        meta_rec(),
        begin_rec("second", 0), end_rec("second", 100 * MS, 100 * MS),
        begin_rec("first", 101 * MS), end_rec("first", 1001 * MS, 900 * MS),
    ])
    annotated = merge(build_cct(cold), UsageTable(counts={}, total_samples=0))
    report = build_report(annotated, score_cct(annotated))
    assert [s.module for s in report.overhead] == ["first", "second"]


def test_priority_view_is_rank_order(g1_report):
    _, scores, report = g1_report
    assert [s.module for s in report.priority] == [s.module for s in sorted(scores, key=lambda x: x.rank)]
    assert {s.module for s in report.priority} <= {s.module for s in report.overhead}


def test_source_view_contains_exactly_blamed(g1_report):
    _, _, report = g1_report
    assert [site.module for site in report.source] == ["chain_tail"]
    (site,) = report.source
    assert site.imported_by == "chain_head"
    assert site.file == "/g1/chain_head.py"
    assert site.line is None  # fixture path does not exist on disk


def test_renders_are_deterministic(g1_report):
    _, _, report = g1_report
    for fmt in (FORMAT_TEXT, FORMAT_HTML, FORMAT_JSON):
        assert render_report(report, fmt) == render_report(report, fmt)


def test_text_render_contents(g1_report):
    _, _, report = g1_report
    text = render_report(report, FORMAT_TEXT)
    assert "Initialization Overhead View" in text
    assert "Inefficiency Prioritization View" in text
    assert "Source-Level Context View" in text
    assert "chain_tail" in text
    assert "theta=0.5" in text


def test_html_render_contents(g1_report):
    _, _, report = g1_report
    html = render_report(report, FORMAT_HTML)
    assert html.startswith("<!DOCTYPE html>")
    assert "<td>chain_tail</td>" in html
    assert "sortTable" in html


def test_json_roundtrip_reconstructs_scores(g1_report):
    _, scores, report = g1_report
    doc = render_report(report, FORMAT_JSON)
    loaded = load_report_json(doc)
    assert loaded.priority == tuple(sorted(scores, key=lambda s: s.rank))
    assert loaded.config == report.config
    assert loaded.total_init_ns == report.total_init_ns
    assert render_report(loaded, FORMAT_JSON) == doc


def test_json_schema_validated():
    with pytest.raises(UnsupportedSchema):
        load_report_json(json.dumps({"schema": 99}))


def test_inconsistent_inputs(g1_report):
    annotated, scores, _ = g1_report
    foreign = ModuleScore("ghost", 1, 1, 0, 1.0, 0.5, 9)
    with pytest.raises(InconsistentInputs, match="ghost"):
        build_report(annotated, list(scores) + [foreign])


def test_unknown_format(g1_report):
    _, _, report = g1_report
    with pytest.raises(ValueError):
        render_report(report, "pdf")


def test_find_import_site(tmp_path):
    source = tmp_path / "parent.py"
    source.write_text(
        "import os\n"
        "from pkg.helpers import thing\n"
        "import pkg.core as core\n"
    )
    assert find_import_site(source, "os") == 1
    assert find_import_site(source, "pkg.helpers.thing") == 2
    assert find_import_site(source, "pkg.core") == 3
    assert find_import_site(source, "missing_mod") is None
    assert find_import_site(tmp_path / "absent.py", "os") is None


def test_render_comparison_text_and_json():
    truth = [mk_meta("s1", "B1", ["x"], []), mk_meta("s2", "B2", ["y"], [])]
    vdir = GOLDEN / "verdicts"
    comparisons = compare_tools([vdir / "toolx.json", vdir / "tooly.json"],
                                _golden_truth())
    pairwise = [
        PairwiseStat(
            tool_a="toolx",
            tool_b="tooly",
            test=wilcoxon_signed_rank([0.5, -0.5, 0.5, 0.5]),
            effect=cliffs_delta([0.5] * 4, [1, 0, 1, 0], seed=5),
            rejected=False,
        )
    ]
    text = render_comparison(comparisons, ["B1", "B2", "B3"], pairwise, FORMAT_TEXT)
    assert "toolx" in text and "tooly" in text
    assert "pairwise" in text
    doc = json.loads(render_comparison(comparisons, ["B1", "B2", "B3"], pairwise, FORMAT_JSON))
    assert [t["tool"] for t in doc["tools"]] == ["toolx", "tooly"]
    assert doc["pairwise"][0]["seed"] == 5


def _golden_truth():
    from coldpath.bench import discover_scenarios

    scenarios, _ = discover_scenarios(GOLDEN / "corpus")
    return scenarios
