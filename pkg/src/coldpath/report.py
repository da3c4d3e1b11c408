"""Report rendering: the three analysis views as deterministic text,
static HTML, or JSON, plus the cross-tool comparison table.

The overhead view ranks modules by initialization cost, the priority view
ranks them by the combined inefficiency score, and the source view maps
each blamed module to its import site. Output is a pure function of the
inputs and configuration; no timestamps enter the document body, so
identical inputs render byte-identical documents.
"""

from __future__ import annotations

import html as _html
import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Sequence

from .cct import ROOT_NAME, AnnotatedCct, iter_nodes
from .evaluate import DEFAULT_FLOOR_NS, DEFAULT_THETA, ToolComparison, select_blamed
from .scoring import BASIS_EXCLUSIVE, DEFAULT_W_LATENCY, DEFAULT_W_USAGE, ModuleScore
from .stats import EffectSize, TestResult

REPORT_SCHEMA = 1

FORMAT_TEXT = "text"
FORMAT_HTML = "html"
FORMAT_JSON = "json"
FORMATS = (FORMAT_TEXT, FORMAT_HTML, FORMAT_JSON)

OUTCOME_MARKS = {"success": "ok", "partial": "partial", "miss": "x"}


class InconsistentInputs(ValueError):
    """Scores reference modules that are not in the tree."""


class UnsupportedSchema(ValueError):
    pass


@dataclass(frozen=True)
class ReportConfig:
    w_latency: float = DEFAULT_W_LATENCY
    w_usage: float = DEFAULT_W_USAGE
    theta: float = DEFAULT_THETA
    floor_ns: int = DEFAULT_FLOOR_NS
    seed: int = 0
    basis: str = BASIS_EXCLUSIVE


@dataclass(frozen=True)
class SourceSite:
    module: str
    file: str | None
    line: int | None
    imported_by: str | None


@dataclass(frozen=True)
class Report:
    config: ReportConfig
    total_init_ns: int
    overhead: tuple[ModuleScore, ...]
    priority: tuple[ModuleScore, ...]
    source: tuple[SourceSite, ...]
    untraced: tuple[str, ...]


_IMPORT_SITE_CACHE: dict[tuple[str, str], int | None] = {}


def find_import_site(parent_file: str | Path, module: str) -> int | None:
    """First line in ``parent_file`` whose import statement names
    ``module``; None when the file is unreadable or has no match."""
    key = (str(parent_file), module)
    if key in _IMPORT_SITE_CACHE:
        return _IMPORT_SITE_CACHE[key]
    leaf = module.rsplit(".", 1)[-1]
    package = module.rsplit(".", 1)[0] if "." in module else None
    patterns = [
        re.compile(rf"^\s*import\s+{re.escape(module)}\b"),
        re.compile(rf"^\s*from\s+{re.escape(module)}\s+import\b"),
    ]
    if package:
        patterns.append(
            re.compile(rf"^\s*from\s+{re.escape(package)}\s+import\b.*\b{re.escape(leaf)}\b")
        )
    result = None
    try:
        text = Path(parent_file).read_text(encoding="utf-8", errors="replace")
    except OSError:
        text = None
    if text is not None:
        for lineno, line in enumerate(text.splitlines(), start=1):
            if any(p.match(line) for p in patterns):
                result = lineno
                break
    _IMPORT_SITE_CACHE[key] = result
    return result


def _source_sites(annotated: AnnotatedCct, blamed: set[str]) -> tuple[SourceSite, ...]:
    located: dict[str, SourceSite] = {}
    for node, parent in iter_nodes(annotated.root):
        if node.module not in blamed or node.module in located:
            continue
        if parent is not None and parent.module != ROOT_NAME and parent.file:
            site_file = parent.file
            line = find_import_site(parent.file, node.module)
            imported_by = parent.module
        else:
            site_file = node.file
            line = None
            imported_by = None if parent is None or parent.module == ROOT_NAME else parent.module
        located[node.module] = SourceSite(
            module=node.module, file=site_file, line=line, imported_by=imported_by
        )
    return tuple(located[mod] for mod in sorted(located))


def build_report(
    annotated: AnnotatedCct,
    scores: Sequence[ModuleScore],
    config: ReportConfig = ReportConfig(),
) -> Report:
    """Assemble the three views from an annotated tree and its scores."""
    tree_modules = {
        node.module for node, _ in iter_nodes(annotated.root) if node.module != ROOT_NAME
    }
    unknown = sorted({s.module for s in scores} - tree_modules)
    if unknown:
        raise InconsistentInputs(f"scores reference modules not in the tree: {unknown}")
    overhead = tuple(
        sorted(scores, key=lambda s: (-s.init_exclusive_ns, s.module))
    )
    priority = tuple(sorted(scores, key=lambda s: s.rank))
    blamed = select_blamed(list(scores), theta=config.theta, floor_ns=config.floor_ns)
    return Report(
        config=config,
        total_init_ns=annotated.total_init_ns,
        overhead=overhead,
        priority=priority,
        source=_source_sites(annotated, blamed),
        untraced=annotated.untraced,
    )


def _ms(ns: int | float) -> str:
    return f"{ns / 1_000_000:.3f}"


def render_report(report: Report, fmt: str = FORMAT_TEXT) -> str:
    if fmt == FORMAT_TEXT:
        return _render_text(report)
    if fmt == FORMAT_HTML:
        return _render_html(report)
    if fmt == FORMAT_JSON:
        return _render_json(report)
    raise ValueError(f"unknown format {fmt!r}")


def _config_echo(config: ReportConfig) -> str:
    return (
        f"weights={config.w_latency:g},{config.w_usage:g} theta={config.theta:g} "
        f"floor_ms={config.floor_ns / 1_000_000:g} basis={config.basis} seed={config.seed}"
    )


def _render_text(report: Report) -> str:
    lines = ["# Cold-Start Profile", f"config: {_config_echo(report.config)}"]
    lines.append(f"total_init_ms: {_ms(report.total_init_ns)}")
    lines.append("")
    lines.append("[Initialization Overhead View]")
    lines.append("  excl_ms     incl_ms  module")
    for score in report.overhead:
        lines.append(
            f"  {_ms(score.init_exclusive_ns):>9}  {_ms(score.init_inclusive_ns):>9}  {score.module}"
        )
    lines.append("")
    lines.append("[Inefficiency Prioritization View]")
    lines.append("  rank  combined  u_score_ms  usage  module")
    for score in report.priority:
        lines.append(
            f"  {score.rank:>4}  {score.combined:8.4f}  {_ms(score.u_score):>10}"
            f"  {score.usage_count:>5}  {score.module}"
        )
    lines.append("")
    lines.append("[Source-Level Context View] (blamed modules)")
    if report.source:
        for site in report.source:
            where = site.file or "<unknown>"
            if site.line is not None:
                where = f"{where}:{site.line}"
            via = f" (imported by {site.imported_by})" if site.imported_by else ""
            lines.append(f"  {site.module}  {where}{via}")
    else:
        lines.append("  (none blamed)")
    if report.untraced:
        lines.append("")
        lines.append("used but never traced: " + ", ".join(report.untraced))
    return "\n".join(lines) + "\n"


_SORT_JS = """
function sortTable(table, col, numeric) {
  var rows = Array.from(table.tBodies[0].rows);
  var dir = table.dataset.dir === 'asc' ? -1 : 1;
  table.dataset.dir = dir === 1 ? 'asc' : 'desc';
  rows.sort(function (a, b) {
    var x = a.cells[col].textContent, y = b.cells[col].textContent;
    if (numeric) { return dir * (parseFloat(x) - parseFloat(y)); }
    return dir * x.localeCompare(y);
  });
  rows.forEach(function (r) { table.tBodies[0].appendChild(r); });
}
document.querySelectorAll('th').forEach(function (th) {
  th.addEventListener('click', function () {
    var table = th.closest('table');
    sortTable(table, th.cellIndex, th.dataset.numeric === '1');
  });
});
""".strip()


def _table(headers: Sequence[tuple[str, bool]], rows: Sequence[Sequence[str]]) -> list[str]:
    out = ["<table>", "<thead><tr>"]
    for name, numeric in headers:
        out.append(f'<th data-numeric="{1 if numeric else 0}">{_html.escape(name)}</th>')
    out.append("</tr></thead>")
    out.append("<tbody>")
    for row in rows:
        cells = "".join(f"<td>{_html.escape(cell)}</td>" for cell in row)
        out.append(f"<tr>{cells}</tr>")
    out.append("</tbody></table>")
    return out


def _render_html(report: Report) -> str:
    parts = [
        "<!DOCTYPE html>",
        "<html><head><meta charset='utf-8'><title>Cold-Start Profile</title>",
        "<style>body{font-family:monospace}table{border-collapse:collapse;margin:1em 0}"
        "th,td{border:1px solid #999;padding:2px 8px}th{cursor:pointer;background:#eee}</style>",
        "</head><body>",
        "<h1>Cold-Start Profile</h1>",
        f"<p>config: {_html.escape(_config_echo(report.config))}</p>",
        f"<p>total_init_ms: {_ms(report.total_init_ns)}</p>",
        "<h2>Initialization Overhead View</h2>",
    ]
    parts.extend(
        _table(
            [("module", False), ("excl_ms", True), ("incl_ms", True)],
            [
                (s.module, _ms(s.init_exclusive_ns), _ms(s.init_inclusive_ns))
                for s in report.overhead
            ],
        )
    )
    parts.append("<h2>Inefficiency Prioritization View</h2>")
    parts.extend(
        _table(
            [
                ("rank", True),
                ("module", False),
                ("combined", True),
                ("u_score_ms", True),
                ("usage", True),
            ],
            [
                (str(s.rank), s.module, f"{s.combined:.4f}", _ms(s.u_score), str(s.usage_count))
                for s in report.priority
            ],
        )
    )
    parts.append("<h2>Source-Level Context View (blamed modules)</h2>")
    parts.extend(
        _table(
            [("module", False), ("site", False), ("imported_by", False)],
            [
                (
                    site.module,
                    (site.file or "<unknown>")
                    + (f":{site.line}" if site.line is not None else ""),
                    site.imported_by or "",
                )
                for site in report.source
            ],
        )
    )
    if report.untraced:
        parts.append(
            "<p>used but never traced: " + _html.escape(", ".join(report.untraced)) + "</p>"
        )
    parts.append(f"<script>{_SORT_JS}</script>")
    parts.append("</body></html>")
    return "\n".join(parts) + "\n"


def _score_obj(score: ModuleScore) -> dict[str, Any]:
    return {
        "module": score.module,
        "init_exclusive_ns": score.init_exclusive_ns,
        "init_inclusive_ns": score.init_inclusive_ns,
        "usage_count": score.usage_count,
        "u_score": score.u_score,
        "combined": score.combined,
        "rank": score.rank,
    }


def _render_json(report: Report) -> str:
    doc = {
        "schema": REPORT_SCHEMA,
        "config": {
            "w_latency": report.config.w_latency,
            "w_usage": report.config.w_usage,
            "theta": report.config.theta,
            "floor_ns": report.config.floor_ns,
            "seed": report.config.seed,
            "basis": report.config.basis,
        },
        "total_init_ns": report.total_init_ns,
        "overhead": [_score_obj(s) for s in report.overhead],
        "priority": [_score_obj(s) for s in report.priority],
        "source": [
            {
                "module": site.module,
                "file": site.file,
                "line": site.line,
                "imported_by": site.imported_by,
            }
            for site in report.source
        ],
        "untraced": list(report.untraced),
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def load_report_json(text: str) -> Report:
    """Re-import a JSON export; validates the embedded schema version."""
    doc = json.loads(text)
    if not isinstance(doc, dict) or doc.get("schema") != REPORT_SCHEMA:
        raise UnsupportedSchema(f"expected report schema {REPORT_SCHEMA}")
    cfg = doc["config"]
    config = ReportConfig(
        w_latency=cfg["w_latency"],
        w_usage=cfg["w_usage"],
        theta=cfg["theta"],
        floor_ns=cfg["floor_ns"],
        seed=cfg["seed"],
        basis=cfg["basis"],
    )

    def scores(key: str) -> tuple[ModuleScore, ...]:
        return tuple(
            ModuleScore(
                module=obj["module"],
                init_exclusive_ns=obj["init_exclusive_ns"],
                init_inclusive_ns=obj["init_inclusive_ns"],
                usage_count=obj["usage_count"],
                u_score=obj["u_score"],
                combined=obj["combined"],
                rank=obj["rank"],
            )
            for obj in doc[key]
        )

    return Report(
        config=config,
        total_init_ns=doc["total_init_ns"],
        overhead=scores("overhead"),
        priority=scores("priority"),
        source=tuple(
            SourceSite(
                module=obj["module"],
                file=obj["file"],
                line=obj["line"],
                imported_by=obj["imported_by"],
            )
            for obj in doc["source"]
        ),
        untraced=tuple(doc["untraced"]),
    )


@dataclass(frozen=True)
class PairwiseStat:
    tool_a: str
    tool_b: str
    test: TestResult
    effect: EffectSize
    rejected: bool


def render_comparison(
    comparisons: Sequence[ToolComparison],
    categories: Sequence[str],
    pairwise: Sequence[PairwiseStat] = (),
    fmt: str = FORMAT_TEXT,
) -> str:
    """Render the multi-tool table: one metrics row per tool plus the
    per-category outcome matrix and any pairwise statistics."""
    if fmt == FORMAT_JSON:
        doc = {
            "schema": REPORT_SCHEMA,
            "tools": [
                {
                    "tool": comp.tool_id,
                    "tp": comp.metrics.tp,
                    "fp": comp.metrics.fp,
                    "fn": comp.metrics.fn,
                    "precision": comp.metrics.precision,
                    "recall": comp.metrics.recall,
                    "f1": comp.metrics.f1,
                    "categories": dict(comp.categories),
                    "scenarios": {
                        sid: {
                            "tp": res.tp,
                            "fp": res.fp,
                            "fn": res.fn,
                            "outcome": res.outcome,
                        }
                        for sid, res in comp.results.items()
                    },
                }
                for comp in comparisons
            ],
            "pairwise": [
                {
                    "tools": [p.tool_a, p.tool_b],
                    "statistic": p.test.statistic,
                    "p_value": p.test.p_value,
                    "method": p.test.method,
                    "delta": p.effect.delta,
                    "ci": [p.effect.ci_low, p.effect.ci_high],
                    "seed": p.effect.seed,
                    "rejected_after_holm": p.rejected,
                }
                for p in pairwise
            ],
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    def pct(x: float | None) -> str:
        return f"{100 * x:.1f}%" if x is not None else "n/a"

    lines = ["# Tool Comparison"]
    header = ["tool", "TP", "FP", "FN", "precision", "recall", "F1"] + list(categories)
    rows = []
    for comp in comparisons:
        rows.append(
            [
                comp.tool_id,
                str(comp.metrics.tp),
                str(comp.metrics.fp),
                str(comp.metrics.fn),
                pct(comp.metrics.precision),
                pct(comp.metrics.recall),
                pct(comp.metrics.f1),
            ]
            + [OUTCOME_MARKS.get(comp.categories.get(cat, ""), "-") for cat in categories]
        )
    widths = [max(len(header[i]), *(len(r[i]) for r in rows)) if rows else len(header[i]) for i in range(len(header))]
    lines.append("  ".join(h.ljust(widths[i]) for i, h in enumerate(header)))
    for row in rows:
        lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)))
    if pairwise:
        lines.append("")
        lines.append("pairwise tests over per-scenario outcome scores"
                     " (success=1, partial=0.5, miss=0):")
        for p in pairwise:
            lines.append(
                f"  {p.tool_a} vs {p.tool_b}: W={p.test.statistic:g} p={p.test.p_value:.4f}"
                f" ({p.test.method}) delta={p.effect.delta:+.3f}"
                f" ci=[{p.effect.ci_low:+.3f}, {p.effect.ci_high:+.3f}]"
                f" seed={p.effect.seed}"
                f" {'significant' if p.rejected else 'not significant'} after Holm"
            )
    return "\n".join(lines) + "\n"
