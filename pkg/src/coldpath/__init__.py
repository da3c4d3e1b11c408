"""coldpath: cold-start attribution toolkit.

Records of import-phase and warm-execution traces are merged into an
annotated calling-context tree, modules are ranked by usage-normalized
initialization inefficiency, and blame verdicts are evaluated against a
benchmark corpus with explicit ground truth.
"""

from .cct import AnnotatedCct, CctNode, UsageTable, attribute_usage, build_cct, merge
from .evaluate import (
    BlameVerdict,
    CorpusMetrics,
    EvalResult,
    aggregate_metrics,
    compare_tools,
    evaluate_scenario,
    select_blamed,
)
from .scoring import ModuleScore, combined_score, rank_modules, score_cct, u_score
from .stats import cliffs_delta, holm_bonferroni, mann_whitney_u, wilcoxon_signed_rank
from .trace import Trace, TraceRecord, parse_trace, serialize_trace, validate_trace

__version__ = "0.1.0"

__all__ = [
    "AnnotatedCct",
    "BlameVerdict",
    "CctNode",
    "CorpusMetrics",
    "EvalResult",
    "ModuleScore",
    "Trace",
    "TraceRecord",
    "UsageTable",
    "aggregate_metrics",
    "attribute_usage",
    "build_cct",
    "cliffs_delta",
    "combined_score",
    "compare_tools",
    "evaluate_scenario",
    "holm_bonferroni",
    "mann_whitney_u",
    "merge",
    "parse_trace",
    "rank_modules",
    "score_cct",
    "select_blamed",
    "serialize_trace",
    "u_score",
    "validate_trace",
    "wilcoxon_signed_rank",
]
