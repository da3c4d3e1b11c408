"""Blame selection and verdict evaluation against scenario ground truth.

A verdict's true/false positives are counted only against the scenario's
declared must_blame / must_not_blame lists; modules with no declared
polarity are ignored. Corpus metrics sum the per-scenario counts and then
apply precision = tp/(tp+fp), recall = tp/(tp+fn), f1 = 2pr/(p+r), leaving
a ratio undefined (None) rather than zero when its denominator is empty.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING, Iterable, Mapping, Sequence

from .scoring import ModuleScore

if TYPE_CHECKING:
    from .bench import ScenarioMetadata

OUTCOME_SUCCESS = "success"
OUTCOME_PARTIAL = "partial"
OUTCOME_MISS = "miss"

# Worst-first ordering used when a category aggregates several scenarios.
_OUTCOME_RANK = {OUTCOME_MISS: 0, OUTCOME_PARTIAL: 1, OUTCOME_SUCCESS: 2}

DEFAULT_THETA = 0.5
DEFAULT_FLOOR_NS = 10_000_000


class ScenarioMismatch(ValueError):
    pass


class UnknownScenarioId(KeyError):
    pass


class MalformedVerdictFile(ValueError):
    pass


@dataclass(frozen=True)
class BlameVerdict:
    scenario_id: str
    blamed: frozenset[str]
    tool_id: str


@dataclass(frozen=True)
class EvalResult:
    scenario_id: str
    tp: int
    fp: int
    fn: int
    outcome: str


@dataclass(frozen=True)
class CorpusMetrics:
    tp: int
    fp: int
    fn: int
    precision: float | None
    recall: float | None
    f1: float | None


@dataclass(frozen=True)
class ToolComparison:
    tool_id: str
    metrics: CorpusMetrics
    results: Mapping[str, EvalResult]
    categories: Mapping[str, str]


def select_blamed(
    ranked: Sequence[ModuleScore],
    theta: float = DEFAULT_THETA,
    floor_ns: int = DEFAULT_FLOOR_NS,
) -> set[str]:
    """Pick the blamed set: combined score within ``theta`` of the best,
    and exclusive init at least ``floor_ns`` so noise never gets flagged."""
    if not ranked:
        return set()
    max_combined = max(score.combined for score in ranked)
    return {
        score.module
        for score in ranked
        if score.combined >= theta * max_combined
        and score.init_exclusive_ns >= floor_ns
    }


def classify_outcome(tp: int, fp: int, fn: int) -> str:
    if tp == 0:
        return OUTCOME_MISS
    if fp == 0 and fn == 0:
        return OUTCOME_SUCCESS
    return OUTCOME_PARTIAL


def evaluate_scenario(verdict: BlameVerdict, truth: "ScenarioMetadata") -> EvalResult:
    """Score one verdict against one scenario's ground truth."""
    if verdict.scenario_id != truth.id:
        raise ScenarioMismatch(
            f"verdict is for {verdict.scenario_id!r}, truth is for {truth.id!r}"
        )
    must = set(truth.must_blame)
    must_not = set(truth.must_not_blame)
    tp = len(verdict.blamed & must)
    fp = len(verdict.blamed & must_not)
    fn = len(must - verdict.blamed)
    return EvalResult(
        scenario_id=truth.id,
        tp=tp,
        fp=fp,
        fn=fn,
        outcome=classify_outcome(tp, fp, fn),
    )


def f1_score(precision: float, recall: float) -> float:
    """Harmonic mean of precision and recall: 2pr / (p + r)."""
    if precision + recall == 0:
        raise ZeroDivisionError("p + r must be positive")
    return 2 * precision * recall / (precision + recall)


def aggregate_metrics(results: Iterable[EvalResult]) -> CorpusMetrics:
    tp = fp = fn = 0
    for res in results:
        tp += res.tp
        fp += res.fp
        fn += res.fn
    precision = tp / (tp + fp) if tp + fp > 0 else None
    recall = tp / (tp + fn) if tp + fn > 0 else None
    if precision is not None and recall is not None and precision + recall > 0:
        f1 = 2 * precision * recall / (precision + recall)
    else:
        f1 = None
    return CorpusMetrics(tp=tp, fp=fp, fn=fn, precision=precision, recall=recall, f1=f1)


def worst_outcome(outcomes: Iterable[str]) -> str:
    return min(outcomes, key=_OUTCOME_RANK.__getitem__)


def load_verdict_file(path: str | Path) -> tuple[str, dict[str, frozenset[str]]]:
    """Read a tool's verdict file: {"tool": ..., "verdicts": [{"scenario":
    ..., "blamed": [...]}, ...]}. Returns (tool_id, scenario -> blamed)."""
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise MalformedVerdictFile(f"{path}: not valid JSON ({exc})") from None
    if not isinstance(doc, dict) or not isinstance(doc.get("tool"), str):
        raise MalformedVerdictFile(f"{path}: needs a 'tool' string field")
    raw = doc.get("verdicts")
    if not isinstance(raw, list):
        raise MalformedVerdictFile(f"{path}: needs a 'verdicts' array")
    verdicts: dict[str, frozenset[str]] = {}
    for entry in raw:
        if (
            not isinstance(entry, dict)
            or not isinstance(entry.get("scenario"), str)
            or not isinstance(entry.get("blamed"), list)
            or not all(isinstance(mod, str) for mod in entry["blamed"])
        ):
            raise MalformedVerdictFile(
                f"{path}: each verdict needs a 'scenario' string and 'blamed' list"
            )
        verdicts[entry["scenario"]] = frozenset(entry["blamed"])
    return doc["tool"], verdicts


def compare_tools(
    verdict_files: Sequence[str | Path],
    truth_corpus: Sequence["ScenarioMetadata"],
) -> list[ToolComparison]:
    """Evaluate several tools' verdict files over one truth corpus.

    A scenario a tool stays silent on counts as an empty blame set. The
    per-category outcome is the worst outcome among that category's
    scenarios. Verdicts naming unknown scenario ids are an error.
    """
    by_id = {meta.id: meta for meta in truth_corpus}
    comparisons = []
    for path in verdict_files:
        tool_id, verdicts = load_verdict_file(path)
        for scenario_id in verdicts:
            if scenario_id not in by_id:
                raise UnknownScenarioId(scenario_id)
        results: dict[str, EvalResult] = {}
        for scenario_id in sorted(by_id):
            verdict = BlameVerdict(
                scenario_id=scenario_id,
                blamed=verdicts.get(scenario_id, frozenset()),
                tool_id=tool_id,
            )
            results[scenario_id] = evaluate_scenario(verdict, by_id[scenario_id])
        categories: dict[str, str] = {}
        for category in sorted({meta.category for meta in truth_corpus}):
            outcomes = [
                results[meta.id].outcome
                for meta in truth_corpus
                if meta.category == category
            ]
            categories[category] = worst_outcome(outcomes)
        comparisons.append(
            ToolComparison(
                tool_id=tool_id,
                metrics=aggregate_metrics(results.values()),
                results=results,
                categories=categories,
            )
        )
    comparisons.sort(key=lambda c: c.tool_id)
    return comparisons
