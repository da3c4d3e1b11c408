"""Calling-context tree construction from cold traces, plus warm-sample
usage attribution and the merge of the two into an annotated tree.

The tree mirrors import nesting: a node's inclusive time is the full span
of its import (nested imports included) and its exclusive time is that
span minus the direct children's inclusive times, an exact integer
identity that holds at every node.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping

from .trace import (
    KIND_IMPORT_BEGIN,
    KIND_IMPORT_END,
    KIND_SAMPLE,
    PHASE_COLD,
    PHASE_WARM,
    RULE_UNMATCHED_BEGIN,
    RULE_UNMATCHED_END,
    Trace,
    validate_trace,
)

ROOT_NAME = "<root>"


class InvalidPhase(ValueError):
    """A trace was passed to an operation expecting the other phase."""


class UnmatchedImports(ValueError):
    """The cold trace has unmatched import begin/end events."""


@dataclass(frozen=True)
class CctNode:
    module: str
    file: str | None
    inclusive_ns: int
    exclusive_ns: int
    children: tuple["CctNode", ...]


@dataclass(frozen=True)
class UsageTable:
    """Per-module warm usage: how many samples contained the module at
    least once. Weighted samples count their weight."""

    counts: Mapping[str, int]
    total_samples: int

    def get(self, module: str) -> int:
        return self.counts.get(module, 0)


@dataclass(frozen=True)
class AnnotatedCct:
    root: CctNode
    usage: Mapping[str, int]
    untraced: tuple[str, ...]
    total_init_ns: int


class _Builder:
    """Mutable node used while folding the event stream; frozen at the end."""

    __slots__ = ("module", "file", "begin_ts", "inclusive_ns", "childmap")

    def __init__(self, module: str, file: str | None, begin_ts: int):
        self.module = module
        self.file = file
        self.begin_ts = begin_ts
        self.inclusive_ns = 0
        self.childmap: dict[str, _Builder] = {}

    def absorb(self, other: "_Builder") -> None:
        # Duplicate fresh loads of one module under the same parent merge:
        # durations add and subtrees fold together.
        self.inclusive_ns += other.inclusive_ns
        if self.file is None:
            self.file = other.file
        for child in other.childmap.values():
            _attach(self.childmap, child)

    def freeze(self) -> CctNode:
        children = tuple(child.freeze() for child in self.childmap.values())
        exclusive = self.inclusive_ns - sum(c.inclusive_ns for c in children)
        return CctNode(
            module=self.module,
            file=self.file,
            inclusive_ns=self.inclusive_ns,
            exclusive_ns=exclusive,
            children=children,
        )


def _attach(childmap: dict[str, "_Builder"], node: "_Builder") -> None:
    existing = childmap.get(node.module)
    if existing is None:
        childmap[node.module] = node
    else:
        existing.absorb(node)


def build_cct(cold: Trace) -> CctNode:
    """Fold the cold trace's import events into a tree under a synthetic
    root. Per-thread nesting stacks are built independently and their
    top-level imports merge under the one root.
    """
    if cold.meta.phase != PHASE_COLD:
        raise InvalidPhase(f"expected a cold trace, got phase {cold.meta.phase!r}")
    unmatched = [
        v
        for v in validate_trace(cold)
        if v.rule in (RULE_UNMATCHED_BEGIN, RULE_UNMATCHED_END)
    ]
    if unmatched:
        raise UnmatchedImports("; ".join(str(v) for v in unmatched))

    top: dict[str, _Builder] = {}
    stacks: dict[int, list[_Builder]] = {}
    for rec in cold.records:
        if rec.kind == KIND_IMPORT_BEGIN:
            stacks.setdefault(rec.tid, []).append(
                _Builder(rec.data["mod"], rec.data["file"], rec.ts_ns)
            )
        elif rec.kind == KIND_IMPORT_END:
            stack = stacks[rec.tid]
            frame = stack.pop()
            frame.inclusive_ns = rec.ts_ns - frame.begin_ts
            _attach(stack[-1].childmap if stack else top, frame)

    children = tuple(frame.freeze() for frame in top.values())
    total = sum(c.inclusive_ns for c in children)
    return CctNode(
        module=ROOT_NAME,
        file=None,
        inclusive_ns=total,
        exclusive_ns=0,
        children=children,
    )


def attribute_usage(warm: Trace) -> UsageTable:
    """Count, per module, the warm samples containing at least one frame
    from that module. A module in several frames of one sample counts once.
    """
    if warm.meta.phase != PHASE_WARM:
        raise InvalidPhase(f"expected a warm trace, got phase {warm.meta.phase!r}")
    counts: dict[str, int] = {}
    total = 0
    for rec in warm.records:
        if rec.kind != KIND_SAMPLE:
            continue
        weight = rec.data.get("w", 1)
        total += weight
        for mod in {frame.mod for frame in rec.data["stack"]}:
            counts[mod] = counts.get(mod, 0) + weight
    return UsageTable(counts=counts, total_samples=total)


def merge(root: CctNode, usage: UsageTable) -> AnnotatedCct:
    """Align the tree with the usage table. Every tree module gets a usage
    entry (default 0); modules seen in samples but absent from the tree are
    kept aside as used-but-untraced names.
    """
    tree_modules = {node.module for node, _ in iter_nodes(root) if node.module != ROOT_NAME}
    full = {mod: usage.get(mod) for mod in tree_modules}
    untraced = tuple(sorted(set(usage.counts) - tree_modules))
    return AnnotatedCct(
        root=root,
        usage=full,
        untraced=untraced,
        total_init_ns=root.inclusive_ns,
    )


def iter_nodes(root: CctNode) -> Iterator[tuple[CctNode, CctNode | None]]:
    """Pre-order walk yielding (node, parent) pairs, root included."""
    stack: list[tuple[CctNode, CctNode | None]] = [(root, None)]
    while stack:
        node, parent = stack.pop()
        yield node, parent
        for child in reversed(node.children):
            stack.append((child, node))
