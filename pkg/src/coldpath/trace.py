"""Trace wire format: parsing, validation, and serialization.

A trace file is UTF-8 text with one JSON object per line. Every record
carries ``k`` (kind), ``ts_ns`` (monotonic nanosecond timestamp) and
``tid`` (thread id), plus kind-specific fields:

    meta          run_id, phase ("cold"|"warm"), schema, clock
    import_begin  mod, parent (str|null), depth, file (str|null)
    import_end    mod, dur_ns
    sample        stack (list of {mod, fn, file, line}, index 0 innermost),
                  optional w (positive weight, default 1)
    invoke_begin  seq
    invoke_end    seq

The first record of a valid trace is the meta record (schema version 1).
Unknown kinds are skipped on parse and counted, so newer tracers stay
readable by older analyzers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterable, Mapping

SCHEMA_VERSION = 1

KIND_META = "meta"
KIND_IMPORT_BEGIN = "import_begin"
KIND_IMPORT_END = "import_end"
KIND_SAMPLE = "sample"
KIND_INVOKE_BEGIN = "invoke_begin"
KIND_INVOKE_END = "invoke_end"

KNOWN_KINDS = frozenset(
    {
        KIND_META,
        KIND_IMPORT_BEGIN,
        KIND_IMPORT_END,
        KIND_SAMPLE,
        KIND_INVOKE_BEGIN,
        KIND_INVOKE_END,
    }
)

PHASE_COLD = "cold"
PHASE_WARM = "warm"
PHASES = frozenset({PHASE_COLD, PHASE_WARM})


class MalformedTrace(ValueError):
    """The file is not a structurally valid trace (missing meta, bad field
    types, unsupported schema). Semantic problems such as unmatched imports
    are *not* parse errors; they are reported by :func:`validate_trace`."""


@dataclass(frozen=True)
class Frame:
    """One stack frame of a sample; index 0 in a stack is the innermost."""

    mod: str
    fn: str
    file: str | None
    line: int


@dataclass(frozen=True)
class TraceMeta:
    run_id: str
    phase: str
    schema: int
    clock: str


@dataclass(frozen=True)
class TraceRecord:
    """A single event. ``data`` holds the kind-specific payload with
    normalized values (sample stacks become tuples of :class:`Frame`)."""

    kind: str
    ts_ns: int
    tid: int
    data: Mapping[str, Any]


@dataclass(frozen=True)
class Trace:
    """An immutable, time-ordered event sequence.

    ``records`` includes the meta record (always index 0) and is sorted by
    ``ts_ns`` with ties kept in original file order. ``skipped`` counts
    unknown-kind lines dropped during parsing.
    """

    meta: TraceMeta
    records: tuple[TraceRecord, ...]
    skipped: int = 0

    @property
    def entry_ts_ns(self) -> int:
        """Timestamp of the meta record, i.e. the process-entry marker."""
        return self.records[0].ts_ns


@dataclass(frozen=True)
class Violation:
    """One semantic rule breach, pointing at the offending record index."""

    index: int
    rule: str
    detail: str

    def __str__(self) -> str:
        return f"{self.rule}@{self.index}: {self.detail}"


RULE_UNMATCHED_END = "UnmatchedEnd"
RULE_UNMATCHED_BEGIN = "UnmatchedBegin"
RULE_DEPTH = "DepthRule"
RULE_DURATION = "DurationRule"


def _bad(lineno: int, why: str) -> MalformedTrace:
    return MalformedTrace(f"line {lineno}: {why}")


def _req_int(obj: dict, key: str, lineno: int, minimum: int | None = None) -> int:
    val = obj.get(key)
    if not isinstance(val, int) or isinstance(val, bool):
        raise _bad(lineno, f"field {key!r} must be an integer")
    if minimum is not None and val < minimum:
        raise _bad(lineno, f"field {key!r} must be >= {minimum}")
    return val


def _req_str(obj: dict, key: str, lineno: int) -> str:
    val = obj.get(key)
    if not isinstance(val, str):
        raise _bad(lineno, f"field {key!r} must be a string")
    return val


def _opt_str(obj: dict, key: str, lineno: int) -> str | None:
    val = obj.get(key)
    if val is None or isinstance(val, str):
        return val
    raise _bad(lineno, f"field {key!r} must be a string or null")


def _parse_stack(obj: dict, lineno: int) -> tuple[Frame, ...]:
    raw = obj.get("stack")
    if not isinstance(raw, list) or not raw:
        raise _bad(lineno, "field 'stack' must be a non-empty array")
    frames = []
    for entry in raw:
        if not isinstance(entry, dict):
            raise _bad(lineno, "stack entries must be objects")
        mod = _req_str(entry, "mod", lineno)
        fn = _req_str(entry, "fn", lineno)
        file = _opt_str(entry, "file", lineno)
        line = _req_int(entry, "line", lineno, minimum=0)
        if file is not None and line < 1:
            raise _bad(lineno, "frames with a known file need line >= 1")
        frames.append(Frame(mod=mod, fn=fn, file=file, line=line))
    return tuple(frames)


def _parse_payload(kind: str, obj: dict, lineno: int) -> dict[str, Any]:
    if kind == KIND_META:
        phase = _req_str(obj, "phase", lineno)
        if phase not in PHASES:
            raise _bad(lineno, f"unknown phase {phase!r}")
        schema = _req_int(obj, "schema", lineno)
        if schema != SCHEMA_VERSION:
            raise _bad(lineno, f"unsupported schema {schema}")
        return {
            "run_id": _req_str(obj, "run_id", lineno),
            "phase": phase,
            "schema": schema,
            "clock": _req_str(obj, "clock", lineno),
        }
    if kind == KIND_IMPORT_BEGIN:
        return {
            "mod": _req_str(obj, "mod", lineno),
            "parent": _opt_str(obj, "parent", lineno),
            "depth": _req_int(obj, "depth", lineno, minimum=0),
            "file": _opt_str(obj, "file", lineno),
        }
    if kind == KIND_IMPORT_END:
        return {
            "mod": _req_str(obj, "mod", lineno),
            "dur_ns": _req_int(obj, "dur_ns", lineno, minimum=0),
        }
    if kind == KIND_SAMPLE:
        payload: dict[str, Any] = {"stack": _parse_stack(obj, lineno)}
        if "w" in obj:
            payload["w"] = _req_int(obj, "w", lineno, minimum=1)
        return payload
    # invoke_begin / invoke_end
    return {"seq": _req_int(obj, "seq", lineno, minimum=0)}


def parse_trace(path: str | Path) -> Trace:
    """Parse a trace file into a :class:`Trace`.

    Records are re-sorted by ``ts_ns`` (stable, so file order breaks ties).
    Raises :class:`MalformedTrace` on structural problems and propagates
    ``OSError`` for I/O failures.
    """
    records: list[TraceRecord] = []
    skipped = 0
    meta: TraceMeta | None = None
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError:
                raise _bad(lineno, "not valid JSON") from None
            if not isinstance(obj, dict):
                raise _bad(lineno, "record must be a JSON object")
            kind = obj.get("k")
            if not isinstance(kind, str):
                raise _bad(lineno, "field 'k' must be a string")
            if kind not in KNOWN_KINDS:
                skipped += 1
                continue
            ts_ns = _req_int(obj, "ts_ns", lineno, minimum=0)
            tid = _req_int(obj, "tid", lineno)
            payload = _parse_payload(kind, obj, lineno)
            if kind == KIND_META:
                if meta is not None:
                    raise _bad(lineno, "duplicate meta record")
                if records:
                    raise _bad(lineno, "meta must be the first record")
                meta = TraceMeta(
                    run_id=payload["run_id"],
                    phase=payload["phase"],
                    schema=payload["schema"],
                    clock=payload["clock"],
                )
            elif meta is None:
                raise MalformedTrace("missing meta")
            records.append(TraceRecord(kind=kind, ts_ns=ts_ns, tid=tid, data=payload))
    if meta is None:
        raise MalformedTrace("missing meta")
    records.sort(key=lambda rec: rec.ts_ns)
    if records[0].kind != KIND_META:
        raise MalformedTrace("meta record is not the earliest event")
    return Trace(meta=meta, records=tuple(records), skipped=skipped)


# Canonical field order per kind keeps serialized traces byte-stable.
_FIELD_ORDER = {
    KIND_META: ("run_id", "phase", "schema", "clock"),
    KIND_IMPORT_BEGIN: ("mod", "parent", "depth", "file"),
    KIND_IMPORT_END: ("mod", "dur_ns"),
    KIND_INVOKE_BEGIN: ("seq",),
    KIND_INVOKE_END: ("seq",),
}


def record_to_line(rec: TraceRecord) -> str:
    """Render one record as its canonical wire line (no newline)."""
    obj: dict[str, Any] = {"k": rec.kind, "ts_ns": rec.ts_ns, "tid": rec.tid}
    if rec.kind == KIND_SAMPLE:
        obj["stack"] = [
            {"mod": f.mod, "fn": f.fn, "file": f.file, "line": f.line}
            for f in rec.data["stack"]
        ]
        if "w" in rec.data:
            obj["w"] = rec.data["w"]
    else:
        for key in _FIELD_ORDER[rec.kind]:
            obj[key] = rec.data[key]
    return json.dumps(obj, separators=(",", ":"))


def serialize_trace(trace: Trace, path: str | Path) -> None:
    """Write ``trace`` back out in the wire format (meta record first)."""
    with open(path, "w", encoding="utf-8") as fh:
        for rec in trace.records:
            fh.write(record_to_line(rec))
            fh.write("\n")


def validate_trace(trace: Trace) -> list[Violation]:
    """Check semantic invariants: per-thread LIFO import nesting, depth
    arithmetic, and the dur_ns/timestamp identity.

    Violations are data, not failures; the list is empty iff the trace is
    semantically clean.
    """
    violations: list[Violation] = []
    # Per-tid stack of open imports: (record index, mod, ts_ns, depth).
    stacks: dict[int, list[tuple[int, str, int, int]]] = {}
    for idx, rec in enumerate(trace.records):
        if rec.kind == KIND_IMPORT_BEGIN:
            stack = stacks.setdefault(rec.tid, [])
            parent = rec.data["parent"]
            depth = rec.data["depth"]
            if parent is not None:
                parent_depth = None
                for _, mod, _, open_depth in reversed(stack):
                    if mod == parent:
                        parent_depth = open_depth
                        break
                if parent_depth is None:
                    violations.append(
                        Violation(idx, RULE_DEPTH, f"parent {parent!r} is not an open import")
                    )
                elif depth != parent_depth + 1:
                    violations.append(
                        Violation(
                            idx,
                            RULE_DEPTH,
                            f"depth {depth} != parent depth {parent_depth} + 1",
                        )
                    )
            stack.append((idx, rec.data["mod"], rec.ts_ns, depth))
        elif rec.kind == KIND_IMPORT_END:
            stack = stacks.setdefault(rec.tid, [])
            mod = rec.data["mod"]
            if not stack or stack[-1][1] != mod:
                violations.append(
                    Violation(idx, RULE_UNMATCHED_END, f"no open import of {mod!r} on tid {rec.tid}")
                )
                continue
            _, _, begin_ts, _ = stack.pop()
            span = rec.ts_ns - begin_ts
            if rec.data["dur_ns"] != span:
                violations.append(
                    Violation(
                        idx,
                        RULE_DURATION,
                        f"dur_ns {rec.data['dur_ns']} != timestamp span {span}",
                    )
                )
    for stack in stacks.values():
        for idx, mod, _, _ in stack:
            violations.append(
                Violation(idx, RULE_UNMATCHED_BEGIN, f"import of {mod!r} never ended")
            )
    violations.sort(key=lambda v: v.index)
    return violations


def iter_import_pairs(trace: Trace) -> Iterable[tuple[TraceRecord, TraceRecord]]:
    """Yield matched (begin, end) record pairs in begin order.

    Assumes the trace validates with no unmatched imports.
    """
    pairs: list[tuple[int, TraceRecord, TraceRecord]] = []
    stacks: dict[int, list[tuple[int, TraceRecord]]] = {}
    for idx, rec in enumerate(trace.records):
        if rec.kind == KIND_IMPORT_BEGIN:
            stacks.setdefault(rec.tid, []).append((idx, rec))
        elif rec.kind == KIND_IMPORT_END:
            stack = stacks.get(rec.tid)
            if stack and stack[-1][1].data["mod"] == rec.data["mod"]:
                begin_idx, begin = stack.pop()
                pairs.append((begin_idx, begin, rec))
    pairs.sort(key=lambda item: item[0])
    for _, begin, end in pairs:
        yield begin, end
