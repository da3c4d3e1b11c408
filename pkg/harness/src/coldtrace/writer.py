"""Buffered single-writer emission of the trace wire format.

Records are one JSON object per line with fields `k`, `ts_ns`, `tid` plus
kind-specific payload keys in a fixed order. Emission is serialized by a
lock; records are buffered and flushed at a record-count watermark and on
close, so a crash loses at most one buffer.

A begin record's payload stays mutable until its matching end releases it
(the module file path is only known after the load finishes), so flushing
never gets ahead of an open import.
"""

from __future__ import annotations

import json
import threading

FLUSH_WATERMARK = 2048

_FIELD_ORDER = {
    "meta": ("run_id", "phase", "schema", "clock"),
    "import_begin": ("mod", "parent", "depth", "file"),
    "import_end": ("mod", "dur_ns"),
    "invoke_begin": ("seq",),
    "invoke_end": ("seq",),
}


def record_line(kind: str, ts_ns: int, tid: int, payload: dict) -> str:
    obj = {"k": kind, "ts_ns": ts_ns, "tid": tid}
    if kind == "sample":
        obj["stack"] = payload["stack"]
        if "w" in payload:
            obj["w"] = payload["w"]
    else:
        for key in _FIELD_ORDER[kind]:
            obj[key] = payload[key]
    return json.dumps(obj, separators=(",", ":"))


class TraceWriter:
    def __init__(self, path: str, watermark: int = FLUSH_WATERMARK):
        self._fh = open(path, "w", encoding="utf-8")
        self._watermark = watermark
        self._lock = threading.Lock()
        self._pending: list[tuple[str, int, int, dict]] = []
        self._base = 0  # absolute index of _pending[0]
        self._held: set[int] = set()
        self._closed = False

    def append(self, kind: str, ts_ns: int, tid: int, payload: dict,
               hold: bool = False) -> int:
        """Queue one record; returns its token. With hold=True the record
        (and everything after it) stays buffered until release()."""
        with self._lock:
            token = self._base + len(self._pending)
            self._pending.append((kind, ts_ns, tid, payload))
            if hold:
                self._held.add(token)
            if len(self._pending) >= self._watermark:
                self._flush_locked()
            return token

    def release(self, token: int) -> None:
        with self._lock:
            self._held.discard(token)

    def _flush_locked(self, force: bool = False) -> None:
        if force:
            limit = self._base + len(self._pending)
        else:
            limit = min(self._held) if self._held else self._base + len(self._pending)
        count = limit - self._base
        if count <= 0:
            return
        chunk = self._pending[:count]
        del self._pending[:count]
        self._base += count
        self._fh.write("".join(record_line(*rec) + "\n" for rec in chunk))
        self._fh.flush()

    def flush(self) -> None:
        with self._lock:
            self._flush_locked()

    def close(self) -> None:
        with self._lock:
            if self._closed:
                return
            self._closed = True
            self._flush_locked(force=True)
            self._fh.close()
