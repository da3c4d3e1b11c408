"""Periodic stack sampler.

A daemon thread reads the target thread's frames every interval and pushes
sample records into a bounded queue; the invocation loop drains the queue
into the warm-trace writer, keeping record emission single-writer. Samples
are only collected while the warm phase is active, so import-phase frames
never pollute usage counts.
"""

from __future__ import annotations

import queue
import sys
import threading
import time

MAX_FRAMES = 128
QUEUE_CAPACITY = 4096


class Sampler(threading.Thread):
    def __init__(self, target_tid: int, interval_ms: int):
        super().__init__(name="coldtrace-sampler", daemon=True)
        self.target_tid = target_tid
        self.interval_s = max(interval_ms, 1) / 1000.0
        self.records: queue.Queue = queue.Queue(maxsize=QUEUE_CAPACITY)
        self.dropped = 0
        self._halt = threading.Event()

    def run(self) -> None:
        while not self._halt.wait(self.interval_s):
            frame = sys._current_frames().get(self.target_tid)
            if frame is None:
                continue
            stack = []
            while frame is not None and len(stack) < MAX_FRAMES:
                code = frame.f_code
                stack.append({
                    "mod": frame.f_globals.get("__name__", "?"),
                    "fn": code.co_name,
                    "file": code.co_filename,
                    "line": max(frame.f_lineno or 1, 1),
                })
                frame = frame.f_back
            record = ("sample", time.perf_counter_ns(), self.target_tid, {"stack": stack})
            try:
                self.records.put_nowait(record)
            except queue.Full:
                self.dropped += 1

    def stop(self) -> None:
        self._halt.set()
        self.join(timeout=5.0)

    def drain(self, writer) -> int:
        count = 0
        while True:
            try:
                kind, ts_ns, tid, payload = self.records.get_nowait()
            except queue.Empty:
                return count
            writer.append(kind, ts_ns, tid, payload)
            count += 1
