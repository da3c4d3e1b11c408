"""Instrumentation of the import machinery.

Wraps importlib's module-resolution entry point so every *fresh* load
emits a matched import_begin/import_end pair with trigger attribution
(parent = the module whose code was executing, tracked per thread) and
nesting depth. Cache hits pass straight through and emit nothing. The
target's observable behavior is unchanged: arguments, return values and
exceptions all propagate untouched.
"""

from __future__ import annotations

import importlib._bootstrap as _bootstrap
import sys
import threading
import time

from .writer import TraceWriter


class ImportInstrumentation:
    def __init__(self, writer: TraceWriter):
        self._writer = writer
        self._local = threading.local()
        self._original = None

    def install(self) -> None:
        if self._original is not None:
            return
        self._original = _bootstrap._find_and_load
        original = self._original
        writer = self._writer
        local = self._local

        def traced_find_and_load(name, import_):
            if name in sys.modules:
                return original(name, import_)
            stack = getattr(local, "stack", None)
            if stack is None:
                stack = local.stack = []
            payload = {
                "mod": name,
                "parent": stack[-1] if stack else None,
                "depth": len(stack),
                "file": None,
            }
            tid = threading.get_ident()
            begin_ns = time.perf_counter_ns()
            token = writer.append("import_begin", begin_ns, tid, payload, hold=True)
            stack.append(name)
            try:
                return original(name, import_)
            finally:
                stack.pop()
                end_ns = time.perf_counter_ns()
                module = sys.modules.get(name)
                file = getattr(module, "__file__", None)
                payload["file"] = file if isinstance(file, str) else None
                writer.release(token)
                writer.append(
                    "import_end", end_ns, tid,
                    {"mod": name, "dur_ns": end_ns - begin_ns},
                )

        _bootstrap._find_and_load = traced_find_and_load

    def uninstall(self) -> None:
        if self._original is not None:
            _bootstrap._find_and_load = self._original
            self._original = None
