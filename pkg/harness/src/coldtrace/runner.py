"""Tracing runner: executes a target handler under import instrumentation
and warm-phase stack sampling, emitting cold and warm trace files.

    coldtrace --entry pkg.mod:handler --warm N --interval-ms 10 \
        --cold-out cold.jsonl --warm-out warm.jsonl \
        [--payload FILE] [--path DIR]... [--baseline]

Both trace files start with a meta record stamped at process entry (after
instrumentation install, before any target import), which is the latency
origin marker. All fresh module loads go to the cold trace whenever they
happen; invocation markers and samples go to the warm trace. Exit status:
0 success, 2 entry not found, target exceptions propagate as 1 (or the
target's own SystemExit code), with partial traces flushed either way.
"""

from __future__ import annotations

import argparse
import atexit
import importlib
import json
import sys
import threading
import time
import traceback
import uuid

from .importhook import ImportInstrumentation
from .sampler import Sampler
from .writer import TraceWriter

SCHEMA_VERSION = 1
CLOCK_NAME = "perf_counter_ns"

EXIT_OK = 0
EXIT_TARGET_ERROR = 1
EXIT_ENTRY_NOT_FOUND = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coldtrace", description=__doc__)
    parser.add_argument("--entry", required=True, metavar="pkg.mod:handler")
    parser.add_argument("--warm", type=int, default=1,
                        help="number of handler invocations (default 1)")
    parser.add_argument("--interval-ms", type=int, default=10)
    parser.add_argument("--cold-out", required=True)
    parser.add_argument("--warm-out", required=True)
    parser.add_argument("--payload", help="file whose bytes are passed to the handler")
    parser.add_argument("--path", action="append", default=[],
                        help="prepend to sys.path (repeatable)")
    parser.add_argument("--baseline", action="store_true",
                        help="no instrumentation: meta and invoke markers only")
    return parser


def run(args: argparse.Namespace) -> int:
    for entry in reversed(args.path):
        sys.path.insert(0, entry)
    if ":" not in args.entry:
        print(f"entry {args.entry!r} must look like pkg.mod:handler", file=sys.stderr)
        return EXIT_ENTRY_NOT_FOUND
    module_name, _, func_name = args.entry.partition(":")

    payload = None
    if args.payload:
        with open(args.payload, "rb") as fh:
            payload = fh.read()

    run_id = uuid.uuid4().hex[:12]
    tid = threading.get_ident()
    entry_ns = time.perf_counter_ns()
    cold = TraceWriter(args.cold_out)
    warm = TraceWriter(args.warm_out)
    atexit.register(cold.close)
    atexit.register(warm.close)
    for writer, phase in ((cold, "cold"), (warm, "warm")):
        writer.append("meta", entry_ns, tid, {
            "run_id": run_id, "phase": phase,
            "schema": SCHEMA_VERSION, "clock": CLOCK_NAME,
        })

    hook = None
    if not args.baseline:
        hook = ImportInstrumentation(cold)
        hook.install()

    sampler = None
    status = EXIT_OK
    invocations = 0
    result = None
    try:
        try:
            module = importlib.import_module(module_name)
        except ImportError as exc:
            print(f"entry module {module_name!r} not importable: {exc}", file=sys.stderr)
            return EXIT_ENTRY_NOT_FOUND
        handler = getattr(module, func_name, None)
        if not callable(handler):
            print(f"entry {args.entry!r} does not name a callable", file=sys.stderr)
            return EXIT_ENTRY_NOT_FOUND

        if not args.baseline and args.warm > 0:
            sampler = Sampler(tid, args.interval_ms)
            sampler.start()
        for seq in range(args.warm):
            warm.append("invoke_begin", time.perf_counter_ns(), tid, {"seq": seq})
            result = handler(payload)
            warm.append("invoke_end", time.perf_counter_ns(), tid, {"seq": seq})
            invocations += 1
            if sampler is not None:
                sampler.drain(warm)
    except SystemExit as exc:
        status = exc.code if isinstance(exc.code, int) else EXIT_TARGET_ERROR
    except BaseException:
        traceback.print_exc()
        status = EXIT_TARGET_ERROR
    finally:
        if sampler is not None:
            sampler.stop()
            sampler.drain(warm)
        if hook is not None:
            hook.uninstall()
        cold.close()
        warm.close()

    print(json.dumps({"invocations": invocations, "status": status,
                      "result": repr(result)}))
    return status


def main() -> None:
    args = build_parser().parse_args()
    sys.exit(run(args))


if __name__ == "__main__":
    main()
