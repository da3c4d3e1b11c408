#!/usr/bin/env python3
"""Generate the benchmark corpus: 18 runnable scenarios across the eight
cold-start pattern categories (B1..B8), each with a source tree, a driver
exposing `handler`, ground-truth metadata, and any data assets.

The output is committed; re-run this script only to regenerate it.

    python harness/scripts/gen_corpus.py [--out harness/corpus]
"""

from __future__ import annotations

import argparse
import json
import shutil
import zipfile
from pathlib import Path

WORK_TEMPLATE = '''\
"""Deterministic CPU work for this scenario (calibrated in iterations)."""


def spin(n):
    acc = 1469598103934665603
    for i in range(n):
        acc = (acc ^ i) * 1099511628211 % (1 << 64)
    return acc
'''

PARAMS_TEMPLATE = '''\
"""Scale parameters, read from this scenario's scenario.json."""
import json as _json
import os as _os

_here = _os.path.dirname(_os.path.abspath(__file__))
with open(_os.path.join(_os.path.dirname(_here), "scenario.json"), encoding="utf-8") as _fh:
    PARAMS = _json.load(_fh)["params"]

{constants}
'''

UTIL_TEMPLATE = '''\
"""Small helper the handler actually uses on every invocation."""
import {px}_work


def digest(payload):
    data = payload if payload is not None else b"warm"
    {px}_work.spin(9000)
    total = 17
    for byte in data[:256]:
        total = (total * 31 + byte) % 1000003
    return total
'''


def write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def scenario_json(out: Path, **doc) -> None:
    write(out / "scenario.json", json.dumps(doc, indent=2) + "\n")


def common_modules(src: Path, px: str, constants: str) -> None:
    write(src / f"{px}_work.py", WORK_TEMPLATE)
    write(src / f"{px}_params.py", PARAMS_TEMPLATE.format(constants=constants))
    write(src / f"{px}_util.py", UTIL_TEMPLATE.format(px=px))


# --- B1: import-graph indirection -----------------------------------------

def gen_b1_facade_chain(root: Path) -> None:
    out = root / "B1" / "b1-facade-chain"
    src = out / "src"
    px = "fch"
    common_modules(src, px, (
        'CHAIN_LEN = int(PARAMS.get("chain_len", 12))\n'
        'LINK_ITERS = int(PARAMS.get("link_iters", 1200))\n'
        'CORE_ITERS = int(PARAMS.get("core_iters", 190000))\n'
    ))
    max_links = 20
    for i in range(max_links):
        nxt = (
            f"if {i} + 1 < fch_params.CHAIN_LEN:\n"
            f"    import fch_link_{i + 1:02d} as _next\n"
            f"else:\n"
            f"    import fch_core as _next\n"
        )
        if i == max_links - 1:
            nxt = "import fch_core as _next\n"
        write(src / f"fch_link_{i:02d}.py",
              "import fch_params\n"
              "import fch_work\n\n"
              "fch_work.spin(fch_params.LINK_ITERS)\n"
              + nxt
              + "resolve = _next.resolve\n")
    write(src / "fch_core.py",
          "import fch_params\n"
          "import fch_work\n\n"
          "_STATE = fch_work.spin(fch_params.CORE_ITERS)\n\n\n"
          "def resolve(key):\n"
          "    return (_STATE ^ hash(key)) & 0xFFFF\n")
    write(out / "driver.py",
          "import fch_link_00\n"
          "import fch_util\n\n\n"
          "def handler(payload=None):\n"
          "    return fch_util.digest(payload)\n")
    scenario_json(
        out,
        id="b1-facade-chain", category="B1", layer="design", phase="import",
        must_blame=["fch_core"],
        must_not_blame=["driver", "fch_util", "fch_link_00"],
        params={"chain_len": 12, "link_iters": 1200, "core_iters": 190000,
                "min_cost_ms": 15, "scale_param": "chain_len"},
        variant="simulated", tags=["A1", "R1", "L1"],
    )


def gen_b1_reexport_hub(root: Path) -> None:
    out = root / "B1" / "b1-reexport-hub"
    src = out / "src"
    common_modules(src, "rxh", (
        'FANOUT = int(PARAMS.get("fanout", 10))\n'
        'HEAVY_ITERS = int(PARAMS.get("heavy_iters", 170000))\n'
        'FEATURE_ITERS = int(PARAMS.get("feature_iters", 1500))\n'
    ))
    for i in range(12):
        iters = "rxh_params.HEAVY_ITERS" if i == 0 else "rxh_params.FEATURE_ITERS"
        write(src / f"rxh_feature_{i:02d}.py",
              "import rxh_params\n"
              "import rxh_work\n\n"
              f"NAME = 'feature_{i:02d}'\n"
              f"_STATE = rxh_work.spin({iters})\n\n\n"
              "def describe():\n"
              "    return NAME, _STATE & 0xFF\n")
    write(src / "rxh_hub.py",
          "import importlib\n\n"
          "import rxh_params\n\n"
          "REGISTRY = {}\n"
          "for _i in range(min(rxh_params.FANOUT, 12)):\n"
          "    _mod = importlib.import_module('rxh_feature_%02d' % _i)\n"
          "    REGISTRY[_mod.NAME] = _mod.describe\n")
    write(out / "driver.py",
          "import rxh_hub\n"
          "import rxh_util\n\n\n"
          "def handler(payload=None):\n"
          "    return rxh_util.digest(payload)\n")
    scenario_json(
        out,
        id="b1-reexport-hub", category="B1", layer="design", phase="import",
        must_blame=["rxh_feature_00"],
        must_not_blame=["driver", "rxh_util", "rxh_hub"],
        params={"fanout": 10, "heavy_iters": 170000, "feature_iters": 1500,
                "min_cost_ms": 14, "scale_param": "fanout"},
        variant="simulated", tags=["A1", "R1", "L1"],
    )


def gen_b1_diamond(root: Path) -> None:
    out = root / "B1" / "b1-diamond-reexport"
    src = out / "src"
    common_modules(src, "dmd", (
        'BASE_ITERS = int(PARAMS.get("base_iters", 180000))\n'
        'EDGE_ITERS = int(PARAMS.get("edge_iters", 2000))\n'
    ))
    write(src / "dmd_base.py",
          "import dmd_params\n"
          "import dmd_work\n\n"
          "_STATE = dmd_work.spin(dmd_params.BASE_ITERS)\n"
          "VALUE = _STATE & 0xFFFF\n")
    for side in ("left", "right"):
        write(src / f"dmd_{side}.py",
              "import dmd_base\n"
              "import dmd_params\n"
              "import dmd_work\n\n"
              "dmd_work.spin(dmd_params.EDGE_ITERS)\n"
              f"VIEW_{side.upper()} = dmd_base.VALUE + {len(side)}\n")
    write(src / "dmd_top.py",
          "import dmd_left\n"
          "import dmd_right\n\n"
          "SUMMARY = dmd_left.VIEW_LEFT + dmd_right.VIEW_RIGHT\n")
    write(out / "driver.py",
          "import dmd_top\n"
          "import dmd_util\n\n\n"
          "def handler(payload=None):\n"
          "    return dmd_util.digest(payload)\n")
    scenario_json(
        out,
        id="b1-diamond-reexport", category="B1", layer="design", phase="import",
        must_blame=["dmd_base"],
        must_not_blame=["driver", "dmd_util", "dmd_top", "dmd_left", "dmd_right"],
        params={"base_iters": 180000, "edge_iters": 2000,
                "min_cost_ms": 15, "scale_param": "base_iters"},
        variant="simulated", tags=["A1", "R1", "L1"],
    )


# --- B2: transitive dependency dominance ----------------------------------

def gen_b2_thin_client(root: Path) -> None:
    out = root / "B2" / "b2-thin-client"
    src = out / "src"
    common_modules(src, "tcl", (
        'CORE_ITERS = int(PARAMS.get("core_iters", 230000))\n'
        'SIDE_ITERS = int(PARAMS.get("side_iters", 7000))\n'
    ))
    write(src / "tcl_engine_core.py",
          "import tcl_params\n"
          "import tcl_work\n\n"
          "_STATE = tcl_work.spin(tcl_params.CORE_ITERS)\n\n\n"
          "def plan(key):\n"
          "    return (_STATE ^ hash(key)) & 0xFFFF\n")
    for side in ("codegen", "io"):
        write(src / f"tcl_engine_{side}.py",
              "import tcl_params\n"
              "import tcl_work\n\n"
              "tcl_work.spin(tcl_params.SIDE_ITERS)\n")
    write(src / "tcl_engine.py",
          "import tcl_engine_core\n"
          "import tcl_engine_codegen\n"
          "import tcl_engine_io\n\n"
          "plan = tcl_engine_core.plan\n")
    write(src / "tcl_client.py",
          "import tcl_engine\n\n\n"
          "def ping():\n"
          "    return 'pong'\n")
    write(out / "driver.py",
          "import tcl_client\n"
          "import tcl_util\n\n\n"
          "def handler(payload=None):\n"
          "    return (tcl_client.ping(), tcl_util.digest(payload))\n")
    scenario_json(
        out,
        id="b2-thin-client", category="B2", layer="design", phase="import",
        must_blame=["tcl_engine_core"],
        must_not_blame=["driver", "tcl_client", "tcl_util"],
        params={"core_iters": 230000, "side_iters": 7000,
                "min_cost_ms": 18, "scale_param": "core_iters"},
        variant="simulated", tags=["A1", "R4", "L1"],
    )


def gen_b2_util_drag(root: Path) -> None:
    out = root / "B2" / "b2-util-drag"
    src = out / "src"
    common_modules(src, "udg", (
        'TABLE_ITERS = int(PARAMS.get("table_iters", 160000))\n'
        'ROWS = int(PARAMS.get("rows", 20000))\n'
        'MINOR_ITERS = int(PARAMS.get("minor_iters", 2000))\n'
    ))
    for i in range(6):
        if i == 3:
            body = (
                "import udg_params\n"
                "import udg_work\n\n"
                "udg_work.spin(udg_params.TABLE_ITERS)\n"
                "TABLES = {i: (i * 2654435761) % 4294967296 for i in range(udg_params.ROWS)}\n"
            )
        else:
            body = (
                "import udg_params\n"
                "import udg_work\n\n"
                "udg_work.spin(udg_params.MINOR_ITERS)\n"
            )
        write(src / f"udg_h{i}.py", body)
    write(src / "udg_helpers.py",
          "\n".join(f"import udg_h{i}" for i in range(6)) + "\n")
    write(src / "udg_api.py",
          "import udg_helpers\n\n\n"
          "def tag(data):\n"
          "    return ('tag', len(data) if data else 0)\n")
    write(out / "driver.py",
          "import udg_api\n"
          "import udg_util\n\n\n"
          "def handler(payload=None):\n"
          "    return (udg_api.tag(payload), udg_util.digest(payload))\n")
    scenario_json(
        out,
        id="b2-util-drag", category="B2", layer="packaging", phase="import",
        must_blame=["udg_h3"],
        must_not_blame=["driver", "udg_api", "udg_util"],
        params={"table_iters": 160000, "rows": 20000, "minor_iters": 2000,
                "min_cost_ms": 15, "scale_param": "rows"},
        variant="simulated", tags=["A1", "R4", "L1"],
    )


# --- B3: import-time side effects ------------------------------------------

def gen_b3_filegen(root: Path) -> None:
    out = root / "B3" / "b3-filegen"
    src = out / "src"
    common_modules(src, "fgn", (
        'FILE_COUNT = int(PARAMS.get("file_count", 60))\n'
        'PAD_ITERS = int(PARAMS.get("pad_iters", 90000))\n'
    ))
    write(src / "fgn_cachegen.py",
          '"""Writes a generated file cache into the working directory at\n'
          'import time, then reads it back and checksums it."""\n'
          "import os as _os\n\n"
          "import fgn_params\n"
          "import fgn_work\n\n"
          "_cache_dir = _os.path.join(_os.getcwd(), 'cache_gen')\n"
          "_os.makedirs(_cache_dir, exist_ok=True)\n"
          "CHECKSUMS = {}\n"
          "for _i in range(fgn_params.FILE_COUNT):\n"
          "    _blob = bytes((_i * 7 + _j) % 251 for _j in range(4096))\n"
          "    _path = _os.path.join(_cache_dir, 'part_%03d.bin' % _i)\n"
          "    with open(_path, 'wb') as _fh:\n"
          "        _fh.write(_blob)\n"
          "    with open(_path, 'rb') as _fh:\n"
          "        CHECKSUMS[_i] = sum(_fh.read()) % 65521\n"
          "fgn_work.spin(fgn_params.PAD_ITERS)\n")
    write(src / "fgn_app.py",
          "import fgn_cachegen\n\n\n"
          "def lookup(index):\n"
          "    return fgn_cachegen.CHECKSUMS.get(index % len(fgn_cachegen.CHECKSUMS), -1)\n")
    write(out / "driver.py",
          "import fgn_app\n"
          "import fgn_util\n\n\n"
          "def handler(payload=None):\n"
          "    return (fgn_app.lookup(3), fgn_util.digest(payload))\n")
    scenario_json(
        out,
        id="b3-filegen", category="B3", layer="runtime", phase="import",
        must_blame=["fgn_cachegen"],
        must_not_blame=["driver", "fgn_app", "fgn_util"],
        params={"file_count": 60, "pad_iters": 90000,
                "min_cost_ms": 10, "scale_param": "file_count"},
        variant="simulated", tags=["A3", "R2", "L1"],
    )


def gen_b3_schema_compile(root: Path) -> None:
    out = root / "B3" / "b3-schema-compile"
    src = out / "src"
    common_modules(src, "sch", (
        'SCHEMA_COUNT = int(PARAMS.get("schema_count", 40))\n'
        'PER_SCHEMA_ITERS = int(PARAMS.get("per_schema_iters", 2000))\n'
        'COMPILE_ITERS = int(PARAMS.get("compile_iters", 60000))\n'
    ))
    write(src / "sch_compiler.py",
          '"""Compiles every schema eagerly at import time."""\n'
          "import json as _json\n"
          "import re as _re\n\n"
          "import sch_params\n"
          "import sch_work\n\n"
          "COMPILED = {}\n"
          "for _i in range(sch_params.SCHEMA_COUNT):\n"
          "    _fields = [f'f{_i}_{_k}' for _k in range(8)]\n"
          "    _pattern = '^' + '|'.join(_fields) + '$'\n"
          "    _doc = _json.loads(_json.dumps({'name': f's{_i}', 'fields': _fields}))\n"
          "    COMPILED[_doc['name']] = (_re.compile(_pattern), tuple(_doc['fields']))\n"
          "    sch_work.spin(sch_params.PER_SCHEMA_ITERS)\n"
          "sch_work.spin(sch_params.COMPILE_ITERS)\n")
    write(src / "sch_api.py",
          "import sch_compiler\n\n\n"
          "def validate(data):\n"
          "    pattern, fields = sch_compiler.COMPILED['s0']\n"
          "    return bool(pattern.match(fields[0])) and (data is None or len(data) >= 0)\n")
    write(out / "driver.py",
          "import sch_api\n"
          "import sch_util\n\n\n"
          "def handler(payload=None):\n"
          "    return (sch_api.validate(payload), sch_util.digest(payload))\n")
    scenario_json(
        out,
        id="b3-schema-compile", category="B3", layer="runtime", phase="import",
        must_blame=["sch_compiler"],
        must_not_blame=["driver", "sch_api", "sch_util"],
        params={"schema_count": 40, "per_schema_iters": 2000, "compile_iters": 60000,
                "min_cost_ms": 12, "scale_param": "schema_count"},
        variant="simulated", tags=["A3", "R2", "L3"],
    )


def gen_b3_boot_probe(root: Path) -> None:
    out = root / "B3" / "b3-boot-probe"
    src = out / "src"
    common_modules(src, "btp", (
        'PROBE_COUNT = int(PARAMS.get("probe_count", 8))\n'
        'PROBE_DELAY_MS = float(PARAMS.get("probe_delay_ms", 2.0))\n'
    ))
    write(src / "btp_bootcfg.py",
          '"""Fetches configuration from a loopback endpoint at import time:\n'
          'the scenario starts its own stub server, so everything stays local."""\n'
          "import socket as _socket\n"
          "import threading as _threading\n"
          "import time as _time\n\n"
          "import btp_params\n\n"
          "_listener = _socket.socket(_socket.AF_INET, _socket.SOCK_STREAM)\n"
          "_listener.bind(('127.0.0.1', 0))\n"
          "_listener.listen(8)\n"
          "_PORT = _listener.getsockname()[1]\n\n\n"
          "def _serve(n):\n"
          "    for _ in range(n):\n"
          "        conn, _addr = _listener.accept()\n"
          "        data = conn.recv(256)\n"
          "        _time.sleep(btp_params.PROBE_DELAY_MS / 1000.0)\n"
          "        conn.sendall(b'cfg:' + data)\n"
          "        conn.close()\n\n\n"
          "_thread = _threading.Thread(target=_serve, args=(btp_params.PROBE_COUNT,), daemon=True)\n"
          "_thread.start()\n"
          "CONFIG = {}\n"
          "for _i in range(btp_params.PROBE_COUNT):\n"
          "    with _socket.create_connection(('127.0.0.1', _PORT), timeout=10) as _conn:\n"
          "        _conn.sendall(('key%d' % _i).encode())\n"
          "        CONFIG['key%d' % _i] = _conn.recv(256).decode()\n"
          "_thread.join(timeout=10)\n"
          "_listener.close()\n")
    write(src / "btp_app.py",
          "import btp_bootcfg\n\n\n"
          "def get(key):\n"
          "    return btp_bootcfg.CONFIG.get(key, '')\n")
    write(out / "driver.py",
          "import btp_app\n"
          "import btp_util\n\n\n"
          "def handler(payload=None):\n"
          "    return (btp_app.get('key0'), btp_util.digest(payload))\n")
    scenario_json(
        out,
        id="b3-boot-probe", category="B3", layer="environment", phase="import",
        must_blame=["btp_bootcfg"],
        must_not_blame=["driver", "btp_app", "btp_util"],
        params={"probe_count": 8, "probe_delay_ms": 2.0,
                "min_cost_ms": 10, "scale_param": "probe_count"},
        variant="simulated", tags=["A6", "R6", "L4"],
    )


# --- B4: deferred first-use initialization ---------------------------------

def gen_b4_lazy_orm(root: Path) -> None:
    out = root / "B4" / "b4-lazy-orm"
    src = out / "src"
    common_modules(src, "orm", (
        'ENGINE_ITERS = int(PARAMS.get("engine_iters", 200000))\n'
        'MODEL_COUNT = int(PARAMS.get("model_count", 64))\n'
    ))
    write(src / "orm_engine.py",
          '"""Heavy mapper bootstrap: imported lazily on first invocation."""\n'
          "import orm_params\n"
          "import orm_work\n\n"
          "orm_work.spin(orm_params.ENGINE_ITERS)\n"
          "MODELS = {'model_%02d' % i: tuple(range(i % 7)) for i in range(orm_params.MODEL_COUNT)}\n\n\n"
          "def query(data):\n"
          "    orm_work.spin(1500)\n"
          "    return len(MODELS) + (len(data) if data else 0)\n")
    write(out / "driver.py",
          "import orm_util\n\n"
          "_engine = None\n\n\n"
          "def handler(payload=None):\n"
          "    global _engine\n"
          "    if _engine is None:\n"
          "        import orm_engine\n"
          "        _engine = orm_engine\n"
          "    return (_engine.query(payload), orm_util.digest(payload))\n")
    scenario_json(
        out,
        id="b4-lazy-orm", category="B4", layer="runtime", phase="first_invocation",
        must_blame=["orm_engine"],
        must_not_blame=["driver", "orm_util"],
        params={"engine_iters": 200000, "model_count": 64,
                "min_cost_ms": 16, "scale_param": "engine_iters"},
        variant="simulated", tags=["A3", "R2", "L3"],
    )


def gen_b4_conn_pool(root: Path) -> None:
    out = root / "B4" / "b4-conn-pool"
    src = out / "src"
    common_modules(src, "cpl", (
        'POOL_SIZE = int(PARAMS.get("pool_size", 8))\n'
        'CONN_ITERS = int(PARAMS.get("conn_iters", 22000))\n'
    ))
    write(src / "cpl_pool.py",
          '"""Connection pool built on first use, one spin per connection."""\n'
          "import cpl_params\n"
          "import cpl_work\n\n"
          "POOL = []\n"
          "for _i in range(cpl_params.POOL_SIZE):\n"
          "    cpl_work.spin(cpl_params.CONN_ITERS)\n"
          "    POOL.append(('conn', _i))\n\n\n"
          "def acquire():\n"
          "    return POOL[0]\n")
    write(src / "cpl_codec.py",
          "import cpl_work\n\n\n"
          "def encode(data):\n"
          "    cpl_work.spin(1200)\n"
          "    return len(data) if data else 0\n")
    write(out / "driver.py",
          "import cpl_codec\n"
          "import cpl_util\n\n"
          "_pool = None\n\n\n"
          "def handler(payload=None):\n"
          "    global _pool\n"
          "    if _pool is None:\n"
          "        import cpl_pool\n"
          "        _pool = cpl_pool\n"
          "    conn = _pool.acquire()\n"
          "    return (conn[1], cpl_codec.encode(payload), cpl_util.digest(payload))\n")
    scenario_json(
        out,
        id="b4-conn-pool", category="B4", layer="runtime", phase="first_invocation",
        must_blame=["cpl_pool"],
        must_not_blame=["driver", "cpl_codec", "cpl_util"],
        params={"pool_size": 8, "conn_iters": 22000,
                "min_cost_ms": 14, "scale_param": "pool_size"},
        variant="simulated", tags=["A3", "R3", "L3"],
    )


# --- B5: loader and packaging overheads ------------------------------------

def gen_b5_many_tiny(root: Path) -> None:
    out = root / "B5" / "b5-many-tiny-modules"
    src = out / "src"
    common_modules(src, "bnd", (
        'PART_COUNT = int(PARAMS.get("part_count", 60))\n'
        'REG_ITERS = int(PARAMS.get("reg_iters", 2600))\n'
    ))
    pkg = src / "bnd_bundle"
    for i in range(60):
        write(pkg / f"part_{i:02d}.py",
              "import bnd_work\n\n"
              f"TOKEN = {i}\n"
              "bnd_work.spin(400)\n"
              f"FIELDS = tuple(range({i % 9}))\n")
    write(pkg / "__init__.py",
          '"""Bundle root: imports and registers every part at import time."""\n'
          "import importlib as _importlib\n\n"
          "import bnd_params\n"
          "import bnd_work\n\n"
          "REGISTRY = {}\n"
          "for _i in range(min(bnd_params.PART_COUNT, 60)):\n"
          "    _mod = _importlib.import_module('bnd_bundle.part_%02d' % _i)\n"
          "    bnd_work.spin(bnd_params.REG_ITERS)\n"
          "    REGISTRY[_mod.TOKEN] = _mod.FIELDS\n")
    write(out / "driver.py",
          "import bnd_bundle\n"
          "import bnd_util\n\n\n"
          "def handler(payload=None):\n"
          "    return (len(bnd_bundle.REGISTRY), bnd_util.digest(payload))\n")
    scenario_json(
        out,
        id="b5-many-tiny-modules", category="B5", layer="packaging", phase="import",
        must_blame=["bnd_bundle"],
        must_not_blame=["driver", "bnd_util"],
        params={"part_count": 60, "reg_iters": 2600,
                "min_cost_ms": 12, "scale_param": "part_count"},
        variant="simulated", tags=["A1", "R4", "L5"],
    )


def gen_b5_zip_bundle(root: Path) -> None:
    out = root / "B5" / "b5-zip-bundle"
    src = out / "src"
    common_modules(src, "zbd", (
        'PART_COUNT = int(PARAMS.get("part_count", 48))\n'
        'REG_ITERS = int(PARAMS.get("reg_iters", 2600))\n'
    ))
    assets = out / "assets"
    assets.mkdir(parents=True, exist_ok=True)
    zip_path = assets / "zbd_parts.zip"
    with zipfile.ZipFile(zip_path, "w", zipfile.ZIP_DEFLATED) as zf:
        for i in range(48):
            info = zipfile.ZipInfo(f"zpart_{i:02d}.py", date_time=(2020, 1, 1, 0, 0, 0))
            zf.writestr(info,
                        f"TOKEN = {i}\n"
                        f"FIELDS = tuple(range({i % 9}))\n"
                        "CHECK = sum(FIELDS) % 97\n")
    write(src / "zbd_loader.py",
          '"""Loads the bundled parts out of a single zip artifact."""\n'
          "import importlib as _importlib\n"
          "import os as _os\n"
          "import sys as _sys\n\n"
          "import zbd_params\n"
          "import zbd_work\n\n"
          "_zip = _os.path.join(_os.path.dirname(_os.path.dirname(_os.path.abspath(__file__))),\n"
          "                     'assets', 'zbd_parts.zip')\n"
          "_sys.path.insert(0, _zip)\n"
          "REGISTRY = {}\n"
          "try:\n"
          "    for _i in range(min(zbd_params.PART_COUNT, 48)):\n"
          "        _mod = _importlib.import_module('zpart_%02d' % _i)\n"
          "        zbd_work.spin(zbd_params.REG_ITERS)\n"
          "        REGISTRY[_mod.TOKEN] = _mod.CHECK\n"
          "finally:\n"
          "    _sys.path.remove(_zip)\n")
    write(out / "driver.py",
          "import zbd_loader\n"
          "import zbd_util\n\n\n"
          "def handler(payload=None):\n"
          "    return (len(zbd_loader.REGISTRY), zbd_util.digest(payload))\n")
    scenario_json(
        out,
        id="b5-zip-bundle", category="B5", layer="packaging", phase="import",
        must_blame=["zbd_loader"],
        must_not_blame=["driver", "zbd_util"],
        params={"part_count": 48, "reg_iters": 2600,
                "min_cost_ms": 10, "scale_param": "part_count"},
        variant="simulated", tags=["A5", "R4", "L5"],
    )


# --- B6: cross-language boundary --------------------------------------------

def gen_b6_sim_binding(root: Path) -> None:
    out = root / "B6" / "b6-sim-binding"
    src = out / "src"
    common_modules(src, "smb", (
        'INIT_ITERS = int(PARAMS.get("init_iters", 210000))\n'
        'SYMBOL_COUNT = int(PARAMS.get("symbol_count", 500))\n'
    ))
    write(src / "smb_binding.py",
          '"""Simulated foreign-binding bootstrap (CPU spin stands in for\n'
          'library relocation and symbol table setup)."""\n'
          "import smb_params\n"
          "import smb_work\n\n"
          "smb_work.spin(smb_params.INIT_ITERS)\n"
          "SYMBOLS = {'sym_%03d' % i: i * 17 for i in range(smb_params.SYMBOL_COUNT)}\n\n\n"
          "def call(name):\n"
          "    return SYMBOLS.get(name, -1)\n")
    write(src / "smb_api.py",
          "import smb_binding\n\n\n"
          "def version():\n"
          "    return 'sim-1.0'\n")
    write(out / "driver.py",
          "import smb_api\n"
          "import smb_util\n\n\n"
          "def handler(payload=None):\n"
          "    return (smb_api.version(), smb_util.digest(payload))\n")
    scenario_json(
        out,
        id="b6-sim-binding", category="B6", layer="runtime", phase="import",
        must_blame=["smb_binding"],
        must_not_blame=["driver", "smb_api", "smb_util"],
        params={"init_iters": 210000, "symbol_count": 500,
                "min_cost_ms": 16, "scale_param": "init_iters"},
        variant="simulated", tags=["A5", "R5", "L5"],
    )


def gen_b6_native_sqlite(root: Path) -> None:
    out = root / "B6" / "b6-native-sqlite"
    src = out / "src"
    common_modules(src, "nsq", (
        'ROW_COUNT = int(PARAMS.get("row_count", 6000))\n'
    ))
    write(src / "nsq_bridge.py",
          '"""Foreign-function boundary: drives the system sqlite library\n'
          'through ctypes at import time. The C-side work is visible to a\n'
          'tracer only as this module\'s one opaque import duration. Falls\n'
          'back to a deterministic spin when no shared library is available."""\n'
          "import ctypes as _ctypes\n\n"
          "import nsq_params\n"
          "import nsq_work\n\n\n"
          "def _fallback(rows):\n"
          "    nsq_work.spin(rows * 60)\n"
          "    return rows\n\n\n"
          "def _native_init(rows):\n"
          "    lib = None\n"
          "    for _name in ('libsqlite3.so.0', 'libsqlite3.so', 'libsqlite3.dylib'):\n"
          "        try:\n"
          "            lib = _ctypes.CDLL(_name)\n"
          "            break\n"
          "        except OSError:\n"
          "            continue\n"
          "    if lib is None:\n"
          "        return _fallback(rows)\n"
          "    lib.sqlite3_open.argtypes = [_ctypes.c_char_p, _ctypes.POINTER(_ctypes.c_void_p)]\n"
          "    lib.sqlite3_open.restype = _ctypes.c_int\n"
          "    lib.sqlite3_exec.argtypes = [_ctypes.c_void_p, _ctypes.c_char_p,\n"
          "                                 _ctypes.c_void_p, _ctypes.c_void_p, _ctypes.c_void_p]\n"
          "    lib.sqlite3_exec.restype = _ctypes.c_int\n"
          "    lib.sqlite3_close.argtypes = [_ctypes.c_void_p]\n"
          "    db = _ctypes.c_void_p()\n"
          "    if lib.sqlite3_open(b':memory:', _ctypes.byref(db)) != 0:\n"
          "        return _fallback(rows)\n"
          "    script = ['CREATE TABLE boot(k INTEGER PRIMARY KEY, v TEXT);', 'BEGIN;']\n"
          "    script += [\"INSERT INTO boot VALUES(%d, '%s');\" % (i, 'x' * 48)\n"
          "               for i in range(rows)]\n"
          "    script.append('COMMIT;')\n"
          "    lib.sqlite3_exec(db, ''.join(script).encode(), None, None, None)\n"
          "    lib.sqlite3_close(db)\n"
          "    return rows\n\n\n"
          "ROWS_LOADED = _native_init(nsq_params.ROW_COUNT)\n")
    write(src / "nsq_api.py",
          "import nsq_bridge\n\n\n"
          "def rows():\n"
          "    return nsq_bridge.ROWS_LOADED\n")
    write(out / "driver.py",
          "import nsq_api\n"
          "import nsq_util\n\n\n"
          "def handler(payload=None):\n"
          "    return (nsq_api.rows(), nsq_util.digest(payload))\n")
    scenario_json(
        out,
        id="b6-native-sqlite", category="B6", layer="runtime", phase="import",
        must_blame=["nsq_bridge"],
        must_not_blame=["driver", "nsq_api", "nsq_util"],
        params={"row_count": 6000, "min_cost_ms": 8, "scale_param": "row_count"},
        variant="native", tags=["A5", "R5", "L5"],
    )


# --- B7: framework discovery scan -------------------------------------------

def gen_b7_plugin_scan(root: Path) -> None:
    out = root / "B7" / "b7-plugin-scan"
    src = out / "src"
    common_modules(src, "pgs", (
        'PLUGIN_COUNT = int(PARAMS.get("plugin_count", 24))\n'
        'VALIDATE_ITERS = int(PARAMS.get("validate_iters", 4500))\n'
        'SCAN_ITERS = int(PARAMS.get("scan_iters", 40000))\n'
    ))
    pkg = src / "pgs_host"
    write(pkg / "__init__.py", "from . import registry\n")
    write(pkg / "plugins" / "__init__.py", "")
    for i in range(30):
        write(pkg / "plugins" / f"p_{i:02d}.py",
              "import pgs_work\n\n"
              "pgs_work.spin(700)\n"
              f"NAME = 'p_{i:02d}'\n\n\n"
              "def HOOK(data):\n"
              f"    return (NAME, len(data) if data else {i})\n")
    write(pkg / "registry.py",
          '"""Walks the plugin directory at startup, importing and validating\n'
          'every plugin it finds."""\n'
          "import importlib as _importlib\n"
          "import os as _os\n\n"
          "import pgs_params\n"
          "import pgs_work\n\n"
          "pgs_work.spin(pgs_params.SCAN_ITERS)\n"
          "_plugin_dir = _os.path.join(_os.path.dirname(_os.path.abspath(__file__)), 'plugins')\n"
          "_names = sorted(f[:-3] for f in _os.listdir(_plugin_dir)\n"
          "                if f.startswith('p_') and f.endswith('.py'))\n"
          "REGISTRY = {}\n"
          "for _name in _names[:pgs_params.PLUGIN_COUNT]:\n"
          "    _mod = _importlib.import_module('pgs_host.plugins.' + _name)\n"
          "    pgs_work.spin(pgs_params.VALIDATE_ITERS)\n"
          "    if not callable(getattr(_mod, 'HOOK', None)):\n"
          "        raise RuntimeError('plugin %s lacks HOOK' % _name)\n"
          "    REGISTRY[_mod.NAME] = _mod.HOOK\n")
    write(out / "driver.py",
          "import pgs_host\n"
          "import pgs_util\n\n\n"
          "def handler(payload=None):\n"
          "    hook = pgs_host.registry.REGISTRY['p_00']\n"
          "    return (hook(payload), pgs_util.digest(payload))\n")
    scenario_json(
        out,
        id="b7-plugin-scan", category="B7", layer="runtime", phase="import",
        must_blame=["pgs_host.registry"],
        must_not_blame=["driver", "pgs_util", "pgs_host"],
        params={"plugin_count": 24, "validate_iters": 4500, "scan_iters": 40000,
                "min_cost_ms": 12, "scale_param": "plugin_count"},
        variant="simulated", tags=["A1", "R4", "L3"],
    )


def gen_b7_metadata_probe(root: Path) -> None:
    out = root / "B7" / "b7-metadata-probe"
    src = out / "src"
    common_modules(src, "eps", (
        'META_COUNT = int(PARAMS.get("meta_count", 48))\n'
        'PARSE_ITERS = int(PARAMS.get("parse_iters", 2600))\n'
    ))
    assets = out / "assets" / "meta"
    assets.mkdir(parents=True, exist_ok=True)
    for i in range(48):
        lines = [f"name=ep_{i:02d}", f"group=g{i % 5}", f"order={i}",
                 "enabled=true", f"target=pkg{i % 7}.mod:run"]
        (assets / f"ep_{i:02d}.meta").write_text("\n".join(lines) + "\n", encoding="utf-8")
    write(src / "eps_scanner.py",
          '"""Scans entry-point metadata files at startup and indexes them."""\n'
          "import os as _os\n\n"
          "import eps_params\n"
          "import eps_work\n\n"
          "_meta_dir = _os.path.join(_os.path.dirname(_os.path.dirname(_os.path.abspath(__file__))),\n"
          "                          'assets', 'meta')\n"
          "_files = sorted(_os.listdir(_meta_dir))[:eps_params.META_COUNT]\n"
          "INDEX = {}\n"
          "for _fname in _files:\n"
          "    with open(_os.path.join(_meta_dir, _fname), encoding='utf-8') as _fh:\n"
          "        _entry = dict(line.strip().split('=', 1) for line in _fh if '=' in line)\n"
          "    eps_work.spin(eps_params.PARSE_ITERS)\n"
          "    INDEX[_entry['name']] = _entry\n")
    write(src / "eps_api.py",
          "import eps_scanner\n\n\n"
          "def lookup(name):\n"
          "    return eps_scanner.INDEX.get(name, {}).get('target', '')\n")
    write(out / "driver.py",
          "import eps_api\n"
          "import eps_util\n\n\n"
          "def handler(payload=None):\n"
          "    return (eps_api.lookup('ep_00'), eps_util.digest(payload))\n")
    scenario_json(
        out,
        id="b7-metadata-probe", category="B7", layer="packaging", phase="import",
        must_blame=["eps_scanner"],
        must_not_blame=["driver", "eps_api", "eps_util"],
        params={"meta_count": 48, "parse_iters": 2600,
                "min_cost_ms": 10, "scale_param": "meta_count"},
        variant="simulated", tags=["A1", "R4", "L5"],
    )


# --- B8: resource loading policy ---------------------------------------------

def gen_b8_eager_locales(root: Path) -> None:
    out = root / "B8" / "b8-eager-locales"
    src = out / "src"
    common_modules(src, "lcl", (
        'PACK_COUNT = int(PARAMS.get("pack_count", 20))\n'
        'BUILD_ITERS = int(PARAMS.get("build_iters", 6500))\n'
    ))
    assets = out / "assets" / "locales"
    assets.mkdir(parents=True, exist_ok=True)
    for i in range(24):
        pack = {
            "locale": f"l{i:02d}",
            "messages": {f"msg_{k:03d}": f"text-{i}-{k}" * 3 for k in range(120)},
            "plurals": {f"rule_{k}": k % 4 for k in range(24)},
        }
        (assets / f"l{i:02d}.json").write_text(json.dumps(pack, sort_keys=True),
                                               encoding="utf-8")
    write(src / "lcl_locales.py",
          '"""Eagerly loads every locale pack at import, used or not."""\n'
          "import json as _json\n"
          "import os as _os\n\n"
          "import lcl_params\n"
          "import lcl_work\n\n"
          "_dir = _os.path.join(_os.path.dirname(_os.path.dirname(_os.path.abspath(__file__))),\n"
          "                     'assets', 'locales')\n"
          "_files = sorted(_os.listdir(_dir))[:lcl_params.PACK_COUNT]\n"
          "TABLE = {}\n"
          "for _fname in _files:\n"
          "    with open(_os.path.join(_dir, _fname), encoding='utf-8') as _fh:\n"
          "        _pack = _json.load(_fh)\n"
          "    lcl_work.spin(lcl_params.BUILD_ITERS)\n"
          "    TABLE[_pack['locale']] = _pack['messages']\n")
    write(src / "lcl_app.py",
          "import lcl_locales\n\n\n"
          "def get(locale, key):\n"
          "    return lcl_locales.TABLE.get(locale, {}).get(key, '')\n")
    write(out / "driver.py",
          "import lcl_app\n"
          "import lcl_util\n\n\n"
          "def handler(payload=None):\n"
          "    return (lcl_app.get('l00', 'msg_000'), lcl_util.digest(payload))\n")
    scenario_json(
        out,
        id="b8-eager-locales", category="B8", layer="runtime", phase="import",
        must_blame=["lcl_locales"],
        must_not_blame=["driver", "lcl_app", "lcl_util"],
        params={"pack_count": 20, "build_iters": 6500,
                "min_cost_ms": 10, "scale_param": "pack_count"},
        variant="simulated", tags=["A5", "R5", "L3"],
    )


def gen_b8_eager_model(root: Path) -> None:
    out = root / "B8" / "b8-eager-model"
    src = out / "src"
    common_modules(src, "mdl", (
        'PARSE_REPEATS = int(PARAMS.get("parse_repeats", 2))\n'
        'PAD_ITERS = int(PARAMS.get("pad_iters", 100000))\n'
    ))
    assets = out / "assets"
    assets.mkdir(parents=True, exist_ok=True)
    rows = [{"id": i, "weight": (i * 37) % 1000 / 1000.0,
             "label": f"row-{i:04d}", "features": [(i * k) % 101 for k in range(12)]}
            for i in range(4000)]
    (assets / "model.json").write_text(json.dumps({"rows": rows}), encoding="utf-8")
    write(src / "mdl_store.py",
          '"""Parses the full model asset at import and builds a row index."""\n'
          "import json as _json\n"
          "import os as _os\n\n"
          "import mdl_params\n"
          "import mdl_work\n\n"
          "_path = _os.path.join(_os.path.dirname(_os.path.dirname(_os.path.abspath(__file__))),\n"
          "                      'assets', 'model.json')\n"
          "INDEX = {}\n"
          "for _ in range(mdl_params.PARSE_REPEATS):\n"
          "    with open(_path, encoding='utf-8') as _fh:\n"
          "        _doc = _json.load(_fh)\n"
          "    INDEX = {row['label']: row['weight'] for row in _doc['rows']}\n"
          "mdl_work.spin(mdl_params.PAD_ITERS)\n")
    write(src / "mdl_api.py",
          "import mdl_store\n\n\n"
          "def weight(label):\n"
          "    return mdl_store.INDEX.get(label, 0.0)\n")
    write(out / "driver.py",
          "import mdl_api\n"
          "import mdl_util\n\n\n"
          "def handler(payload=None):\n"
          "    return (mdl_api.weight('row-0001'), mdl_util.digest(payload))\n")
    scenario_json(
        out,
        id="b8-eager-model", category="B8", layer="runtime", phase="import",
        must_blame=["mdl_store"],
        must_not_blame=["driver", "mdl_api", "mdl_util"],
        params={"parse_repeats": 2, "pad_iters": 100000,
                "min_cost_ms": 12, "scale_param": "parse_repeats"},
        variant="simulated", tags=["A5", "R5", "L1"],
    )


GENERATORS = [
    gen_b1_facade_chain, gen_b1_reexport_hub, gen_b1_diamond,
    gen_b2_thin_client, gen_b2_util_drag,
    gen_b3_filegen, gen_b3_schema_compile, gen_b3_boot_probe,
    gen_b4_lazy_orm, gen_b4_conn_pool,
    gen_b5_many_tiny, gen_b5_zip_bundle,
    gen_b6_sim_binding, gen_b6_native_sqlite,
    gen_b7_plugin_scan, gen_b7_metadata_probe,
    gen_b8_eager_locales, gen_b8_eager_model,
]


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "corpus"))
    parser.add_argument("--wipe", action="store_true", help="remove the corpus dir first")
    args = parser.parse_args()
    root = Path(args.out)
    if args.wipe and root.exists():
        shutil.rmtree(root)
    for gen in GENERATORS:
        gen(root)
    count = len(list(root.rglob("scenario.json")))
    print(f"generated {count} scenarios under {root}")


if __name__ == "__main__":
    main()
