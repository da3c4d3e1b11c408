"""Scale parameters, read from this scenario's scenario.json."""
import json as _json
import os as _os

_here = _os.path.dirname(_os.path.abspath(__file__))
with open(_os.path.join(_os.path.dirname(_here), "scenario.json"), encoding="utf-8") as _fh:
    PARAMS = _json.load(_fh)["params"]

SCHEMA_COUNT = int(PARAMS.get("schema_count", 40))
PER_SCHEMA_ITERS = int(PARAMS.get("per_schema_iters", 2000))
COMPILE_ITERS = int(PARAMS.get("compile_iters", 60000))

