"""Scale parameters, read from this scenario's scenario.json."""
import json as _json
import os as _os

_here = _os.path.dirname(_os.path.abspath(__file__))
with open(_os.path.join(_os.path.dirname(_here), "scenario.json"), encoding="utf-8") as _fh:
    PARAMS = _json.load(_fh)["params"]

CORE_ITERS = int(PARAMS.get("core_iters", 230000))
SIDE_ITERS = int(PARAMS.get("side_iters", 7000))

