"""Scale parameters, read from this scenario's scenario.json."""
import json as _json
import os as _os

_here = _os.path.dirname(_os.path.abspath(__file__))
with open(_os.path.join(_os.path.dirname(_here), "scenario.json"), encoding="utf-8") as _fh:
    PARAMS = _json.load(_fh)["params"]

FANOUT = int(PARAMS.get("fanout", 10))
HEAVY_ITERS = int(PARAMS.get("heavy_iters", 170000))
FEATURE_ITERS = int(PARAMS.get("feature_iters", 1500))

