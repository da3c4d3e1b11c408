"""Scale parameters, read from this scenario's scenario.json."""
import json as _json
import os as _os

_here = _os.path.dirname(_os.path.abspath(__file__))
with open(_os.path.join(_os.path.dirname(_here), "scenario.json"), encoding="utf-8") as _fh:
    PARAMS = _json.load(_fh)["params"]

PARSE_REPEATS = int(PARAMS.get("parse_repeats", 2))
PAD_ITERS = int(PARAMS.get("pad_iters", 100000))

