"""Scale parameters, read from this scenario's scenario.json."""
import json as _json
import os as _os

_here = _os.path.dirname(_os.path.abspath(__file__))
with open(_os.path.join(_os.path.dirname(_here), "scenario.json"), encoding="utf-8") as _fh:
    PARAMS = _json.load(_fh)["params"]

CHAIN_LEN = int(PARAMS.get("chain_len", 12))
LINK_ITERS = int(PARAMS.get("link_iters", 1200))
CORE_ITERS = int(PARAMS.get("core_iters", 190000))

