"""Scale parameters, read from this scenario's scenario.json."""
import json as _json
import os as _os

_here = _os.path.dirname(_os.path.abspath(__file__))
with open(_os.path.join(_os.path.dirname(_here), "scenario.json"), encoding="utf-8") as _fh:
    PARAMS = _json.load(_fh)["params"]

PROBE_COUNT = int(PARAMS.get("probe_count", 8))
PROBE_DELAY_MS = float(PARAMS.get("probe_delay_ms", 2.0))

