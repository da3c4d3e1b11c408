"""Compiles every schema eagerly at import time."""
import json as _json
import re as _re

import sch_params
import sch_work

COMPILED = {}
for _i in range(sch_params.SCHEMA_COUNT):
    _fields = [f'f{_i}_{_k}' for _k in range(8)]
    _pattern = '^' + '|'.join(_fields) + '$'
    _doc = _json.loads(_json.dumps({'name': f's{_i}', 'fields': _fields}))
    COMPILED[_doc['name']] = (_re.compile(_pattern), tuple(_doc['fields']))
    sch_work.spin(sch_params.PER_SCHEMA_ITERS)
sch_work.spin(sch_params.COMPILE_ITERS)
