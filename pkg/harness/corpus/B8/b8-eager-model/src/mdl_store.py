"""Parses the full model asset at import and builds a row index."""
import json as _json
import os as _os

import mdl_params
import mdl_work

_path = _os.path.join(_os.path.dirname(_os.path.dirname(_os.path.abspath(__file__))),
                      'assets', 'model.json')
INDEX = {}
for _ in range(mdl_params.PARSE_REPEATS):
    with open(_path, encoding='utf-8') as _fh:
        _doc = _json.load(_fh)
    INDEX = {row['label']: row['weight'] for row in _doc['rows']}
mdl_work.spin(mdl_params.PAD_ITERS)
