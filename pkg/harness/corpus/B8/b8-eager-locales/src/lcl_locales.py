"""Eagerly loads every locale pack at import, used or not."""
import json as _json
import os as _os

import lcl_params
import lcl_work

_dir = _os.path.join(_os.path.dirname(_os.path.dirname(_os.path.abspath(__file__))),
                     'assets', 'locales')
_files = sorted(_os.listdir(_dir))[:lcl_params.PACK_COUNT]
TABLE = {}
for _fname in _files:
    with open(_os.path.join(_dir, _fname), encoding='utf-8') as _fh:
        _pack = _json.load(_fh)
    lcl_work.spin(lcl_params.BUILD_ITERS)
    TABLE[_pack['locale']] = _pack['messages']
