"""Scans entry-point metadata files at startup and indexes them."""
import os as _os

import eps_params
import eps_work

_meta_dir = _os.path.join(_os.path.dirname(_os.path.dirname(_os.path.abspath(__file__))),
                          'assets', 'meta')
_files = sorted(_os.listdir(_meta_dir))[:eps_params.META_COUNT]
INDEX = {}
for _fname in _files:
    with open(_os.path.join(_meta_dir, _fname), encoding='utf-8') as _fh:
        _entry = dict(line.strip().split('=', 1) for line in _fh if '=' in line)
    eps_work.spin(eps_params.PARSE_ITERS)
    INDEX[_entry['name']] = _entry
