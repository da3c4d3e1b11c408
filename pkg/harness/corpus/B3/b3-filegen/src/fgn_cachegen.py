"""Writes a generated file cache into the working directory at
import time, then reads it back and checksums it."""
import os as _os

import fgn_params
import fgn_work

_cache_dir = _os.path.join(_os.getcwd(), 'cache_gen')
_os.makedirs(_cache_dir, exist_ok=True)
CHECKSUMS = {}
for _i in range(fgn_params.FILE_COUNT):
    _blob = bytes((_i * 7 + _j) % 251 for _j in range(4096))
    _path = _os.path.join(_cache_dir, 'part_%03d.bin' % _i)
    with open(_path, 'wb') as _fh:
        _fh.write(_blob)
    with open(_path, 'rb') as _fh:
        CHECKSUMS[_i] = sum(_fh.read()) % 65521
fgn_work.spin(fgn_params.PAD_ITERS)
