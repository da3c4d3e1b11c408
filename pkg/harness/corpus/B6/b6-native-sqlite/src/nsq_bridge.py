"""Foreign-function boundary: drives the system sqlite library
through ctypes at import time. The C-side work is visible to a
tracer only as this module's one opaque import duration. Falls
back to a deterministic spin when no shared library is available."""
import ctypes as _ctypes

import nsq_params
import nsq_work


def _fallback(rows):
    nsq_work.spin(rows * 60)
    return rows


def _native_init(rows):
    lib = None
    for _name in ('libsqlite3.so.0', 'libsqlite3.so', 'libsqlite3.dylib'):
        try:
            lib = _ctypes.CDLL(_name)
            break
        except OSError:
            continue
    if lib is None:
        return _fallback(rows)
    lib.sqlite3_open.argtypes = [_ctypes.c_char_p, _ctypes.POINTER(_ctypes.c_void_p)]
    lib.sqlite3_open.restype = _ctypes.c_int
    lib.sqlite3_exec.argtypes = [_ctypes.c_void_p, _ctypes.c_char_p,
                                 _ctypes.c_void_p, _ctypes.c_void_p, _ctypes.c_void_p]
    lib.sqlite3_exec.restype = _ctypes.c_int
    lib.sqlite3_close.argtypes = [_ctypes.c_void_p]
    db = _ctypes.c_void_p()
    if lib.sqlite3_open(b':memory:', _ctypes.byref(db)) != 0:
        return _fallback(rows)
    script = ['CREATE TABLE boot(k INTEGER PRIMARY KEY, v TEXT);', 'BEGIN;']
    script += ["INSERT INTO boot VALUES(%d, '%s');" % (i, 'x' * 48)
               for i in range(rows)]
    script.append('COMMIT;')
    lib.sqlite3_exec(db, ''.join(script).encode(), None, None, None)
    lib.sqlite3_close(db)
    return rows


ROWS_LOADED = _native_init(nsq_params.ROW_COUNT)
