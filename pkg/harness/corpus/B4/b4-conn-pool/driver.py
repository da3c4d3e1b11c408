import cpl_codec
import cpl_util

_pool = None


def handler(payload=None):
    global _pool
    if _pool is None:
        import cpl_pool
        _pool = cpl_pool
    conn = _pool.acquire()
    return (conn[1], cpl_codec.encode(payload), cpl_util.digest(payload))
