import orm_util

_engine = None


def handler(payload=None):
    global _engine
    if _engine is None:
        import orm_engine
        _engine = orm_engine
    return (_engine.query(payload), orm_util.digest(payload))
