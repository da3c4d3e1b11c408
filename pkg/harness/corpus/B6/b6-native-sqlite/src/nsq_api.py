import nsq_bridge


def rows():
    return nsq_bridge.ROWS_LOADED
