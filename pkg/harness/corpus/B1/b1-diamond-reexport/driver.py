import dmd_top
import dmd_util


def handler(payload=None):
    return dmd_util.digest(payload)
