import udg_api
import udg_util


def handler(payload=None):
    return (udg_api.tag(payload), udg_util.digest(payload))
