import mdl_api
import mdl_util


def handler(payload=None):
    return (mdl_api.weight('row-0001'), mdl_util.digest(payload))
