import sch_api
import sch_util


def handler(payload=None):
    return (sch_api.validate(payload), sch_util.digest(payload))
