import rxh_hub
import rxh_util


def handler(payload=None):
    return rxh_util.digest(payload)
