import fch_link_00
import fch_util


def handler(payload=None):
    return fch_util.digest(payload)
