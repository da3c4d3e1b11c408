import tcl_client
import tcl_util


def handler(payload=None):
    return (tcl_client.ping(), tcl_util.digest(payload))
