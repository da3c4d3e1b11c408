import pgs_host
import pgs_util


def handler(payload=None):
    hook = pgs_host.registry.REGISTRY['p_00']
    return (hook(payload), pgs_util.digest(payload))
