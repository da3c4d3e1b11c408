import bnd_bundle
import bnd_util


def handler(payload=None):
    return (len(bnd_bundle.REGISTRY), bnd_util.digest(payload))
