import zbd_loader
import zbd_util


def handler(payload=None):
    return (len(zbd_loader.REGISTRY), zbd_util.digest(payload))
