import fgn_app
import fgn_util


def handler(payload=None):
    return (fgn_app.lookup(3), fgn_util.digest(payload))
