import btp_app
import btp_util


def handler(payload=None):
    return (btp_app.get('key0'), btp_util.digest(payload))
