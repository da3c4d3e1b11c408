import lcl_app
import lcl_util


def handler(payload=None):
    return (lcl_app.get('l00', 'msg_000'), lcl_util.digest(payload))
