import smb_api
import smb_util


def handler(payload=None):
    return (smb_api.version(), smb_util.digest(payload))
