import eps_api
import eps_util


def handler(payload=None):
    return (eps_api.lookup('ep_00'), eps_util.digest(payload))
