import nsq_api
import nsq_util


def handler(payload=None):
    return (nsq_api.rows(), nsq_util.digest(payload))
