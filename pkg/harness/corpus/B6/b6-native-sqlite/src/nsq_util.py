"""Small helper the handler actually uses on every invocation."""
import nsq_work


def digest(payload):
    data = payload if payload is not None else b"warm"
    nsq_work.spin(9000)
    total = 17
    for byte in data[:256]:
        total = (total * 31 + byte) % 1000003
    return total
