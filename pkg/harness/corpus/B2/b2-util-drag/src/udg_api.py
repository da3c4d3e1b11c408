import udg_helpers


def tag(data):
    return ('tag', len(data) if data else 0)
