import mdl_store


def weight(label):
    return mdl_store.INDEX.get(label, 0.0)
