import btp_bootcfg


def get(key):
    return btp_bootcfg.CONFIG.get(key, '')
