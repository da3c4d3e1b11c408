import smb_binding


def version():
    return 'sim-1.0'
