import tcl_engine


def ping():
    return 'pong'
