import pgs_work

pgs_work.spin(700)
NAME = 'p_13'


def HOOK(data):
    return (NAME, len(data) if data else 13)
