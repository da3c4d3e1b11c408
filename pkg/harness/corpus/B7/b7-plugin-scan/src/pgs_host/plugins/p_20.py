import pgs_work

pgs_work.spin(700)
NAME = 'p_20'


def HOOK(data):
    return (NAME, len(data) if data else 20)
