import fch_params
import fch_work

_STATE = fch_work.spin(fch_params.CORE_ITERS)


def resolve(key):
    return (_STATE ^ hash(key)) & 0xFFFF
