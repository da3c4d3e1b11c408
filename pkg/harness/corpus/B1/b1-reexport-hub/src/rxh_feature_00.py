import rxh_params
import rxh_work

NAME = 'feature_00'
_STATE = rxh_work.spin(rxh_params.HEAVY_ITERS)


def describe():
    return NAME, _STATE & 0xFF
