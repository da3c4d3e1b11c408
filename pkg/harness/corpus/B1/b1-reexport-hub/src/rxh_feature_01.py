import rxh_params
import rxh_work

NAME = 'feature_01'
_STATE = rxh_work.spin(rxh_params.FEATURE_ITERS)


def describe():
    return NAME, _STATE & 0xFF
