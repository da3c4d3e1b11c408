import tcl_params
import tcl_work

_STATE = tcl_work.spin(tcl_params.CORE_ITERS)


def plan(key):
    return (_STATE ^ hash(key)) & 0xFFFF
