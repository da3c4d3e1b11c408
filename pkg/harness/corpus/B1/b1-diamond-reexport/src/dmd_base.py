import dmd_params
import dmd_work

_STATE = dmd_work.spin(dmd_params.BASE_ITERS)
VALUE = _STATE & 0xFFFF
