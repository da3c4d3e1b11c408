import udg_params
import udg_work

udg_work.spin(udg_params.MINOR_ITERS)
