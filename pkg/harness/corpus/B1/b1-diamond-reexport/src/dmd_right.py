import dmd_base
import dmd_params
import dmd_work

dmd_work.spin(dmd_params.EDGE_ITERS)
VIEW_RIGHT = dmd_base.VALUE + 5
