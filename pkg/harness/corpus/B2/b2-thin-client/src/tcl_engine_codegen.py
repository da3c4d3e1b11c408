import tcl_params
import tcl_work

tcl_work.spin(tcl_params.SIDE_ITERS)
