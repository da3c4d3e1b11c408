import fch_params
import fch_work

fch_work.spin(fch_params.LINK_ITERS)
import fch_core as _next
resolve = _next.resolve
