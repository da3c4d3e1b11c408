import fch_params
import fch_work

fch_work.spin(fch_params.LINK_ITERS)
if 12 + 1 < fch_params.CHAIN_LEN:
    import fch_link_13 as _next
else:
    import fch_core as _next
resolve = _next.resolve
