"""Connection pool built on first use, one spin per connection."""
import cpl_params
import cpl_work

POOL = []
for _i in range(cpl_params.POOL_SIZE):
    cpl_work.spin(cpl_params.CONN_ITERS)
    POOL.append(('conn', _i))


def acquire():
    return POOL[0]
