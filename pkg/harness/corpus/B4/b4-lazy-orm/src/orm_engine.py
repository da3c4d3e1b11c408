"""Heavy mapper bootstrap: imported lazily on first invocation."""
import orm_params
import orm_work

orm_work.spin(orm_params.ENGINE_ITERS)
MODELS = {'model_%02d' % i: tuple(range(i % 7)) for i in range(orm_params.MODEL_COUNT)}


def query(data):
    orm_work.spin(1500)
    return len(MODELS) + (len(data) if data else 0)
