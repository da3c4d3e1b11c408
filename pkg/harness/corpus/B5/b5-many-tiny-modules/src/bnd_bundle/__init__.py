"""Bundle root: imports and registers every part at import time."""
import importlib as _importlib

import bnd_params
import bnd_work

REGISTRY = {}
for _i in range(min(bnd_params.PART_COUNT, 60)):
    _mod = _importlib.import_module('bnd_bundle.part_%02d' % _i)
    bnd_work.spin(bnd_params.REG_ITERS)
    REGISTRY[_mod.TOKEN] = _mod.FIELDS
