import importlib

import rxh_params

REGISTRY = {}
for _i in range(min(rxh_params.FANOUT, 12)):
    _mod = importlib.import_module('rxh_feature_%02d' % _i)
    REGISTRY[_mod.NAME] = _mod.describe
