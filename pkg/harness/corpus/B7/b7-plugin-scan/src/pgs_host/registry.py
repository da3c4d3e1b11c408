"""Walks the plugin directory at startup, importing and validating
every plugin it finds."""
import importlib as _importlib
import os as _os

import pgs_params
import pgs_work

pgs_work.spin(pgs_params.SCAN_ITERS)
_plugin_dir = _os.path.join(_os.path.dirname(_os.path.abspath(__file__)), 'plugins')
_names = sorted(f[:-3] for f in _os.listdir(_plugin_dir)
                if f.startswith('p_') and f.endswith('.py'))
REGISTRY = {}
for _name in _names[:pgs_params.PLUGIN_COUNT]:
    _mod = _importlib.import_module('pgs_host.plugins.' + _name)
    pgs_work.spin(pgs_params.VALIDATE_ITERS)
    if not callable(getattr(_mod, 'HOOK', None)):
        raise RuntimeError('plugin %s lacks HOOK' % _name)
    REGISTRY[_mod.NAME] = _mod.HOOK
