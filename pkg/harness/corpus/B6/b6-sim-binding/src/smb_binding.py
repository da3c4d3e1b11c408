"""Simulated foreign-binding bootstrap (CPU spin stands in for
library relocation and symbol table setup)."""
import smb_params
import smb_work

smb_work.spin(smb_params.INIT_ITERS)
SYMBOLS = {'sym_%03d' % i: i * 17 for i in range(smb_params.SYMBOL_COUNT)}


def call(name):
    return SYMBOLS.get(name, -1)
