"""Exact checks of the quantum MacMahon master identity.

Thin wrappers over the compiled ``_qmm`` extension; report-producing calls
return parsed JSON dictionaries.
"""

import json as _json

from . import _qmm
from ._qmm import UsageError, classical_check, ideal_member, qdet, relations, run_cli

__all__ = [
    "UsageError",
    "classical_check",
    "ideal_member",
    "koszul",
    "qdet",
    "relations",
    "run_cli",
    "verify_master",
    "verify_twisted",
]


def verify_master(n, degree, params="multi", mode="specialize", seeds=3, seed=1):
    return _json.loads(_qmm.verify_master(n, degree, params, mode, seeds, seed))


def verify_twisted(n, degree, mode="specialize", seeds=3, seed=1):
    return _json.loads(_qmm.verify_twisted(n, degree, mode, seeds, seed))


def koszul(n, ell, params="multi", mode="specialize", seeds=3, seed=1):
    return _json.loads(_qmm.koszul(n, ell, params, mode, seeds, seed))
