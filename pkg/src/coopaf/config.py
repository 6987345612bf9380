"""Size caps and runtime switches.

``COOPAF_DISABLE_NUMBA=1`` in the environment forces the pure-numpy kernel
path; it is read once, at import of :mod:`coopaf._kernels`.
"""
import os

MAX_PLAYERS = 24
CORE_VERTEX_MAX_PLAYERS = 6
ENUM_CAP = 20
NODE_CAP = 5000
DEFAULT_CHAIN_LENGTH = 10000
CHAIN_PRINT_LIMIT = 20


def numba_disabled() -> bool:
    return os.environ.get("COOPAF_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}
