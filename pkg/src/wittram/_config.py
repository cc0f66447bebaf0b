"""Runtime knobs read from the environment.

WITTRAM_MAX_N   largest Witt length allowed for symbolic tables (default 5)
WITTRAM_MAX_P   largest prime allowed for symbolic tables (default 7)
WITTRAM_NUMBA   "0" forces the pure-numpy kernels, anything else uses numba
                when it is importable (default "1")
"""

from __future__ import annotations

import os

DEFAULT_MAX_N = 5
DEFAULT_MAX_P = 7
DEFAULT_PRECISION = 50


def _int_env(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from None


def max_n() -> int:
    return _int_env("WITTRAM_MAX_N", DEFAULT_MAX_N)


def max_p() -> int:
    return _int_env("WITTRAM_MAX_P", DEFAULT_MAX_P)


def numba_requested() -> bool:
    return os.environ.get("WITTRAM_NUMBA", "1").strip().lower() not in ("0", "false", "no", "off")
