"""Kernel backend selection.

The compiled extension (``_fast``, Cython) is used when it imported
cleanly and the arguments fit signed 64-bit range; anything else runs on
the pure-Python twin (``purepy``). Setting the environment variable
``COLLATZ_ARRIVAL_PURE=1`` before import forces the pure backend.

Both backends implement the same three primitives and are checked
against each other in the test suite; the benchmark script times them
side by side.
"""

import os

from . import purepy
from .purepy import STATUS_BUDGET, STATUS_CYCLE, STATUS_HIT, STATUS_LIMIT

_INT64_MAX = 2**63 - 1

_compiled = None
if not os.environ.get("COLLATZ_ARRIVAL_PURE"):
    try:
        from . import _fast as _compiled  # noqa: F401
    except ImportError:
        _compiled = None

BACKEND = "compiled" if _compiled is not None else "pure-python"


def using_compiled() -> bool:
    return _compiled is not None


def orbit_summary(k, h, sign, max_steps, state_limit):
    if _compiled is not None and k <= _INT64_MAX and max_steps <= _INT64_MAX:
        try:
            return _compiled.orbit_summary(
                k, h, sign, max_steps, min(state_limit, _INT64_MAX)
            )
        except OverflowError:
            pass
    return purepy.orbit_summary(k, h, sign, max_steps, state_limit)


def iterate_triples(k, i, h, sign, index_limit):
    if _compiled is not None and k <= _INT64_MAX and i <= _INT64_MAX:
        try:
            return _compiled.iterate_triples(
                k, i, h, sign, min(index_limit, _INT64_MAX)
            )
        except OverflowError:
            pass
    return purepy.iterate_triples(k, i, h, sign, index_limit)


def first_arrival(k, h, sign, max_i, index_limit):
    if _compiled is not None and k <= _INT64_MAX and max_i <= _INT64_MAX:
        try:
            return _compiled.first_arrival(
                k, h, sign, max_i, min(index_limit, _INT64_MAX)
            )
        except OverflowError:
            pass
    return purepy.first_arrival(k, h, sign, max_i, index_limit)
