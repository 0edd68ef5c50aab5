"""Kernel backend selection.

The compiled extension is used when it imports and the inputs fit in
int64 with headroom; otherwise the pure-Python kernels run.  Set
``FACILITY_GAME_BACKEND=python`` to force the fallback everywhere.
"""

import logging
import os

from . import _pykernels

log = logging.getLogger(__name__)

INT64_HEADROOM = 2**62

_requested = os.environ.get("FACILITY_GAME_BACKEND", "auto").lower()

compiled = None
if _requested != "python":
    try:
        from . import _kernels as compiled
    except ImportError:
        if _requested == "compiled":
            raise
        log.debug("compiled kernels unavailable, using pure-Python fallback")

python = _pykernels

BACKEND = "compiled" if compiled is not None else "python"


def fits_int64(bound):
    return bound < INT64_HEADROOM


def pick(bound, backend=None):
    """Return the kernel module for a computation whose intermediate
    magnitudes never exceed ``bound``."""
    if backend == "python" or compiled is None:
        return python
    if backend == "compiled":
        if not fits_int64(bound):
            raise OverflowError(f"magnitude bound {bound} too large for int64 kernels")
        return compiled
    return compiled if fits_int64(bound) else python


def available_backends():
    return ["python"] if compiled is None else ["python", "compiled"]
