"""Backend selection for the numeric hot loops.

Two kernels dominate runtime: the brute-force subset enumeration used by the
oracle (and by the meta reduction's local subsolves) and the local search
inner loop.  Both are written as plain loops over numpy arrays so that they
can either be JIT-compiled with numba or executed as-is.

The backend is chosen once at import time from the ``MWIS_BACKEND``
environment variable:

* ``auto`` (default): use numba when it is importable, else the fallback.
* ``numba``: require numba, fail loudly if it is missing.
* ``numpy``: force the pure numpy/Python fallback even if numba is present.

Both backends produce bit-identical results; ``benchmarks/bench_backends.py``
compares their speed.
"""

import os

_CHOICE = os.environ.get("MWIS_BACKEND", "auto").strip().lower()
if _CHOICE not in ("auto", "numba", "numpy"):
    raise ValueError(
        f"MWIS_BACKEND must be one of auto/numba/numpy, got {_CHOICE!r}"
    )

NUMBA_ENABLED = False
if _CHOICE in ("auto", "numba"):
    try:
        from numba import njit as _njit

        NUMBA_ENABLED = True
    except ImportError:
        if _CHOICE == "numba":
            raise ImportError(
                "MWIS_BACKEND=numba but numba is not installed; "
                "install the 'accel' extra or set MWIS_BACKEND=numpy"
            ) from None

BACKEND = "numba" if NUMBA_ENABLED else "numpy"


def maybe_njit(fn):
    """JIT-compile ``fn`` under the numba backend, return it unchanged otherwise."""
    if NUMBA_ENABLED:
        return _njit(cache=True)(fn)
    return fn
