"""Hot loops, compiled with numba when available.

Set ``QCRYPTA_DISABLE_NUMBA=1`` before import to force the pure-numpy path.
Both backends stay importable (``numpy_backend`` / ``numba_backend()``) so
tests and the benchmark can compare them directly.
"""

import os

import numpy as np

from . import _numpy as numpy_backend

__all__ = [
    "BACKEND",
    "numpy_backend",
    "numba_backend",
    "ring_mul_positions",
    "gf_mul",
    "gf_ring_mul",
    "gf_rref",
    "bch_syndromes",
    "chien_search",
]


def _env_disabled():
    return os.environ.get("QCRYPTA_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes", "on")


def numba_backend():
    """Return the compiled backend module, or None if numba is unusable."""
    try:
        from . import _numba
    except ImportError:
        return None
    return _numba


_impl = numpy_backend if _env_disabled() else (numba_backend() or numpy_backend)
BACKEND = "numpy" if _impl is numpy_backend else "numba"


def ring_mul_positions(b, pos, n):
    return _impl.ring_mul_positions(
        np.ascontiguousarray(b, dtype=np.uint64),
        np.ascontiguousarray(pos, dtype=np.int64),
        int(n),
    )


def gf_mul(a, b, m, poly):
    a, b = np.broadcast_arrays(np.asarray(a, dtype=np.uint64), np.asarray(b, dtype=np.uint64))
    shape = a.shape
    a = np.ascontiguousarray(a.reshape(-1, 2))
    b = np.ascontiguousarray(b.reshape(-1, 2))
    return _impl.gf_mul(a, b, int(m), poly).reshape(shape)


def gf_ring_mul(a, b, m, poly):
    return _impl.gf_ring_mul(
        np.ascontiguousarray(a, dtype=np.uint64),
        np.ascontiguousarray(b, dtype=np.uint64),
        int(m),
        poly,
    )


def gf_rref(mat, m, poly):
    return _impl.gf_rref(np.ascontiguousarray(mat, dtype=np.uint64), int(m), poly)


def bch_syndromes(pos, exp, order, count):
    return _impl.bch_syndromes(
        np.ascontiguousarray(pos, dtype=np.int64), exp, int(order), int(count)
    )


def chien_search(lam_log, log_zero, exp, order, n):
    return _impl.chien_search(
        np.ascontiguousarray(lam_log, dtype=np.int64), int(log_zero), exp, int(order), int(n)
    )
