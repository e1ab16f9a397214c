"""Backend selection for the hot kernels.

At import time this module picks the compiled Cython backend when it is
available and falls back to the pure-Python reference otherwise.  Setting the
environment variable ``SIGNLAB_PURE_PYTHON=1`` forces the pure backend.

The compiled kernels only handle machine-word inputs, so the dispatchers
below re-check ranges per call and silently route oversized inputs to the
pure implementation.  Both backends are kept bit-identical;
``benchmarks/bench_kernels.py`` compares their speed and
``tests/test_kernels.py`` their outputs.
"""

import os

from . import _kernels_py as _pure

_FORCE_PURE = os.environ.get("SIGNLAB_PURE_PYTHON", "") not in ("", "0")

if not _FORCE_PURE:
    try:
        from . import _kernels as _fast
    except ImportError:
        _fast = None
else:
    _fast = None

BACKEND = _pure.BACKEND_NAME if _fast is None else _fast.BACKEND_NAME

# Largest magnitude admitted to the compiled int64 butterfly: the transform
# of a table of length L is bounded by L * max|input|.
_INT64_HEADROOM = 1 << 62


def wht_int(values):
    if _fast is not None:
        size = len(values)
        if size and max(abs(v) for v in values) <= _INT64_HEADROOM // size:
            return _fast.wht_int(values)
    return _pure.wht_int(values)


def combine_tables(codes_a, codes_b):
    if _fast is not None:
        a = list(codes_a)
        b = list(codes_b)
        if a and b and max(a) < 1 << 64 and max(b) < 1 << 64:
            return _fast.combine_tables(a, b)
        return _pure.combine_tables(a, b)
    return _pure.combine_tables(codes_a, codes_b)


def compose_values(fvals, gvals, n_outer, m_inner):
    if _fast is not None and n_outer * m_inner <= 20:
        return _fast.compose_values(fvals, gvals, n_outer, m_inner)
    return _pure.compose_values(fvals, gvals, n_outer, m_inner)


def sign_rep_search(cols, cmax):
    if _fast is not None and cols and len(cols[0]) <= 16 and cmax <= 1000:
        return _fast.sign_rep_search(cols, cmax)
    return _pure.sign_rep_search(cols, cmax)


def backend_info():
    """One-line description of the active kernel backend."""
    return f"kernels backend: {BACKEND}"
