"""Backend selection for the bitmask kernels.

The compiled extension ``mmtensor._ckernels`` is used when it is importable
and the environment variable ``MMTENSOR_PURE_PYTHON`` is unset or empty.
Masks wider than 64 bits always go through the Python implementation.
"""
import os

from . import _pykernels

try:
    if os.environ.get("MMTENSOR_PURE_PYTHON"):
        raise ImportError("pure Python backend requested")
    from . import _ckernels
except ImportError:
    _ckernels = None

BACKEND = "cython" if _ckernels is not None else "python"

_WORD = 64


def available_backends():
    names = {"python": _pykernels}
    if _ckernels is not None:
        names["cython"] = _ckernels
    return names


def _impl(nbits):
    if _ckernels is not None and nbits <= _WORD:
        return _ckernels
    return _pykernels


def rank_batch(bases, queries, nbits):
    return _impl(nbits).rank_batch(bases, queries)


def min_symdiff_batch(family, queries, nbits):
    return _impl(nbits).min_symdiff_batch(family, queries)


def count_cycles(gap, side):
    impl = _ckernels if _ckernels is not None else _pykernels
    return impl.count_cycles(gap, side)


def exchange_ok(family, nbits):
    if _ckernels is not None and nbits <= 24:
        return _ckernels.exchange_ok(family, nbits)
    return _pykernels.exchange_ok(family, nbits)
