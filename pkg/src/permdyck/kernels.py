"""Backend selection for the occurrence-counting kernels.

The compiled extension is preferred when importable; the pure-Python
fallback is bit-for-bit equivalent (tested).  Set ``PERMDYCK_NO_EXT=1`` to
force the pure backend.
"""

from __future__ import annotations

import os
from typing import Sequence

from permdyck import _purecount

if os.environ.get("PERMDYCK_NO_EXT"):
    _impl = _purecount
    BACKEND = "python"
else:
    try:
        from permdyck import _fastcount as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _purecount
        BACKEND = "python"

histogram_pair = _impl.histogram_pair

# the compiled kernel uses fixed-size stack arrays; larger inputs take the
# pure path, which has no size limit
_COMPILED_MAX_N = 20


def count_pair(values: Sequence[int]) -> tuple[int, int]:
    vals = tuple(values)
    if len(vals) > _COMPILED_MAX_N:
        return _purecount.count_pair(vals)
    return tuple(_impl.count_pair(vals))


def count_312(values: Sequence[int]) -> int:
    return count_pair(values)[0]


def count_321(values: Sequence[int]) -> int:
    return count_pair(values)[1]
