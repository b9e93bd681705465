"""Kernel backend selection.

The compiled ``_kernels`` extension is used when importable; otherwise the
pure-Python implementation.  Set ``FRAISSELAB_PURE=1`` to force the fallback.
"""

import os

from . import _kernels_py as _py
from ._kernels_py import (  # noqa: F401  carrier helpers shared by both backends
    FAM_GRAPH, FAM_PURE, FAM_RATIONALS, FAM_S2, FAM_TOURNAMENT, FRAC_BITS,
    FRAC_MASK, ONE, hash3, index_of, mix64, pair_code,
)

BACKEND = "python"
key_of = _py.key_of
s2_part = _py.s2_part
rel_bit = _py.rel_bit
scan = _py.scan
embeddings = _py.embeddings

if not os.environ.get("FRAISSELAB_PURE"):
    try:
        from . import _kernels as _c
    except ImportError:
        pass
    else:
        BACKEND = "cython"
        key_of = _c.key_of
        s2_part = _c.s2_part
        rel_bit = _c.rel_bit
        scan = _c.scan
        embeddings = _c.embeddings
