"""Backend selection for the hot kernels.

Imports the compiled extension when present, otherwise the numpy
fallback.  Setting STITCHSAMPLER_PURE=1 in the environment forces the
fallback even when the extension is installed (used by the parity tests
and the kernel benchmark).
"""

import os

from . import _pykernels

try:
    from . import _ckernels
except ImportError:
    _ckernels = None

_force_pure = os.environ.get("STITCHSAMPLER_PURE", "") == "1"

HAVE_COMPILED = _ckernels is not None

if HAVE_COMPILED and not _force_pure:
    _impl = _ckernels
    BACKEND = "compiled"
    # The compiled block generator beats a scalar Python loop from n=2 up.
    BITS_BLOCK_MIN = 2
else:
    _impl = _pykernels
    BACKEND = "python"
    # numpy ufunc overhead makes small blocks slower than a scalar loop.
    BITS_BLOCK_MIN = 12

bits_block = _impl.bits_block
close_pair_count = _impl.close_pair_count
cross_pair_count = _impl.cross_pair_count
close_neighbor_mask = _impl.close_neighbor_mask
close_pair_counts_batch = _impl.close_pair_counts_batch


def backend_name() -> str:
    return BACKEND
