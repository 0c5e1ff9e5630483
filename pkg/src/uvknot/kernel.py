"""Kernel selector: compiled Cython primitives if available, else pure Python.

Set the environment variable ``UVKNOT_PURE=1`` to force the fallback
(useful for benchmarking the two implementations against each other).
"""

import os

if os.environ.get("UVKNOT_PURE"):
    from uvknot import _kernel_py as _impl
else:
    try:
        from uvknot import _kernel as _impl  # type: ignore[attr-defined]
    except ImportError:
        from uvknot import _kernel_py as _impl

KERNEL_IMPL = _impl.KERNEL_IMPL
v_vector = _impl.v_vector
min_w2 = _impl.min_w2
dead_corners = _impl.dead_corners
is_nonzero = _impl.is_nonzero
mul_w2 = _impl.mul_w2
csign = _impl.csign
clear_caches = _impl.clear_caches
