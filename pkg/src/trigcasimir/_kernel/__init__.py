"""Hot kernels for exact rational matrices.

The compiled Cython extension is preferred; the pure-Python twin is used
when the extension is unavailable or when ``TRIGCASIMIR_PURE_KERNEL`` is
set (the benchmark uses this to compare both).
"""

import os

if os.environ.get("TRIGCASIMIR_PURE_KERNEL"):
    from . import _pure as _impl

    BACKEND = "pure"
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import _pure as _impl

        BACKEND = "pure"

mat_mul = _impl.mat_mul
mat_lincomb = _impl.mat_lincomb
normalize = _impl.normalize
