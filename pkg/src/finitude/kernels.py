"""Table kernels, compiled when the extension is available.

Set ``FINITUDE_PURE_PYTHON=1`` to force the pure-Python implementations.
"""

import os

from . import _kernels_py

if os.environ.get("FINITUDE_PURE_PYTHON"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _kernels_py

BACKEND = "compiled" if _impl is not _kernels_py else "python"

encode_maps = _impl.encode_maps
product_codes = _impl.product_codes
find_nonassociative = _impl.find_nonassociative
ideal_matrices = _impl.ideal_matrices
weak_inverses = _impl.weak_inverses

__all__ = [
    "BACKEND",
    "encode_maps",
    "product_codes",
    "find_nonassociative",
    "ideal_matrices",
    "weak_inverses",
]
