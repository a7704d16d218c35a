"""Backend selection for the F_p matrix kernels.

Prefers the compiled Cython extension; falls back to the pure-Python
implementation when the extension is missing or EXTSYM_PURE=1 is set.
"""

import os

from . import pyfallback

if os.environ.get("EXTSYM_PURE"):
    _impl = pyfallback
    BACKEND = "pure"
else:
    try:
        from . import _corekern as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        _impl = pyfallback
        BACKEND = "pure"

matmul = _impl.matmul
rref = _impl.rref
rank = _impl.rank
kernel = _impl.kernel
