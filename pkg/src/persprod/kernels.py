"""Backend selection for the compute kernels.

The compiled extension is preferred when it imports; setting the environment
variable ``PERSPROD_PURE_PYTHON`` to a nonempty value forces the pure-Python
fallback.  Both backends expose the same three functions with identical
outputs; see ``benchmarks/bench_kernels.py`` for the speed comparison.
"""
from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("PERSPROD_PURE_PYTHON"):
    impl = _kernels_py
else:
    try:
        from . import _kernels as impl  # type: ignore[no-redef]
    except ImportError:  # pragma: no cover - depends on build environment
        impl = _kernels_py

BACKEND: str = impl.BACKEND_NAME


def pure() -> object:
    """The pure-Python backend, always available (used by parity tests)."""
    return _kernels_py
