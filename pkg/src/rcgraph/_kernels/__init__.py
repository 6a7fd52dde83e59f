"""Kernel backend selection.

The environment variable ``RCGRAPH_KERNEL`` picks the implementation of the
hot kernels: ``numba`` (compiled, the default when numba imports cleanly),
``numpy`` (pure-numpy fallback), or ``auto``/unset.  Both backends share
signatures and produce identical results; ``benchmarks/bench_kernels.py``
compares their speed.
"""

from __future__ import annotations

import os

_requested = os.environ.get("RCGRAPH_KERNEL", "auto").strip().lower() or "auto"

if _requested in ("auto", ""):
    try:
        from . import numba_impl as _impl
    except ImportError:  # pragma: no cover - exercised only without numba
        from . import numpy_impl as _impl
elif _requested == "numba":
    from . import numba_impl as _impl
elif _requested == "numpy":
    from . import numpy_impl as _impl
else:  # pragma: no cover
    raise ImportError(
        f"RCGRAPH_KERNEL={_requested!r} not recognized; use 'numba', 'numpy' or 'auto'"
    )


def backend_name() -> str:
    return _impl.name


rainbow_connected = _impl.rainbow_connected
rainbow_pair = _impl.rainbow_pair
find_canonical_coloring = _impl.find_canonical_coloring
