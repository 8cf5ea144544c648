"""Louvain local-move kernel backends.

The compiled Cython kernel is preferred when present; the pure-Python twin
is the fallback.  Set ``COPNET_PURE_PYTHON=1`` before import to force the
fallback (useful for debugging and benchmarking).  Both backends implement
identical arithmetic and return identical partitions.
"""

import os

from . import _louvain_py

IMPLEMENTATIONS = {"python": _louvain_py.local_move_sweeps}

try:
    from . import _louvain_cy

    IMPLEMENTATIONS["cython"] = _louvain_cy.local_move_sweeps
except ImportError:
    pass

if os.environ.get("COPNET_PURE_PYTHON") or "cython" not in IMPLEMENTATIONS:
    BACKEND = "python"
else:
    BACKEND = "cython"

local_move_sweeps = IMPLEMENTATIONS[BACKEND]
