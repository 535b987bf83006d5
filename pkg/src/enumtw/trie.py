"""Factor-trie backend selection.

The compiled kernel is used when available; set ``ENUMTW_PURE_PYTHON=1`` to
force the pure-Python implementation.
"""

from __future__ import annotations

import os

if os.environ.get("ENUMTW_PURE_PYTHON"):
    from .trie_py import BACKEND, Trie
else:
    try:
        from ._fasttrie import BACKEND, Trie  # type: ignore[attr-defined]
    except ImportError:
        from .trie_py import BACKEND, Trie

__all__ = ["Trie", "BACKEND"]
