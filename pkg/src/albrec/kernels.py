"""Similarity kernel backend selection.

The compiled Cython core is used when it was built; otherwise the
pure-Python fallback takes over with identical numerical behavior. Set
``ALBREC_PURE_PYTHON=1`` before import to force the fallback (useful for
benchmarking and debugging).
"""

from __future__ import annotations

import os

import numpy as np

if os.environ.get("ALBREC_PURE_PYTHON"):
    from . import _pykernels as _impl

    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "c"
    except ImportError:
        from . import _pykernels as _impl  # type: ignore[no-redef]

        BACKEND = "python"


def sparse_dot(ids1: np.ndarray, w1: np.ndarray, ids2: np.ndarray, w2: np.ndarray) -> float:
    """Dot product of two id-sorted sparse vectors."""
    return _impl.sparse_dot(ids1, w1, ids2, w2)


def cosine_scores(
    q_ids: np.ndarray,
    q_w: np.ndarray,
    q_norm_sq: float,
    indptr: np.ndarray,
    c_ids: np.ndarray,
    c_w: np.ndarray,
    c_norm_sq: np.ndarray,
) -> np.ndarray:
    """Cosine similarity of one query against each CSR candidate row."""
    out = np.zeros(len(c_norm_sq), dtype=np.float64)
    if len(c_norm_sq):
        _impl.cosine_scores(q_ids, q_w, q_norm_sq, indptr, c_ids, c_w, c_norm_sq, out)
    return out
