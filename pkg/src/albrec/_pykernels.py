"""Pure-Python sparse cosine kernels.

Reference implementation for the compiled module: ``albrec._ckernels`` must
match it bit for bit (same merge order, same accumulation order, IEEE
double arithmetic on both sides).
"""

from __future__ import annotations

import math


def sparse_dot(ids1, w1, ids2, w2) -> float:
    """Dot product of two sparse vectors with strictly increasing term ids."""
    ids1 = list(ids1)
    w1 = list(w1)
    ids2 = list(ids2)
    w2 = list(w2)
    i = j = 0
    n1 = len(ids1)
    n2 = len(ids2)
    acc = 0.0
    while i < n1 and j < n2:
        a = ids1[i]
        b = ids2[j]
        if a == b:
            acc += w1[i] * w2[j]
            i += 1
            j += 1
        elif a < b:
            i += 1
        else:
            j += 1
    return acc


def cosine_scores(q_ids, q_w, q_norm_sq, indptr, c_ids, c_w, c_norm_sq, out) -> None:
    """Cosine of one query against every candidate row of a CSR matrix.

    A zero-norm side yields similarity 0. Scores are clamped to 1.0 to
    absorb last-ulp rounding above the Cauchy-Schwarz bound.
    """
    q_ids = list(q_ids)
    q_w = list(q_w)
    indptr = list(indptr)
    c_ids = list(c_ids)
    c_w = list(c_w)
    norms = list(c_norm_sq)
    nq = len(q_ids)
    for k in range(len(norms)):
        if q_norm_sq == 0.0 or norms[k] == 0.0:
            out[k] = 0.0
            continue
        acc = 0.0
        i = 0
        j = indptr[k]
        hi = indptr[k + 1]
        while i < nq and j < hi:
            a = q_ids[i]
            b = c_ids[j]
            if a == b:
                acc += q_w[i] * c_w[j]
                i += 1
                j += 1
            elif a < b:
                i += 1
            else:
                j += 1
        score = acc / math.sqrt(q_norm_sq * norms[k])
        if score > 1.0:
            score = 1.0
        out[k] = score
