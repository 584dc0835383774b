# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled merge-join kernels for sparse cosine similarity.

Mirrors ``albrec._pykernels`` operation for operation. Both backends must
produce bit-identical results (same accumulation order, plain double
arithmetic); the pure-Python module is the reference.
"""

from libc.math cimport sqrt


def sparse_dot(const int[::1] ids1, const double[::1] w1,
               const int[::1] ids2, const double[::1] w2):
    """Dot product of two sparse vectors with strictly increasing term ids."""
    cdef Py_ssize_t i = 0, j = 0
    cdef Py_ssize_t n1 = ids1.shape[0], n2 = ids2.shape[0]
    cdef double acc = 0.0
    cdef int a, b
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


def cosine_scores(const int[::1] q_ids, const double[::1] q_w, double q_norm_sq,
                  const long long[::1] indptr, const int[::1] c_ids,
                  const double[::1] c_w, const double[::1] c_norm_sq,
                  double[::1] out):
    """Cosine of one query against every candidate row of a CSR matrix.

    A zero-norm side yields similarity 0. Scores are clamped to 1.0 to
    absorb last-ulp rounding above the Cauchy-Schwarz bound.
    """
    cdef Py_ssize_t k, i, j, hi
    cdef Py_ssize_t nq = q_ids.shape[0], ncand = c_norm_sq.shape[0]
    cdef double acc, score
    cdef int a, b
    for k in range(ncand):
        if q_norm_sq == 0.0 or c_norm_sq[k] == 0.0:
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
        score = acc / sqrt(q_norm_sq * c_norm_sq[k])
        if score > 1.0:
            score = 1.0
        out[k] = score
