# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. Same API as ``_pykernels``."""

from libc.stdlib cimport free, malloc


def levenshtein(str a, str b):
    cdef Py_ssize_t n, m, i, j
    cdef Py_ssize_t *prev
    cdef Py_ssize_t *cur
    cdef Py_ssize_t *tmp
    cdef Py_ssize_t best, cost
    cdef Py_UCS4 ca

    if len(a) < len(b):
        a, b = b, a
    n = len(a)
    m = len(b)
    if m == 0:
        return n
    prev = <Py_ssize_t *> malloc((m + 1) * sizeof(Py_ssize_t))
    cur = <Py_ssize_t *> malloc((m + 1) * sizeof(Py_ssize_t))
    if prev == NULL or cur == NULL:
        free(prev)
        free(cur)
        raise MemoryError()
    try:
        for j in range(m + 1):
            prev[j] = j
        for i in range(1, n + 1):
            ca = a[i - 1]
            cur[0] = i
            for j in range(1, m + 1):
                cost = prev[j - 1] + (0 if ca == b[j - 1] else 1)
                best = prev[j] + 1
                if cur[j - 1] + 1 < best:
                    best = cur[j - 1] + 1
                if cost < best:
                    best = cost
                cur[j] = best
            tmp = prev
            prev = cur
            cur = tmp
        return prev[m]
    finally:
        free(prev)
        free(cur)


def char_ngram_counts(str text, Py_ssize_t n, dict counts=None):
    cdef Py_ssize_t i, stop
    cdef str gram
    if counts is None:
        counts = {}
    stop = len(text) - n + 1
    for i in range(stop):
        gram = text[i:i + n]
        counts[gram] = counts.get(gram, 0) + 1
    return counts
