# distutils: language = c++
# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled pair-signature kernel for the 2-dimensional refinement."""
import numpy as np

cimport numpy as cnp
from libc.stdlib cimport qsort
from libcpp.algorithm cimport sort as cpp_sort

cnp.import_array()


def pair_keys(color, long long k):
    """Refinement keys of all pairs, one row per pair ``a*n + b``.

    Column 0 is ``color[a, b]``; columns ``1..n`` are the codes
    ``color[a, g] * k + color[g, b]`` over all ``g``, sorted ascending.
    """
    c = np.ascontiguousarray(color, dtype=np.int64)
    cdef const long long[:, ::1] cv = c
    cdef const long long[:, ::1] tv = np.ascontiguousarray(c.T)
    cdef Py_ssize_t n = cv.shape[0]
    out = np.empty((n * n, n + 1), dtype=np.int64)
    cdef long long[:, ::1] o = out
    cdef Py_ssize_t a, b, g, row
    with nogil:
        for a in range(n):
            for b in range(n):
                row = a * n + b
                o[row, 0] = cv[a, b]
                for g in range(n):
                    o[row, g + 1] = cv[a, g] * k + tv[b, g]
                cpp_sort(&o[row, 1], &o[row, 1] + n)
    return out


cdef const long long* _rows_base
cdef Py_ssize_t _rows_cols


cdef int _cmp_rows(const void* a, const void* b) noexcept nogil:
    cdef const long long* x = _rows_base + (<const long long*>a)[0] * _rows_cols
    cdef const long long* y = _rows_base + (<const long long*>b)[0] * _rows_cols
    cdef Py_ssize_t j
    for j in range(_rows_cols):
        if x[j] != y[j]:
            return -1 if x[j] < y[j] else 1
    return 0


def rank_rows(keys):
    """Dense lexicographic rank of each row of an int64 matrix."""
    global _rows_base, _rows_cols
    m = np.ascontiguousarray(keys, dtype=np.int64)
    cdef const long long[:, ::1] mv = m
    cdef Py_ssize_t rows = mv.shape[0], cols = mv.shape[1]
    order = np.arange(rows, dtype=np.int64)
    ranks = np.zeros(rows, dtype=np.int64)
    if rows == 0 or cols == 0:
        return ranks
    cdef long long[::1] ordv = order
    cdef long long[::1] rv = ranks
    cdef long long r = 0
    cdef Py_ssize_t i
    # module globals feed the comparator; the GIL is held so no reentrancy
    _rows_base = &mv[0, 0]
    _rows_cols = cols
    qsort(&ordv[0], rows, sizeof(long long), _cmp_rows)
    for i in range(1, rows):
        if _cmp_rows(&ordv[i], &ordv[i - 1]) != 0:
            r += 1
        rv[ordv[i]] = r
    return ranks
