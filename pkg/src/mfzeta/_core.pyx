# cython: language_level=3
"""Compiled kernels: word periods, stopping-set traversal, cyclic window averages.

Signatures mirror :mod:`mfzeta._core_py` exactly.
"""
import numpy as np

cimport numpy as cnp
from libc.stdlib cimport free, malloc

cnp.import_array()


cdef Py_ssize_t _min_period(const int* w, Py_ssize_t n, Py_ssize_t* fail) noexcept nogil:
    cdef Py_ssize_t i, k = 0
    fail[0] = 0
    for i in range(1, n):
        while k > 0 and w[i] != w[k]:
            k = fail[k - 1]
        if w[i] == w[k]:
            k += 1
        fail[i] = k
    return n - fail[n - 1]


def minimal_period(w):
    cdef cnp.ndarray[int, ndim=1, mode="c"] arr = np.ascontiguousarray(w, dtype=np.intc)
    cdef Py_ssize_t n = arr.shape[0]
    if n == 0:
        raise ValueError("empty word")
    cdef Py_ssize_t* fail = <Py_ssize_t*> malloc(n * sizeof(Py_ssize_t))
    cdef Py_ssize_t p
    try:
        p = _min_period(&arr[0], n, fail)
    finally:
        free(fail)
    return int(p)


def prime_mask(words):
    cdef cnp.ndarray[int, ndim=2, mode="c"] arr = np.ascontiguousarray(words, dtype=np.intc)
    cdef Py_ssize_t m = arr.shape[0], n = arr.shape[1], row, p
    out = np.empty(m, dtype=bool)
    cdef cnp.uint8_t[::1] res = out.view(np.uint8)
    if n == 0:
        raise ValueError("empty words")
    cdef Py_ssize_t* fail = <Py_ssize_t*> malloc(n * sizeof(Py_ssize_t))
    try:
        with nogil:
            for row in range(m):
                p = _min_period(&arr[row, 0], n, fail)
                res[row] = 1 if (p == n or n % p != 0) else 0
    finally:
        free(fail)
    return out


cdef Py_ssize_t _stopping_walk(const double* lr, Py_ssize_t N, double log_delta, int* path, double* acc,
                               Py_ssize_t max_words, Py_ssize_t* n_symbols,
                               int* out_syms, long long* out_offs, double* out_logs) noexcept nogil:
    """Depth-first walk; fills the outputs when they are non-NULL.  Returns the
    word count, or -1 once it passes ``max_words``."""
    cdef Py_ssize_t level = 0, count = 0, total = 0, j
    cdef int sym
    cdef double lw
    acc[0] = 0.0
    path[0] = 0
    if out_offs != NULL:
        out_offs[0] = 0
    # path[level] is the symbol being tried at this depth
    while level >= 0:
        sym = path[level]
        if sym >= N:
            level -= 1
            if level >= 0:
                path[level] += 1
            continue
        lw = acc[level] + lr[sym]
        if lw <= log_delta:
            if count >= max_words:
                return -1
            if out_syms != NULL:
                for j in range(level + 1):
                    out_syms[total + j] = path[j]
                out_offs[count + 1] = total + level + 1
                out_logs[count] = lw
            total += level + 1
            count += 1
            path[level] += 1
        else:
            acc[level + 1] = lw
            level += 1
            path[level] = 0
    n_symbols[0] = total
    return count


def stopping_words(log_r, double log_delta, Py_ssize_t max_words):
    cdef cnp.ndarray[double, ndim=1, mode="c"] lr = np.ascontiguousarray(log_r, dtype=np.float64)
    cdef Py_ssize_t N = lr.shape[0]
    cdef double lmax = lr.max()
    if lmax >= 0.0:
        raise ValueError("log ratios must be negative")
    # deepest possible stop
    cdef Py_ssize_t depth = max(<Py_ssize_t>(log_delta / lmax), 0) + 2
    cdef int* path = <int*> malloc(depth * sizeof(int))
    cdef double* acc = <double*> malloc((depth + 1) * sizeof(double))
    cdef Py_ssize_t count, total = 0
    cdef cnp.ndarray[int, ndim=1, mode="c"] symbols
    cdef cnp.ndarray[long long, ndim=1, mode="c"] offsets
    cdef cnp.ndarray[double, ndim=1, mode="c"] logs
    if path == NULL or acc == NULL:
        free(path)
        free(acc)
        raise MemoryError()
    try:
        # first pass sizes the outputs, second pass fills them
        with nogil:
            count = _stopping_walk(&lr[0], N, log_delta, path, acc, max_words, &total, NULL, NULL, NULL)
        if count < 0:
            raise MemoryError(f"stopping set exceeds {max_words} words")
        symbols = np.empty(total, dtype=np.intc)
        offsets = np.empty(count + 1, dtype=np.longlong)
        logs = np.empty(count, dtype=np.float64)
        with nogil:
            _stopping_walk(&lr[0], N, log_delta, path, acc, max_words, &total,
                           &symbols[0] if total else NULL, &offsets[0], &logs[0] if count else NULL)
    finally:
        free(path)
        free(acc)
    return symbols.astype(np.int32, copy=False), offsets.astype(np.int64, copy=False), logs


def cyclic_birkhoff(words, table, Py_ssize_t k, Py_ssize_t N):
    cdef cnp.ndarray[int, ndim=2, mode="c"] arr = np.ascontiguousarray(words, dtype=np.intc)
    cdef cnp.ndarray[double, ndim=1, mode="c"] f = np.ascontiguousarray(table, dtype=np.float64)
    cdef Py_ssize_t m = arr.shape[0], n = arr.shape[1], row, j, t
    cdef long code
    if f.shape[0] != N ** k:
        raise ValueError(f"table has {f.shape[0]} entries, expected {N ** k}")
    if n == 0:
        raise ValueError("empty words")
    if m and (arr.min() < 0 or arr.max() >= N):
        raise ValueError("symbol out of range")
    out = np.empty(m, dtype=np.float64)
    cdef double[::1] res = out
    cdef double s
    with nogil:
        for row in range(m):
            s = 0.0
            for j in range(n):
                code = 0
                for t in range(k):
                    code = code * N + arr[row, (j + t) % n]
                s += f[code]
            res[row] = s / n
    return out
