"""Compiled engine for ordered pair-contraction sums.

Semantics match ``clusternet._wick_py.dp_expectation`` exactly; see there
for the algorithm.  This twin trades the adaptive dict for a flat
mixed-radix state table (radix per class = its token count + 1), which keeps
the inner loop free of Python objects.  The caller guarantees the table fits
in memory.
"""

import numpy as np


def dp_expectation(classes, ctr):
    """Sum over all order-respecting perfect matchings of the word."""
    cdef long long[::1] cls = np.ascontiguousarray(classes, dtype=np.int64)
    cdef double complex[:, ::1] c = np.ascontiguousarray(ctr, dtype=np.complex128)

    cdef Py_ssize_t length = cls.shape[0]
    cdef Py_ssize_t n_classes = c.shape[0]
    if length == 0:
        return 1.0 + 0.0j
    if length % 2 == 1:
        return 0.0 + 0.0j

    cdef Py_ssize_t pos, k, idx
    for pos in range(length):
        if cls[pos] < 0 or cls[pos] >= n_classes:
            raise ValueError("class id outside contraction matrix")

    counts_arr = np.zeros(n_classes, dtype=np.int64)
    cdef long long[::1] counts = counts_arr
    for pos in range(length):
        counts[cls[pos]] += 1

    radix_arr = counts_arr + 1
    stride_arr = np.ones(n_classes, dtype=np.int64)
    for k in range(1, n_classes):
        stride_arr[k] = stride_arr[k - 1] * radix_arr[k - 1]
    cdef long long[::1] radix = radix_arr
    cdef long long[::1] stride = stride_arr
    cdef Py_ssize_t n_states = int(stride_arr[n_classes - 1] * radix_arr[n_classes - 1])

    cur_arr = np.zeros(n_states, dtype=np.complex128)
    nxt_arr = np.zeros(n_states, dtype=np.complex128)
    cur_arr[0] = 1.0
    cdef double complex[::1] cur = cur_arr
    cdef double complex[::1] nxt = nxt_arr

    cdef Py_ssize_t tok, remaining
    cdef long long n_open, total_open
    cdef double complex amp
    for pos in range(length):
        tok = cls[pos]
        remaining = length - pos - 1
        nxt_arr.fill(0.0)
        for idx in range(n_states):
            amp = cur[idx]
            if amp.real == 0.0 and amp.imag == 0.0:
                continue
            total_open = 0
            for k in range(n_classes):
                n_open = (idx // stride[k]) % radix[k]
                total_open += n_open
                if n_open > 0:
                    nxt[idx - stride[k]] = nxt[idx - stride[k]] + amp * n_open * c[k, tok]
            if total_open + 1 <= remaining:  # opening must still be closable
                nxt[idx + stride[tok]] = nxt[idx + stride[tok]] + amp
        cur_arr, nxt_arr = nxt_arr, cur_arr
        cur = cur_arr
        nxt = nxt_arr
    return complex(cur_arr[0])
