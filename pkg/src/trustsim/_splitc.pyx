# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled best-split search; bit-compatible twin of ``trustsim._splitpy``.

Same scan order, same tie-breaking, same floating-point expressions, so a
tree grown with either backend is identical node for node.
"""

from libc.math cimport log2

import numpy as np

BACKEND = "compiled"


cdef inline double _entropy(Py_ssize_t c0, Py_ssize_t c1) noexcept nogil:
    if c0 == 0 or c1 == 0:
        return 0.0
    cdef double n = <double> (c0 + c1)
    cdef double p0 = <double> c0 / n
    cdef double p1 = <double> c1 / n
    return -(p0 * log2(p0) + p1 * log2(p1))


def best_split(const double[:, ::1] values, const unsigned char[::1] labels, Py_ssize_t min_leaf):
    """See ``trustsim._splitpy.best_split``; this is the compiled twin."""
    cdef Py_ssize_t n = values.shape[0]
    cdef Py_ssize_t d = values.shape[1]
    cdef Py_ssize_t total0, total1 = 0
    cdef Py_ssize_t i, j, pos, n_left, n_right, left0, left1
    cdef double parent, child, gain, value, nxt
    cdef Py_ssize_t best_feature = -1
    cdef double best_threshold = 0.0
    cdef double best_gain = 0.0
    cdef const Py_ssize_t[::1] order

    for i in range(n):
        if labels[i]:
            total1 += 1
    total0 = n - total1
    parent = _entropy(total0, total1)

    base = np.asarray(values)
    for j in range(d):
        order_np = np.argsort(base[:, j], kind="stable").astype(np.intp, copy=False)
        order = order_np
        left0 = 0
        left1 = 0
        for pos in range(n - 1):
            i = order[pos]
            if labels[i]:
                left1 += 1
            else:
                left0 += 1
            value = values[i, j]
            nxt = values[order[pos + 1], j]
            if nxt == value:
                continue
            n_left = pos + 1
            n_right = n - n_left
            if n_left < min_leaf or n_right < min_leaf:
                continue
            child = (
                n_left * _entropy(left0, left1)
                + n_right * _entropy(total0 - left0, total1 - left1)
            ) / n
            gain = parent - child
            if gain > best_gain:
                best_gain = gain
                best_feature = j
                best_threshold = (value + nxt) / 2.0
    return best_feature, best_threshold, best_gain
