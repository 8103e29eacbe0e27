# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled hot kernels: exact integer matrix products and fixed-norm
box enumeration.

``imat_mul`` keeps Python-object arithmetic (arbitrary precision); the
win is loop dispatch.  ``enum_norm_vectors`` runs on C int64 and must
only be called when the caller has bounded all partial sums below 2^62
(the pure-Python wrapper in ``kernels`` checks this).
"""

from libc.stdlib cimport free, malloc


def imat_mul(list a, list b, Py_ssize_t n, Py_ssize_t k, Py_ssize_t m):
    cdef list out = [0] * (n * m)
    cdef Py_ssize_t i, j, l, ik, im
    cdef object acc
    for i in range(n):
        ik = i * k
        im = i * m
        for j in range(m):
            acc = 0
            for l in range(k):
                acc = acc + a[ik + l] * b[l * m + j]
            out[im + j] = acc
    return out


def enum_norm_vectors(list gram, Py_ssize_t n, object target, Py_ssize_t box):
    cdef long long t = target
    cdef long long *g = <long long *> malloc(n * n * sizeof(long long))
    cdef long long *x = <long long *> malloc(n * sizeof(long long))
    if g == NULL or x == NULL:
        free(g)
        free(x)
        raise MemoryError()
    cdef Py_ssize_t i, j
    cdef long long s, acc, xi
    cdef list out = []
    try:
        for i in range(n * n):
            g[i] = gram[i]
        for i in range(n):
            x[i] = -box
        while True:
            s = 0
            for i in range(n):
                xi = x[i]
                if xi != 0:
                    acc = 0
                    for j in range(n):
                        acc += g[i * n + j] * x[j]
                    s += xi * acc
            if s == t:
                out.append(tuple([x[i] for i in range(n)]))
            i = n - 1
            while i >= 0 and x[i] == box:
                x[i] = -box
                i -= 1
            if i < 0:
                break
            x[i] += 1
        return out
    finally:
        free(g)
        free(x)
