# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled rational-matrix kernels.

Entries are arbitrary-precision Python ints over one shared positive
denominator, so the speedup over ``_pure`` comes from keeping the loop
bookkeeping in C while CPython's bignum core does the arithmetic.
"""

from math import gcd


def normalize(list nums, object den):
    cdef Py_ssize_t i, m = len(nums)
    cdef object g = den
    cdef object v
    for i in range(m):
        v = nums[i]
        if v:
            g = gcd(g, v)
            if g == 1:
                break
    if g > 1:
        for i in range(m):
            nums[i] = nums[i] // g
        den = den // g
    if den < 0:
        den = -den
        for i in range(m):
            nums[i] = -nums[i]
    return nums, den


def mat_mul(Py_ssize_t n, list anum, object aden, list bnum, object bden):
    cdef Py_ssize_t i, j, k, base, row
    cdef list out = [0] * (n * n)
    cdef object aik, b
    for i in range(n):
        base = i * n
        for k in range(n):
            aik = anum[base + k]
            if aik == 0:
                continue
            row = k * n
            for j in range(n):
                b = bnum[row + j]
                if b != 0:
                    out[base + j] = out[base + j] + aik * b
    return normalize(out, aden * bden)


def mat_lincomb(Py_ssize_t n, list anum, object aden, list bnum, object bden,
                object pn, object pd, object qn, object qd):
    cdef Py_ssize_t i, m = n * n
    cdef object ca = pn * bden * qd
    cdef object cb = qn * aden * pd
    cdef list out = [0] * m
    for i in range(m):
        out[i] = ca * anum[i] + cb * bnum[i]
    return normalize(out, aden * pd * bden * qd)
