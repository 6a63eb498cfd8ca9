"""Pure-Python implementations of the hot rational-matrix kernels.

Same calling conventions as the compiled module ``_core``: a rational
matrix travels as ``(nums, den)`` where ``nums`` is a flat row-major list
of Python ints and ``den`` a positive int shared by every entry.
"""

from math import gcd


def normalize(nums, den):
    """Divide out the common content and keep the denominator positive."""
    g = den
    for v in nums:
        if v:
            g = gcd(g, v)
            if g == 1:
                break
    if g > 1:
        nums = [v // g for v in nums]
        den //= g
    if den < 0:
        den = -den
        nums = [-v for v in nums]
    return nums, den


def mat_mul(n, anum, aden, bnum, bden):
    out = [0] * (n * n)
    for i in range(n):
        base = i * n
        for k in range(n):
            aik = anum[base + k]
            if aik == 0:
                continue
            row = k * n
            for j in range(n):
                b = bnum[row + j]
                if b:
                    out[base + j] += aik * b
    return normalize(out, aden * bden)


def mat_lincomb(n, anum, aden, bnum, bden, pn, pd, qn, qd):
    """p*A + q*B with rational scalars p = pn/pd, q = qn/qd."""
    ca = pn * bden * qd
    cb = qn * aden * pd
    out = [ca * a + cb * b for a, b in zip(anum, bnum)]
    return normalize(out, aden * pd * bden * qd)
