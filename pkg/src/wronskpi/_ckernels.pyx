# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled integer convolution kernels (same API as ``_pykernels``).

Small coefficients are convolved natively with 128-bit accumulators; large
ones fall back to big-integer Kronecker substitution.
"""
from libc.stdlib cimport malloc, free
from libc.stdint cimport int64_t, uint64_t

from wronskpi._pykernels import kronecker_mul, SCHOOLBOOK_LIMIT

cdef extern from *:
    ctypedef long long i128 "__int128"

cdef int _NATIVE_BITS = 62
cdef object _MASK64 = (1 << 64) - 1


cdef inline object _from_i128(i128 v):
    cdef int64_t lo
    if v >= -9223372036854775807 and v <= 9223372036854775807:
        lo = <int64_t>v
        return lo
    cdef bint neg = v < 0
    if neg:
        v = -v
    cdef uint64_t hi = <uint64_t>(v >> 64)
    cdef uint64_t low = <uint64_t>(v & <i128>0xFFFFFFFFFFFFFFFF)
    r = (<object>hi << 64) | <object>low
    return -r if neg else r


cdef list _native(list a, list b, Py_ssize_t m):
    cdef Py_ssize_t la = len(a), lb = len(b), i, j, lim
    cdef int64_t *ca = <int64_t *>malloc(la * sizeof(int64_t))
    cdef int64_t *cb = <int64_t *>malloc(lb * sizeof(int64_t))
    cdef i128 *acc = <i128 *>malloc(m * sizeof(i128))
    cdef int64_t ai
    if ca == NULL or cb == NULL or acc == NULL:
        free(ca); free(cb); free(acc)
        raise MemoryError()
    try:
        for i in range(la):
            ca[i] = a[i]
        for j in range(lb):
            cb[j] = b[j]
        for i in range(m):
            acc[i] = 0
        for i in range(min(la, m)):
            ai = ca[i]
            if ai == 0:
                continue
            lim = min(lb, m - i)
            for j in range(lim):
                acc[i + j] += <i128>ai * cb[j]
        return [_from_i128(acc[i]) for i in range(m)]
    finally:
        free(ca); free(cb); free(acc)


cdef list _objects(list a, list b, Py_ssize_t m):
    cdef Py_ssize_t la = len(a), lb = len(b), i, j, lim
    cdef list out = [0] * m
    cdef object ai, bj
    for i in range(min(la, m)):
        ai = a[i]
        if not ai:
            continue
        lim = min(lb, m - i)
        for j in range(lim):
            bj = b[j]
            if bj:
                out[i + j] = out[i + j] + ai * bj
    return out


cdef int _bits(list seq):
    cdef int m = 0, k
    for c in seq:
        k = (<object>c).bit_length()
        if k > m:
            m = k
    return m


def mul_trunc(list a, list b, Py_ssize_t n):
    """Coefficients ``0..n-1`` of the product of integer lists ``a`` and ``b``."""
    if not a or not b or n <= 0:
        return []
    cdef Py_ssize_t m = min(n, len(a) + len(b) - 1)
    a = a[:m]
    b = b[:m]
    cdef int ba = _bits(a), bb = _bits(b)
    cdef Py_ssize_t size = min(len(a), len(b))
    if ba <= _NATIVE_BITS and bb <= _NATIVE_BITS and \
            ba + bb + (<object>size).bit_length() <= 125:
        return _native(a, b, m)
    cdef Py_ssize_t nza = len(a) - a.count(0), nzb = len(b) - b.count(0)
    if nza > nzb:
        a, b, nza, nzb = b, a, nzb, nza
    if nza * min(len(b), m) <= SCHOOLBOOK_LIMIT or nza * 8 < len(a):
        return _objects(a, b, m)
    return kronecker_mul(a, b, n)
