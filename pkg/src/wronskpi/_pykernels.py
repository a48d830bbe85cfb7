"""Pure-Python integer convolution kernels.

Every function here has a drop-in twin in the compiled ``_ckernels``
extension; :mod:`wronskpi.kernels` picks one at import time.
"""
from __future__ import annotations

try:  # GMP multiplication beats CPython's Karatsuba for large operands
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover - gmpy2 is optional
    _mpz = None

#: Below this many multiply-adds, schoolbook convolution wins over packing.
SCHOOLBOOK_LIMIT = 2500


def _max_bits(seq):
    m = 0
    for c in seq:
        b = c.bit_length()
        if b > m:
            m = b
    return m


def _pack(coeffs, width):
    """Kronecker-pack signed ``coeffs`` into one int, ``width`` bytes per slot."""
    pos = b"".join((c if c > 0 else 0).to_bytes(width, "little") for c in coeffs)
    neg = b"".join((-c if c < 0 else 0).to_bytes(width, "little") for c in coeffs)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def kronecker_mul(a, b, n):
    """First ``n`` coefficients of ``a*b`` via a single big-integer product."""
    la, lb = len(a), len(b)
    m = min(n, la + lb - 1)
    if m <= 0:
        return []
    a = a[:m]
    b = b[:m]
    bits = _max_bits(a) + _max_bits(b) + min(len(a), len(b)).bit_length() + 2
    width = (bits + 7) // 8
    pa = _pack(a, width)
    pb = _pack(b, width)
    if _mpz is not None and width * m > 4000:
        prod = int(_mpz(pa) * _mpz(pb))
    else:
        prod = pa * pb
    half = 1 << (8 * width - 1)
    # A bias of 2^(k-1) per slot makes every slot non-negative, so no borrows.
    bias = int.from_bytes((b"\x00" * (width - 1) + b"\x80") * m, "little")
    nbytes = width * m
    data = ((prod + bias) & ((1 << (8 * nbytes)) - 1)).to_bytes(nbytes, "little")
    frombytes = int.from_bytes
    return [frombytes(data[i:i + width], "little") - half
            for i in range(0, nbytes, width)]


def _schoolbook(a, b, n):
    la, lb = len(a), len(b)
    m = min(n, la + lb - 1)
    out = [0] * m
    for i in range(min(la, m)):
        ai = a[i]
        if not ai:
            continue
        lim = min(lb, m - i)
        for j in range(lim):
            bj = b[j]
            if bj:
                out[i + j] += ai * bj
    return out


def mul_trunc(a, b, n):
    """Coefficients ``0..n-1`` of the product of integer lists ``a`` and ``b``.

    The result has length ``min(n, len(a) + len(b) - 1)``.
    """
    if not a or not b or n <= 0:
        return []
    nza = len(a) - a.count(0)
    nzb = len(b) - b.count(0)
    if nza > nzb:
        a, b, nza, nzb = b, a, nzb, nza
    # a is now the sparser operand
    m = min(n, len(a) + len(b) - 1)
    if nza * min(len(b), m) <= SCHOOLBOOK_LIMIT or nza * 8 < len(a):
        return _schoolbook(a, b, n)
    return kronecker_mul(a, b, n)
