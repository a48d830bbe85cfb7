"""Exact truncated q-series on the exponent lattice (1/24)Z>=0.

A :class:`QSeries` is stored as ``q^(val/24) * sum_i (num[i]/den) q^(step*i/24)``
with integer numerators over one common denominator, truncated below
``q^(order/24)``.  Exponents, valuations and orders are exposed in units of q
(as :class:`fractions.Fraction`); the ``lattice_*`` accessors give the raw
numerators over 24.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from numbers import Rational
from typing import Iterable, Iterator, Mapping

from wronskpi import kernels
from wronskpi.errors import (
    DivisionByZeroSeries,
    FractionalExponentNegation,
    IrrationalRootLeadingCoefficient,
    NegativeExponent,
    NonLatticeRoot,
)

LATTICE = 24

__all__ = [
    "LATTICE",
    "QSeries",
    "EtaQuotientSpec",
    "eta_quotient",
    "euler_coefficients",
    "lattice",
    "series_arith",
    "series_nth_root",
    "series_qderiv",
    "series_compose_power",
    "series_negate_q",
]


def lattice(x) -> int:
    """Convert a q-exponent (int, Fraction or ``"p/q"`` string) to lattice units."""
    f = Fraction(x) * LATTICE
    if f.denominator != 1:
        raise ValueError(f"exponent {x} is not on the 1/{LATTICE} lattice")
    return int(f)


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _iroot_exact(n: int, k: int) -> int | None:
    """Exact integer k-th root of n >= 0, or None."""
    if n < 0:
        return None
    if n < 2:
        return n
    try:
        from gmpy2 import iroot
        r, exact = iroot(n, k)
        return int(r) if exact else None
    except ImportError:  # pragma: no cover
        r = round(n ** (1.0 / k)) if n.bit_length() < 1000 else None
        if r is None:
            lo, hi = 0, 1 << (n.bit_length() // k + 1)
            while lo < hi:
                mid = (lo + hi + 1) // 2
                if mid ** k <= n:
                    lo = mid
                else:
                    hi = mid - 1
            r = lo
        for c in (r - 1, r, r + 1):
            if c >= 0 and c ** k == n:
                return c
        return None


def rational_root(c: Fraction, n: int) -> Fraction | None:
    """Real rational n-th root of ``c`` (negative allowed for odd n), or None."""
    c = Fraction(c)
    if c < 0:
        if n % 2 == 0:
            return None
        r = rational_root(-c, n)
        return None if r is None else -r
    p = _iroot_exact(c.numerator, n)
    q = _iroot_exact(c.denominator, n)
    if p is None or q is None:
        return None
    return Fraction(p, q)


class QSeries:
    """Immutable truncated power series in q with exponents in (1/24)Z>=0.

    Parameters
    ----------
    terms : mapping, optional
        ``{exponent: coefficient}`` with exponents in units of q (int,
        Fraction or ``"p/q"``) and rational coefficients.
    order : int, Fraction or str
        Truncation bound in units of q (exclusive): coefficients at exponents
        ``>= order`` are unknown.

    Examples
    --------
    >>> QSeries({0: 1, 1: 2, 4: 2}, order=5)
    QSeries('1 + 2q + 2q^4 + O(q^5)')
    """

    __slots__ = ("_val", "_step", "_num", "_den", "_order")

    def __init__(self, terms: Mapping | None = None, order=None):
        if order is None:
            raise TypeError("QSeries needs an explicit truncation order")
        lat = {lattice(e): Fraction(c) for e, c in (terms or {}).items()}
        self._assign(*_from_lattice_dict(lat, lattice(order)))

    # -- construction ---------------------------------------------------------

    def _assign(self, val, step, num, den, order):
        self._val = val
        self._step = step
        self._num = num
        self._den = den
        self._order = order

    @classmethod
    def _raw(cls, val, step, num, den, order) -> "QSeries":
        obj = cls.__new__(cls)
        obj._assign(*_normalize(val, step, num, den, order))
        return obj

    @classmethod
    def from_lattice(cls, coeffs: Mapping[int, object], order: int) -> "QSeries":
        """Build from ``{lattice_exponent: coefficient}`` and a lattice order."""
        lat = {int(e): Fraction(c) for e, c in coeffs.items()}
        return cls._raw(*_from_lattice_dict(lat, int(order)))

    @classmethod
    def from_list(cls, coeffs: Iterable, order=None, step: int = LATTICE, val: int = 0):
        """Dense coefficients at lattice exponents ``val + step*i``.

        ``order`` defaults to just past the last given coefficient (q units).
        """
        cs = [Fraction(c) for c in coeffs]
        den = 1
        for c in cs:
            den = den * c.denominator // gcd(den, c.denominator)
        num = [int(c * den) for c in cs]
        lat_order = val + step * len(cs) if order is None else lattice(order)
        return cls._raw(val, step, num, den, lat_order)

    @classmethod
    def constant(cls, c, order) -> "QSeries":
        return cls.from_lattice({0: c}, lattice(order))

    @classmethod
    def monomial(cls, exponent, coefficient=1, order=None) -> "QSeries":
        return cls.from_lattice({lattice(exponent): coefficient}, lattice(order))

    @classmethod
    def zero(cls, order) -> "QSeries":
        return cls.from_lattice({}, lattice(order))

    # -- inspection -----------------------------------------------------------

    @property
    def lattice_order(self) -> int:
        return self._order

    @property
    def order(self) -> Fraction:
        return Fraction(self._order, LATTICE)

    @property
    def lattice_valuation(self) -> int | None:
        return None if not self._num else self._val

    @property
    def valuation(self) -> Fraction | None:
        return None if not self._num else Fraction(self._val, LATTICE)

    @property
    def lattice_step(self) -> int:
        return self._step

    @property
    def leading_coefficient(self) -> Fraction:
        if not self._num:
            return Fraction(0)
        return Fraction(self._num[0], self._den)

    def is_zero(self) -> bool:
        """True iff every coefficient below the truncation order vanishes."""
        return not self._num

    def lattice_items(self) -> Iterator[tuple[int, Fraction]]:
        """Nonzero ``(lattice_exponent, coefficient)`` pairs in increasing order."""
        v, s, d = self._val, self._step, self._den
        for i, c in enumerate(self._num):
            if c:
                yield v + s * i, Fraction(c, d)

    def items(self) -> Iterator[tuple[Fraction, Fraction]]:
        for e, c in self.lattice_items():
            yield Fraction(e, LATTICE), c

    def to_dict(self) -> dict[Fraction, Fraction]:
        return dict(self.items())

    def numerators(self) -> tuple[int, int, list[int], int]:
        """``(val, step, numerators, denominator)`` of the internal dense form."""
        return self._val, self._step, list(self._num), self._den

    def lattice_coeff(self, e: int) -> Fraction:
        if e >= self._order:
            raise ValueError(f"coefficient of q^({e}/{LATTICE}) lies beyond the truncation order")
        if not self._num or e < self._val:
            return Fraction(0)
        off = e - self._val
        if self._step == 0:
            return Fraction(self._num[0], self._den) if off == 0 else Fraction(0)
        i, r = divmod(off, self._step)
        if r or i >= len(self._num):
            return Fraction(0)
        return Fraction(self._num[i], self._den)

    def __getitem__(self, exponent) -> Fraction:
        return self.lattice_coeff(lattice(exponent))

    def coefficients(self, upto=None) -> list[Fraction]:
        """Coefficients at integer exponents ``0, 1, ..., upto-1`` (default: order)."""
        n = int(self.order) if upto is None else int(upto)
        n = min(n, _ceil_div(self._order, LATTICE))
        return [self.lattice_coeff(LATTICE * k) for k in range(n)]

    def max_abs_coefficient(self) -> Fraction:
        if not self._num:
            return Fraction(0)
        return Fraction(max(abs(c) for c in self._num), self._den)

    def has_integer_exponents(self) -> bool:
        return not self._num or (self._val % LATTICE == 0 and self._step % LATTICE == 0)

    # -- comparison -----------------------------------------------------------

    def _key(self):
        return (self._val, self._step, tuple(self._num), self._den, self._order)

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def first_discrepancy(self, other: "QSeries") -> int | None:
        """Lattice exponent of the first differing coefficient below the common order."""
        d = self - other
        return d.lattice_valuation

    def agrees_with(self, other: "QSeries") -> bool:
        return (self - other).is_zero()

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, QSeries):
            return other
        if isinstance(other, (int, Rational)):
            return QSeries.from_lattice({0: Fraction(other)}, self._order)
        return None

    def __neg__(self):
        return QSeries._raw(self._val, self._step, [-c for c in self._num], self._den, self._order)

    def __pos__(self):
        return self

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _add(self, o, 1)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _add(self, o, -1)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _add(o, self, -1)

    def __mul__(self, other):
        if isinstance(other, QSeries):
            return _mul(self, other)
        if isinstance(other, (int, Rational)):
            f = Fraction(other)
            return QSeries._raw(self._val, self._step, [c * f.numerator for c in self._num],
                                self._den * f.denominator, self._order)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, QSeries):
            return _div(self, other)
        if isinstance(other, (int, Rational)):
            f = Fraction(other)
            if f == 0:
                raise DivisionByZeroSeries("division of a series by the scalar 0")
            return self * (1 / f)
        return NotImplemented

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _div(o, self)

    def __pow__(self, k):
        k = Fraction(k)
        if k.denominator != 1:
            return _rational_power(self, k)
        k = int(k)
        if k < 0:
            return _div(QSeries.from_lattice({0: 1}, self._order), self) ** (-k)
        result = None
        base = self
        while k:
            if k & 1:
                result = base if result is None else _mul(result, base)
            k >>= 1
            if k:
                base = _mul(base, base)
        if result is None:
            return QSeries.from_lattice({0: 1}, self._order)
        return result

    # -- operators specific to q-series ----------------------------------------

    def truncate(self, order) -> "QSeries":
        return self.truncate_lattice(lattice(order))

    def truncate_lattice(self, order: int) -> "QSeries":
        return QSeries._raw(self._val, self._step, self._num, self._den, min(order, self._order))

    def qderiv(self) -> "QSeries":
        """Apply q d/dq: the coefficient at exponent e is multiplied by e."""
        v, s = self._val, self._step
        num = [c * (v + s * i) for i, c in enumerate(self._num)]
        return QSeries._raw(v, s, num, self._den * LATTICE, self._order)

    def compose(self, m: int, cap=None) -> "QSeries":
        """Substitute q -> q^m; ``cap`` (q units) bounds the resulting order."""
        m = int(m)
        if m < 1:
            raise ValueError("compose needs a positive integer power")
        order = self._order * m
        if cap is not None:
            order = min(order, lattice(cap))
        return QSeries._raw(self._val * m, self._step * m, self._num, self._den, order)

    def compose_lattice(self, m: int, cap: int | None = None) -> "QSeries":
        order = self._order * m if cap is None else min(self._order * m, cap)
        return QSeries._raw(self._val * m, self._step * m, self._num, self._den, order)

    def contract(self, m: int) -> "QSeries":
        """Inverse of :meth:`compose`: rewrite a series in q^m as a series in q."""
        m = int(m)
        if self._num and (self._val % m or self._step % m):
            raise ValueError(f"series is not a function of q^{m}")
        v = self._val // m if self._num else 0
        return QSeries._raw(v, self._step // m, self._num, self._den, _ceil_div(self._order, m))

    def negate_q(self) -> "QSeries":
        """Substitute q -> -q (integer exponents only)."""
        if not self.has_integer_exponents():
            raise FractionalExponentNegation(
                "q -> -q is only defined here for series with integer exponents")
        v, s = self._val // LATTICE, self._step // LATTICE
        num = [(-c if (v + s * i) & 1 else c) for i, c in enumerate(self._num)]
        return QSeries._raw(self._val, self._step, num, self._den, self._order)

    def nth_root(self, n: int) -> "QSeries":
        return _nth_root(self, int(n))

    def shift_lattice(self, delta: int) -> "QSeries":
        """Multiply by q^(delta/24); ``delta`` may be negative if the result stays >= 0."""
        if self._num and self._val + delta < 0:
            raise NegativeExponent("shift would produce a negative exponent")
        if self._order + delta < 0:
            raise NegativeExponent("shift would produce a negative order")
        v = self._val + delta if self._num else 0
        return QSeries._raw(v, self._step, self._num, self._den, self._order + delta)

    # -- formatting -----------------------------------------------------------

    def format(self, var: str = "q", show_order: bool = True, max_terms: int | None = None) -> str:
        parts = []
        for k, (e, c) in enumerate(self.items()):
            if max_terms is not None and k >= max_terms:
                parts.append(("+", "..."))
                break
            parts.append(_format_term(e, c, var))
        if show_order:
            parts.append(("+", f"O({_format_power(self.order, var)})"))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"QSeries('{self.format(max_terms=8)}')"


# -- internal helpers ----------------------------------------------------------

def _format_power(e: Fraction, var: str) -> str:
    if e == 0:
        return "1"
    if e == 1:
        return var
    if e.denominator == 1:
        return f"{var}^{e.numerator}"
    return f"{var}^({e})"


def _format_term(e: Fraction, c: Fraction, var: str) -> tuple[str, str]:
    sign = "-" if c < 0 else "+"
    a = abs(c)
    p = _format_power(e, var)
    if e == 0:
        body = str(a)
    elif a == 1:
        body = p
    elif a.denominator == 1:
        body = f"{a}{p}"
    else:
        body = f"({a}){p}"
    return sign, body


def _from_lattice_dict(lat: dict[int, Fraction], order: int):
    lat = {e: c for e, c in lat.items() if c and e < order}
    if any(e < 0 for e in lat):
        raise NegativeExponent("negative exponents are not representable")
    if not lat:
        return _normalize(0, 0, [], 1, order)
    es = sorted(lat)
    v = es[0]
    step = 0
    for e in es[1:]:
        step = gcd(step, e - v)
    den = 1
    for c in lat.values():
        den = den * c.denominator // gcd(den, c.denominator)
    if step == 0:
        return _normalize(v, 0, [int(lat[v] * den)], den, order)
    num = [0] * ((es[-1] - v) // step + 1)
    for e in es:
        num[(e - v) // step] = int(lat[e] * den)
    return _normalize(v, step, num, den, order)


def _normalize(val, step, num, den, order):
    """Canonical form: leading coefficient nonzero, minimal step, reduced fraction."""
    if order < 0:
        raise NegativeExponent("negative truncation order")
    if den < 0:
        den = -den
        num = [-c for c in num]
    if step == 0:
        num = num[:1]
    elif num:
        limit = _ceil_div(order - val, step) if order > val else 0
        if len(num) > limit:
            num = num[:max(limit, 0)]
    if num and val >= order:
        num = []
    first = next((i for i, c in enumerate(num) if c), None)
    if first is None:
        return 0, 0, [], 1, order
    if first:
        val += step * first
        num = num[first:]
    last = len(num) - 1
    while not num[last]:
        last -= 1
    num = num[:last + 1]
    if len(num) == 1:
        step = 0
    else:
        g = 0
        for i in range(1, len(num)):
            if num[i]:
                g = gcd(g, i)
                if g == 1:
                    break
        if g > 1:
            num = num[::g]
            step *= g
    if val < 0:
        raise NegativeExponent("negative exponents are not representable")
    g = gcd(den, *num)
    if g > 1:
        den //= g
        num = [c // g for c in num]
    return val, step, num, den, order


def _grid_positions(val, step, order):
    if order <= val:
        return 0
    if step == 0:
        return 1
    return _ceil_div(order - val, step)


def _spread(s: QSeries, val: int, step: int, n: int, scale: int = 1) -> list[int]:
    out = [0] * n
    if not s._num or n == 0:
        return out
    if step == 0:
        out[0] = s._num[0] * scale
        return out
    off = (s._val - val) // step
    f = s._step // step
    if f == 0:
        if off < n:
            out[off] = s._num[0] * scale
        return out
    if f == 1 and off == 0 and scale == 1:
        m = min(len(s._num), n)
        out[:m] = s._num[:m]
        return out
    for i, c in enumerate(s._num):
        j = off + f * i
        if j >= n:
            break
        out[j] = c * scale
    return out


def _add(a: QSeries, b: QSeries, sign: int) -> QSeries:
    order = min(a._order, b._order)
    if not b._num:
        return a.truncate_lattice(order)
    if not a._num:
        return (b if sign > 0 else -b).truncate_lattice(order)
    val = min(a._val, b._val)
    step = gcd(gcd(a._step, b._step), abs(a._val - b._val))
    n = _grid_positions(val, step, order)
    den = a._den * b._den // gcd(a._den, b._den)
    na = _spread(a, val, step, n, den // a._den)
    nb = _spread(b, val, step, n, sign * (den // b._den))
    return QSeries._raw(val, step, [x + y for x, y in zip(na, nb)], den, order)


def _mul(a: QSeries, b: QSeries) -> QSeries:
    va = a._val if a._num else a._order
    vb = b._val if b._num else b._order
    order = min(a._order + vb, b._order + va)
    if not a._num or not b._num:
        return QSeries._raw(0, 0, [], 1, order)
    val = a._val + b._val
    step = gcd(a._step, b._step)
    n = _grid_positions(val, step, order)
    if n == 0:
        return QSeries._raw(0, 0, [], 1, order)
    if step == 0:
        return QSeries._raw(val, 0, [a._num[0] * b._num[0]], a._den * b._den, order)
    la = _grid_positions(a._val, step, order - b._val)
    lb = _grid_positions(b._val, step, order - a._val)
    xa = _spread(a, a._val, step, min(la, n))
    xb = _spread(b, b._val, step, min(lb, n))
    prod = kernels.mul_trunc(xa, xb, n)
    return QSeries._raw(val, step, prod, a._den * b._den, order)


def _reduce(num: list[int], den: int):
    g = gcd(den, *num)
    if g > 1:
        return [c // g for c in num], den // g
    return num, den


def _inverse_list(u: list[int], n: int) -> tuple[list[int], int]:
    """Rational inverse of an integer series with u[0] != 0, to n terms: G/d."""
    if n <= 0:
        return [], 1
    precs = []
    m = n
    while m > 1:
        precs.append(m)
        m = (m + 1) // 2
    G, d = [1], u[0]
    for m in reversed(precs):
        e = kernels.mul_trunc(u[:m], G, m)
        e += [0] * (m - len(e))
        t = [-x for x in e]
        t[0] += 2 * d
        G = kernels.mul_trunc(G, t, m)
        d = d * d
        G, d = _reduce(G, d)
    if d < 0:
        G, d = [-x for x in G], -d
    return G, d


def _unit_inverse(b: QSeries, rel_order: int) -> QSeries:
    """1 / (b / q^val(b)), as a series with valuation 0 and order ``rel_order``."""
    step = b._step
    n = _grid_positions(0, step, rel_order)
    G, d = _inverse_list(b._num[:n], n)
    # (num/den)^-1 = den * G / d
    return QSeries._raw(0, step, [g * b._den for g in G], d, rel_order)


def _div(a: QSeries, b: QSeries) -> QSeries:
    if not b._num:
        raise DivisionByZeroSeries("divisor has no nonzero coefficient below its order")
    vb = b._val
    rel_b = b._order - vb
    inv = _unit_inverse(b, rel_b)
    prod = _mul(a, inv)
    if prod._num and prod._val < vb:
        raise NegativeExponent("quotient would need a negative power of q")
    if prod._order < vb:
        raise NegativeExponent("quotient order would be negative")
    return prod.shift_lattice(-vb)


def _unit_part(a: QSeries) -> tuple[Fraction, QSeries]:
    """Split ``a = c * q^val * u`` with u having constant term 1."""
    c = a.leading_coefficient
    u = QSeries._raw(0, a._step, a._num, a._den, a._order - a._val) * (1 / c)
    return c, u


def _nth_root(a: QSeries, n: int) -> QSeries:
    if n < 1:
        raise ValueError("root degree must be positive")
    if n == 1:
        return a
    if not a._num:
        raise DivisionByZeroSeries("root of a series with no known nonzero coefficient")
    if a._val % n:
        raise NonLatticeRoot(
            f"leading exponent {Fraction(a._val, LATTICE)} is not divisible by {n} on the lattice")
    c, u = _unit_part(a)
    rho = rational_root(c, n)
    if rho is None:
        raise IrrationalRootLeadingCoefficient(f"{c} has no rational {n}-th root")
    rel = u._order
    # Newton iteration for y = u^(-1/n):  y <- y + y (1 - u y^n) / n
    y = QSeries.from_lattice({0: 1}, min(rel, max(u._step, 1)))
    target = rel
    precs = []
    m = target
    while m > max(u._step, 1):
        precs.append(m)
        m = (m + 1) // 2
    for m in reversed(precs):
        um = u.truncate_lattice(m)
        y = y.truncate_lattice(m)
        y = QSeries._raw(y._val, y._step, y._num, y._den, m)
        r = 1 - um * y ** n
        y = y + y * r * Fraction(1, n)
    y = QSeries._raw(y._val, y._step, y._num, y._den, min(y._order, rel))
    root_u = u * y ** (n - 1)
    root_u = root_u.truncate_lattice(rel)
    return (root_u * rho).shift_lattice(a._val // n)


def _rational_power(a: QSeries, k: Fraction) -> QSeries:
    p, r = k.numerator, k.denominator
    try:
        return _nth_root(a, r) ** p
    except (IrrationalRootLeadingCoefficient, NonLatticeRoot):
        return _nth_root(a ** p, r)


# -- functional operation names ------------------------------------------------

def series_arith(op: str, a: QSeries, b: QSeries) -> QSeries:
    """Dispatch ``op`` in ``{"add", "sub", "mul", "div"}``."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown series operation {op!r}")


def series_nth_root(a: QSeries, n: int) -> QSeries:
    return a.nth_root(n)


def series_qderiv(a: QSeries) -> QSeries:
    return a.qderiv()


def series_compose_power(a: QSeries, m: int, cap=None) -> QSeries:
    return a.compose(m, cap)


def series_negate_q(a: QSeries) -> QSeries:
    return a.negate_q()


# -- eta quotients -------------------------------------------------------------

_EULER: list[int] = [1]


def euler_coefficients(n: int) -> list[int]:
    """First ``n`` coefficients of prod_{k>=1} (1 - x^k), by direct expansion."""
    global _EULER
    if n <= len(_EULER):
        return _EULER[:n]
    c = [1] + [0] * (n - 1)
    for k in range(1, n):
        for i in range(n - 1, k - 1, -1):
            ci = c[i - k]
            if ci:
                c[i] -= ci
    _EULER = c
    return c[:]


@dataclass(frozen=True)
class EtaQuotientSpec:
    """``prefactor * q^(shift/24) * prod eta(t*tau)^e`` with t in (1/2)Z>0.

    ``factors`` is a sequence of ``(tau_multiple, exponent)`` pairs.
    """

    factors: tuple[tuple[Fraction, int], ...]
    prefactor: Fraction = Fraction(1)
    shift: int = 0

    def __post_init__(self):
        fs = []
        for t, e in self.factors:
            t = Fraction(t)
            if t <= 0 or (2 * t).denominator != 1:
                raise ValueError(f"tau multiple {t} is not of the form k or k/2")
            fs.append((t, int(e)))
        object.__setattr__(self, "factors", tuple(fs))
        object.__setattr__(self, "prefactor", Fraction(self.prefactor))
        if self.shift < 0:
            raise ValueError("shift must be non-negative")

    @property
    def lattice_valuation(self) -> int:
        # eta(t tau) = q^(t/12) prod(1 - q^(2tk)) and t/12 = 2t/24
        return self.shift + sum(int(2 * t) * e for t, e in self.factors)


_EULER_POW_CACHE: dict[tuple[int, int, int], QSeries] = {}


def _euler_power(step: int, e: int, rel: int) -> QSeries:
    """(prod (1 - x^k))^e with x = q^(step/24), truncated at lattice ``rel``."""
    key = (step, e, rel)
    hit = _EULER_POW_CACHE.get(key)
    if hit is not None:
        return hit
    n = _grid_positions(0, step, rel)
    base = QSeries._raw(0, step, euler_coefficients(n), 1, rel)
    out = base ** e
    if len(_EULER_POW_CACHE) > 512:
        _EULER_POW_CACHE.clear()
    _EULER_POW_CACHE[key] = out
    return out


def eta_quotient(spec: EtaQuotientSpec, order) -> QSeries:
    """Expand an eta quotient with eta(tau) = q^(1/12) prod (1 - q^(2k)), q = e^(pi i tau)."""
    lat_order = lattice(order)
    if lat_order <= 0:
        raise ValueError("order must be positive")
    v = spec.lattice_valuation
    if v < 0:
        raise NegativeExponent(f"eta quotient has negative valuation {Fraction(v, LATTICE)}")
    rel = lat_order - v
    if rel <= 0:
        return QSeries.zero(Fraction(lat_order, LATTICE))
    acc = QSeries.from_lattice({0: 1}, rel)
    for t, e in spec.factors:
        if e == 0:
            continue
        acc = acc * _euler_power(int(48 * t), e, rel)
    return (acc * spec.prefactor).shift_lattice(v)
