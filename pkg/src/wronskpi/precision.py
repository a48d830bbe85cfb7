"""Arbitrary-precision evaluation of nomes, theta/eta values, series and constants.

Every public function takes an explicit precision in bits and builds its own
mpmath context, so there is no global precision state.  Work is done with
``GUARD`` extra bits and repeated with ``GUARD`` more; the returned
:class:`BigReal` records how many bits the two runs agree on.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Callable

from mpmath.ctx_mp import MPContext

from wronskpi.errors import (
    InsufficientOrder,
    NegativeEvenRoot,
    NomeOutOfRange,
    SchemaError,
)
from wronskpi.expr import (
    CAdd,
    CDiv,
    CMul,
    CNeg,
    CPow,
    CRational,
    CRoot,
    CSub,
    const_from_json,
    parse_const,
)
from wronskpi.qseries import LATTICE, QSeries

__all__ = [
    "GUARD",
    "BigReal",
    "Family",
    "EvalPoint",
    "ConstEntry",
    "make_context",
    "reference_pi",
    "nome",
    "theta_value",
    "eta_value",
    "euler_value",
    "eval_series_at",
    "eval_const_expr",
    "singular_modulus",
    "wronskian_value",
    "xi_value",
    "load_constants",
    "agreeing_digits",
]

GUARD = 64
LOG2_10 = math.log2(10)


def make_context(bits: int) -> MPContext:
    ctx = MPContext()
    ctx.prec = int(bits)
    return ctx


@dataclass(frozen=True)
class BigReal:
    """A binary floating-point value together with its trusted precision."""

    value: object
    precision_bits: int

    @property
    def digits(self) -> int:
        """Trusted significant decimal digits."""
        return max(0, int(self.precision_bits / LOG2_10))

    def decimal(self, digits: int | None = None) -> str:
        ctx = make_context(self.precision_bits + 16)
        return ctx.nstr(ctx.mpf(self.value), digits or max(self.digits, 1), strip_zeros=False)

    def __float__(self) -> float:
        return float(self.value)

    def __str__(self) -> str:
        return self.decimal()

    def __repr__(self) -> str:
        return f"BigReal({self.decimal(20)}, bits={self.precision_bits})"

    def __neg__(self) -> "BigReal":
        return BigReal(-self.value, self.precision_bits)


def _agree_bits(a, b, ctx) -> int:
    diff = abs(a - b)
    if diff == 0:
        return 10 ** 9
    scale = max(abs(b), ctx.mpf(2) ** -ctx.prec)
    return max(0, int(-ctx.log(diff / scale, 2)))


def _stable(fn: Callable[[MPContext], object], prec: int) -> BigReal:
    """Evaluate ``fn`` at prec+GUARD and prec+2*GUARD; keep the agreeing bits."""
    if prec < 16:
        raise ValueError("precision must be at least 16 bits")
    lo = make_context(prec + GUARD)
    hi = make_context(prec + 2 * GUARD)
    a, b = fn(lo), fn(hi)
    bits = min(prec, _agree_bits(hi.mpf(a), b, hi))
    return BigReal(b, bits)


def agreeing_digits(x, y) -> int:
    """Number of significant decimal digits on which ``x`` and ``y`` agree."""
    xv = x.value if isinstance(x, BigReal) else x
    yv = y.value if isinstance(y, BigReal) else y
    bits = 4 * 4096
    for v in (x, y):
        if isinstance(v, BigReal):
            bits = min(bits, v.precision_bits + 2 * GUARD)
    ctx = make_context(bits)
    a, b = ctx.mpf(xv), ctx.mpf(yv)
    diff = abs(a - b)
    if diff == 0:
        return int(bits / LOG2_10)
    scale = abs(b) if b != 0 else ctx.mpf(1)
    return max(0, int(-ctx.log10(diff / scale)))


# -- pi --------------------------------------------------------------------------------------

def _agm_pi(ctx: MPContext):
    """Gauss-Legendre iteration; quadratic convergence."""
    one = ctx.mpf(1)
    a, b, t, p = one, one / ctx.sqrt(2), one / 4, one
    eps = ctx.mpf(2) ** (-ctx.prec)
    while abs(a - b) > eps:
        an = (a + b) / 2
        b = ctx.sqrt(a * b)
        t -= p * (a - an) ** 2
        a = an
        p *= 2
    return (a + b) ** 2 / (4 * t)


@lru_cache(maxsize=64)
def _pi_at(bits: int):
    return _agm_pi(make_context(bits))


def _pi(ctx: MPContext):
    return ctx.mpf(_pi_at(ctx.prec))


def reference_pi(prec: int) -> BigReal:
    """pi from the arithmetic-geometric mean, independent of mpmath's own constant."""
    if prec < 64:
        raise ValueError("precision must be at least 64 bits")
    return _stable(_pi, prec)


# -- nomes ------------------------------------------------------------------------------------

class Family(str, Enum):
    CLASSICAL = "classical"
    CUBIC = "cubic"
    CUBIC_ALTERNATING = "cubic_alternating"
    QUARTIC = "quartic"


@dataclass(frozen=True)
class EvalPoint:
    family: Family
    N: Fraction
    inverted: bool = False

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        object.__setattr__(self, "N", Fraction(self.N))
        if self.N <= 0:
            raise ValueError("N must be positive")


def _nome(point: EvalPoint, ctx: MPContext):
    pi = _pi(ctx)
    n = ctx.mpf(point.N.numerator) / point.N.denominator
    fam, inv = point.family, point.inverted
    if fam is Family.CLASSICAL:
        x = -pi / ctx.sqrt(n) if inv else -pi * ctx.sqrt(n)
        return ctx.exp(x)
    if fam is Family.CUBIC:
        x = -2 * pi / ctx.sqrt(3 * n) if inv else -2 * pi * ctx.sqrt(n / 3)
        return ctx.exp(x)
    if fam is Family.CUBIC_ALTERNATING:
        if inv:
            return ctx.exp(-pi / ctx.sqrt(3 * n))
        return -ctx.exp(-pi * ctx.sqrt(n / 3))
    if fam is Family.QUARTIC:
        x = -2 * pi / ctx.sqrt(2 * n) if inv else -pi * ctx.sqrt(2 * n)
        return ctx.exp(x)
    raise ValueError(point.family)


def nome(point: EvalPoint, prec: int) -> BigReal:
    """The nome of an evaluation point (see :class:`Family` for the conventions)."""
    if prec < 64:
        raise ValueError("precision must be at least 64 bits")
    return _stable(lambda ctx: _nome(point, ctx), prec)


def _as_q(q0, ctx: MPContext):
    if isinstance(q0, EvalPoint):
        return _nome(q0, ctx)
    if isinstance(q0, BigReal):
        return ctx.mpf(q0.value)
    if isinstance(q0, Fraction):
        return ctx.mpf(q0.numerator) / q0.denominator
    if isinstance(q0, str):
        return ctx.mpf(Fraction(q0).numerator) / Fraction(q0).denominator
    return ctx.mpf(q0)


def _check_nome(q, limit=1.0):
    if not abs(q) < limit:
        raise NomeOutOfRange(f"|q| = {float(abs(q)):.6g} is not below {limit}")


# -- theta / eta sums ---------------------------------------------------------------------------

def _theta(kind: int, q, ctx: MPContext):
    _check_nome(q)
    eps = ctx.mpf(2) ** (-ctx.prec)
    if q == 0:
        return ctx.mpf(0) if kind == 2 else ctx.mpf(1)
    if kind == 2:
        if q < 0:
            raise NomeOutOfRange("theta2 has a fractional exponent; negative nome rejected")
        # 2 q^(1/4) sum_{k>=0} q^(k^2+k)
        s, k = ctx.mpf(0), 0
        while True:
            t = q ** (k * k + k)
            s += t
            if abs(t) < eps:
                break
            k += 1
        return 2 * ctx.root(q, 4) * s
    if kind not in (3, 4):
        raise ValueError("theta kind must be 2, 3 or 4")
    sign = -1 if kind == 4 else 1
    s, k = ctx.mpf(1), 1
    while True:
        t = 2 * (sign ** k) * q ** (k * k)
        s += t
        if abs(t) < eps:
            break
        k += 1
    return s


def theta_value(kind: int, q0, prec: int) -> BigReal:
    """theta_kind at a real nome by sparse summation."""
    return _stable(lambda ctx: _theta(int(kind), _as_q(q0, ctx), ctx), prec)


def _euler(x, ctx: MPContext):
    """prod_{k>=1} (1 - x^k), truncated once |x^k| is below the working epsilon."""
    _check_nome(x)
    eps = ctx.mpf(2) ** (-ctx.prec - 8)
    p, xk = ctx.mpf(1), ctx.mpf(x)
    while abs(xk) > eps:
        p *= 1 - xk
        xk *= x
    return p


def euler_value(x, prec: int) -> BigReal:
    return _stable(lambda ctx: _euler(_as_q(x, ctx), ctx), prec)


def _eta(t: Fraction, q, ctx: MPContext):
    """eta(t tau) = q^(t/12) prod (1 - q^(2tk)) with q = e^(pi i tau)."""
    t = Fraction(t)
    if q < 0:
        raise NomeOutOfRange("eta has fractional exponents; negative nome rejected")
    base = q ** (2 * (ctx.mpf(t.numerator) / t.denominator))
    return ctx.power(q, ctx.mpf(t.numerator) / (12 * t.denominator)) * _euler(base, ctx)


def eta_value(tau_multiple, q0, prec: int) -> BigReal:
    return _stable(lambda ctx: _eta(Fraction(tau_multiple), _as_q(q0, ctx), ctx), prec)


# -- series at a point ---------------------------------------------------------------------------

def _tail_bound(s: QSeries, r, ctx: MPContext):
    """Bound on the omitted tail sum_{e >= order} |c_e| |q|^e.

    The coefficient envelope C * rho^n is extrapolated from the known
    coefficients (root test on the upper half plus a safety factor).
    """
    items = [(Fraction(e, LATTICE), c) for e, c in s.lattice_items() if c]
    order = s.order
    if not items:
        return ctx.mpf(0)
    half = [(e, c) for e, c in items if e >= order / 2 and e > 0]
    if not half:
        half = [(e, c) for e, c in items if e > 0] or items
    logs = [(float(e), _log_abs(c)) for e, c in half if e > 0]
    if not logs:
        return ctx.mpf(0)
    # growth rate: largest slope of log|c| per unit exponent seen in the upper half
    grow = max(lc / e for e, lc in logs)
    grow = max(grow, 0.0) * 1.25 + 0.05
    logC = max(lc - grow * e for e, lc in ((float(e), _log_abs(c)) for e, c in items))
    logC = max(logC, 0.0) + 2.0
    lr = float(ctx.log(r)) if r > 0 else -1e9
    rate = grow + lr
    if rate >= -1e-9:
        return ctx.inf
    # sum over lattice exponents e >= order of C exp(rate e); spacing is the series step
    step = max(1, s.lattice_step or 1) / LATTICE
    log_first = logC + rate * float(order)
    denom = 1 - math.exp(rate * step)
    return ctx.exp(log_first) / denom


def _log_abs(c: Fraction) -> float:
    n, d = abs(c.numerator), c.denominator
    if n == 0:
        return -math.inf
    return (n.bit_length() - d.bit_length()) * math.log(2) + math.log(
        (n / 2 ** (n.bit_length() - 1)) / (d / 2 ** (d.bit_length() - 1)))


def _eval_series(s: QSeries, q, ctx: MPContext, polynomial: bool = False):
    _check_nome(q, 0.9 + 1e-12)
    if q < 0 and not s.has_integer_exponents():
        raise NomeOutOfRange("series with fractional exponents cannot be evaluated at q < 0")
    if not polynomial:
        tb = _tail_bound(s, abs(q), ctx)
        target = ctx.mpf(2) ** (-(ctx.prec - GUARD))
        if not tb < target:
            raise InsufficientOrder(
                f"order {s.order} is too low for |q| = {float(abs(q)):.4g} at {ctx.prec - GUARD} bits")
    items = list(s.lattice_items())
    if not items:
        return ctx.mpf(0)
    if q == 0:
        return ctx.mpf(s.lattice_coeff(0)) if items[0][0] == 0 else ctx.mpf(0)
    step = s.lattice_step or LATTICE
    v = s.lattice_valuation
    # Horner in x = q^(step/24), after factoring q^(v/24)
    if q > 0:
        x = ctx.power(q, ctx.mpf(step) / LATTICE)
        lead = ctx.power(q, ctx.mpf(v) / LATTICE)
    else:
        x = q ** (step // LATTICE)
        lead = q ** (v // LATTICE)
    coeffs = {}
    for e, c in items:
        coeffs[(e - v) // step] = c
    acc = ctx.mpf(0)
    for k in range(max(coeffs), -1, -1):
        c = coeffs.get(k)
        acc = acc * x + (ctx.mpf(c.numerator) / c.denominator if c else 0)
    return acc * lead


def eval_series_at(s: QSeries, q0, prec: int, polynomial: bool = False) -> BigReal:
    """Sum an exact series at a real nome with |q0| <= 0.9.

    Raises :class:`InsufficientOrder` when the estimated tail exceeds 2^-prec.
    With ``polynomial=True`` the series is treated as an exact polynomial.
    """
    return _stable(lambda ctx: _eval_series(s, _as_q(q0, ctx), ctx, polynomial), prec)


# -- constants --------------------------------------------------------------------------------------

def _eval_const(node, ctx: MPContext):
    if isinstance(node, CRational):
        return ctx.mpf(node.value.numerator) / node.value.denominator
    if isinstance(node, CAdd):
        return ctx.fsum(_eval_const(a, ctx) for a in node.args)
    if isinstance(node, CSub):
        return _eval_const(node.left, ctx) - _eval_const(node.right, ctx)
    if isinstance(node, CMul):
        out = ctx.mpf(1)
        for a in node.args:
            out *= _eval_const(a, ctx)
        return out
    if isinstance(node, CDiv):
        den = _eval_const(node.right, ctx)
        if den == 0:
            raise ZeroDivisionError("constant divides by zero")
        return _eval_const(node.left, ctx) / den
    if isinstance(node, CNeg):
        return -_eval_const(node.arg, ctx)
    if isinstance(node, CPow):
        return _eval_const(node.arg, ctx) ** node.n
    if isinstance(node, CRoot):
        v = _eval_const(node.arg, ctx)
        if v < 0:
            if node.n % 2 == 0:
                raise NegativeEvenRoot(f"even root of a negative value ({float(v):.6g})")
            return -ctx.root(-v, node.n)
        return ctx.root(v, node.n)
    raise TypeError(f"not a constant node: {node!r}")


def eval_const_expr(e, prec: int) -> BigReal:
    """Evaluate a constant tree (or infix text) with positive real roots."""
    node = parse_const(e) if isinstance(e, str) else e
    return _stable(lambda ctx: _eval_const(node, ctx), prec)


@dataclass(frozen=True)
class ConstEntry:
    id: str
    text: str
    expr: object
    provenance: str
    misprint_suspect: bool = False
    notes: str = ""

    def value(self, prec: int) -> BigReal:
        return eval_const_expr(self.expr, prec)


@lru_cache(maxsize=1)
def load_constants() -> dict[str, ConstEntry]:
    """The shipped closed-form constants keyed by id."""
    with (resources.files("wronskpi") / "data" / "constants.json").open(encoding="utf-8") as fh:
        raw = json.load(fh)
    out = {}
    for item in raw:
        try:
            entry = ConstEntry(item["id"], item["text"], const_from_json(item["expr"]),
                               item["provenance"], bool(item.get("misprint_suspect", False)),
                               item.get("notes", ""))
        except KeyError as exc:
            raise SchemaError(f"constant entry missing {exc}") from None
        # real-evaluability check at load
        _eval_const(entry.expr, make_context(64))
        out[entry.id] = entry
    return out


# -- singular moduli ----------------------------------------------------------------------------------

def _alpha_at(variant: str, q, ctx: MPContext):
    if variant == "classical":
        if q < 0:
            raise NomeOutOfRange("classical alpha needs a positive nome")
        return (_theta(2, q, ctx) / _theta(3, q, ctx)) ** 4
    if variant == "cubic":
        # 1/alpha(q) = 1 + E(q)^12 / (27 q E(q^3)^12), E(x) = prod (1 - x^k)
        r = (_euler(q, ctx) / _euler(q ** 3, ctx)) ** 12 / (27 * q)
        return 1 / (1 + r)
    if variant == "quartic":
        r = (_euler(q, ctx) / _euler(q ** 2, ctx)) ** 24 / (64 * q)
        return 1 / (1 + r)
    raise ValueError(f"unknown variant {variant!r}")


def singular_modulus(variant: str, point, prec: int) -> BigReal:
    """alpha, alpha-dagger or alpha-perp at the nome of ``point``.

    Computed from theta sums (classical) or eta products (cubic, quartic);
    no modular equation is solved.
    """
    return _stable(lambda ctx: _alpha_at(str(variant), _as_q(point, ctx), ctx), prec)


def _xi(n: Fraction, ctx: MPContext):
    q = ctx.exp(-_pi(ctx) * ctx.sqrt(ctx.mpf(n.numerator) / n.denominator))
    return -64 * q * (_euler(q * q, ctx) / _euler(q, ctx)) ** 24


def xi_value(n, prec: int) -> BigReal:
    """xi(e^(-pi sqrt n)) with xi = -64 eta^24(tau)/eta^24(tau/2)."""
    n = Fraction(n)
    if n <= 0:
        raise ValueError("n must be positive")
    return _stable(lambda ctx: _xi(n, ctx), prec)


# -- Wronskian values ---------------------------------------------------------------------------------

def _series_value(builder, q, ctx, start_order: int):
    """Evaluate builder(order) at q, raising the order until the tail bound passes."""
    order = start_order
    for _ in range(12):
        try:
            return _eval_series(builder(order), q, ctx)
        except InsufficientOrder:
            order = int(order * 1.6) + 8
    raise InsufficientOrder(f"gave up at order {order}")


def _needed_order(q, bits: int) -> int:
    r = float(abs(q))
    if r == 0:
        return 8
    return int(bits * math.log(2) / -math.log(r)) + 16


def _family_parts_value(tag: str, ell: int, q, ctx: MPContext):
    from wronskpi.wronskian import FAMILIES, FamilyTag, family_parts

    start = _needed_order(q, ctx.prec)
    cache: dict[int, tuple] = {}

    def parts(order):
        if order not in cache:
            cache[order] = family_parts(tag, ell, order)
        return cache[order]

    F = _series_value(lambda o: parts(o)[0], q, ctx, start)
    dF = _series_value(lambda o: parts(o)[0].qderiv(), q, ctx, start)
    G = _series_value(lambda o: parts(o)[1], q, ctx, start)
    dG = _series_value(lambda o: parts(o)[1].qderiv(), q, ctx, start)
    p = FAMILIES[FamilyTag(tag)].normalizer_power
    norm = ctx.power(F * G, ctx.mpf(p.numerator) / p.denominator)
    return (F * dG - G * dF) / norm


def _f_value(ell: int, q, ctx: MPContext):
    from wronskpi.modular import eisenstein_P, theta_series

    start = _needed_order(q, ctx.prec)
    p2l = _series_value(lambda o: eisenstein_P(2 * ell, o), q, ctx, start)
    p2 = _series_value(lambda o: eisenstein_P(2, o), q, ctx, start)
    t = _theta(3, q, ctx) ** 2 * _theta(3, q ** ell, ctx) ** 2
    return (ell * p2l - p2) / t


def _direct_value(tag: str, ell: int, q, ctx: MPContext):
    from wronskpi.wronskian import family_series

    start = _needed_order(q, ctx.prec)
    return _series_value(lambda o: family_series(tag, ell, o), q, ctx, start)


def _split_value(ell: int, q, ctx: MPContext):
    """Dhat_{2 ell} at q from Dhat_ell and Dhat_2 by the even-level splitting."""
    t4 = lambda x: _theta(4, x, ctx) ** 2  # noqa: E731
    dl = _family_parts_value("Dhat", ell, q, ctx)
    d2 = _family_parts_value("Dhat", 2, q ** ell, ctx)
    num = dl * t4(q) * t4(q ** ell) + ell * d2 * t4(q ** ell) * t4(q ** (2 * ell))
    return num / (t4(q) * t4(q ** (2 * ell)))


def wronskian_value(family, ell: int, point, prec: int, route: str = "parts") -> BigReal:
    """A Wronskian family at a nome.

    ``route`` selects how the exact series are used: ``"parts"`` evaluates
    the base series and their q-derivatives and assembles the quotient (the
    default, cheapest at large nomes), ``"direct"`` evaluates the assembled
    quotient series, and ``"split"`` (Dhat at even level 2*ell' only) uses
    the even-level splitting relation.
    """
    from wronskpi.wronskian import FamilyTag

    tag = FamilyTag(family.tag if hasattr(family, "tag") else family).value
    ell = int(ell)
    if ell < 2:
        raise ValueError("level must be at least 2")

    def run(ctx):
        q = _as_q(point, ctx)
        _check_nome(q, 0.9 + 1e-12)
        if tag == "F":
            return _f_value(ell, q, ctx)
        if route == "direct":
            return _direct_value(tag, ell, q, ctx)
        if route == "split":
            if tag != "Dhat" or ell % 2 or ell == 2:
                raise ValueError("the split route applies to Dhat at even level > 2")
            return _split_value(ell // 2, q, ctx)
        if route != "parts":
            raise ValueError(f"unknown route {route!r}")
        return _family_parts_value(tag, ell, q, ctx)

    return _stable(run, prec)
