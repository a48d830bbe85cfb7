"""Series for 1/pi of the form  c/pi = sum_k A_k (b k + a) X^k.

A_k is one of three hypergeometric coefficient families.  Every constant
(b, a, X) is computed from first principles: the singular modulus from
theta or eta sums and ``a`` from the value of a Wronskian family at the
inverted nome.  Digits are checked against an AGM reference pi.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from wronskpi.errors import DivergentSeries, InadmissibleLevel
from wronskpi.precision import (
    GUARD,
    LOG2_10,
    BigReal,
    EvalPoint,
    Family,
    _agree_bits,
    _alpha_at,
    _family_parts_value,
    _nome,
    _split_value,
    agreeing_digits,
    make_context,
    reference_pi,
)
from wronskpi.registry import Status, VerificationReport

__all__ = [
    "CoefficientFamily",
    "Theorem",
    "SeriesSpec",
    "coefficient",
    "build_spec",
    "sum_series",
    "verify_pi",
    "digits_per_term",
    "load_series_catalog",
    "spec_from_id",
]


class CoefficientFamily(str, Enum):
    CLASSICAL = "classical"   # (1/2)_k^3 / k!^3
    CUBIC = "cubic"           # (1/2)_k (1/3)_k (2/3)_k / k!^3
    QUARTIC = "quartic"       # (1/2)_k (1/4)_k (3/4)_k / k!^3


_SHIFTS = {
    CoefficientFamily.CLASSICAL: (Fraction(1, 2),) * 3,
    CoefficientFamily.CUBIC: (Fraction(1, 2), Fraction(1, 3), Fraction(2, 3)),
    CoefficientFamily.QUARTIC: (Fraction(1, 2), Fraction(1, 4), Fraction(3, 4)),
}


def ratio(family: CoefficientFamily, k: int) -> Fraction:
    """A_{k+1} / A_k."""
    r = Fraction(1)
    for s in _SHIFTS[CoefficientFamily(family)]:
        r *= s + k
    return r / (k + 1) ** 3


def coefficient(family, k: int) -> Fraction:
    """Exact A_k."""
    a = Fraction(1)
    for j in range(k):
        a *= ratio(family, j)
    return a


class Theorem(str, Enum):
    T1_1 = "T1_1"   # classical, 1/(sqrt N pi)
    T1_2 = "T1_2"   # classical alternating, 1/(sqrt N pi)
    T5_1 = "T5_1"   # cubic, sqrt(3/N)/(2 pi)
    T5_2 = "T5_2"   # cubic alternating, sqrt(3/N)/pi
    T6_1 = "T6_1"   # quartic, sqrt(2/N)/(2 pi)


FAMILY_OF = {
    Theorem.T1_1: CoefficientFamily.CLASSICAL,
    Theorem.T1_2: CoefficientFamily.CLASSICAL,
    Theorem.T5_1: CoefficientFamily.CUBIC,
    Theorem.T5_2: CoefficientFamily.CUBIC,
    Theorem.T6_1: CoefficientFamily.QUARTIC,
}

MIN_LEVEL = {Theorem.T1_1: 3, Theorem.T1_2: 2, Theorem.T5_1: 2, Theorem.T5_2: 8,
             Theorem.T6_1: 2}

# left side is (lhs_factor) / pi with lhs_factor = c * sqrt(r / N)
_LHS = {
    Theorem.T1_1: ("1/(sqrt(N) pi)", Fraction(1), 1),
    Theorem.T1_2: ("1/(sqrt(N) pi)", Fraction(1), 1),
    Theorem.T5_1: ("sqrt(3/N)/(2 pi)", Fraction(1, 2), 3),
    Theorem.T5_2: ("sqrt(3/N)/pi", Fraction(1), 3),
    Theorem.T6_1: ("sqrt(2/N)/(2 pi)", Fraction(1, 2), 2),
}


@dataclass(frozen=True)
class SeriesSpec:
    theorem: Theorem
    N: int
    family: CoefficientFamily
    b: BigReal
    a: BigReal
    X: BigReal
    target_lhs: str
    lhs_factor: BigReal          # the left side equals lhs_factor / pi
    id: str = ""
    extra: dict = field(default_factory=dict, compare=False)

    @property
    def precision_bits(self) -> int:
        return min(self.b.precision_bits, self.a.precision_bits, self.X.precision_bits)


def _constants(theorem: Theorem, N: int, ctx, route: str = "parts"):
    """(b, a, X, lhs_factor) at the working precision of ``ctx``."""
    n = ctx.mpf(N)
    rn = ctx.sqrt(n)
    if theorem is Theorem.T1_1:
        al = _alpha_at("classical", _nome(EvalPoint(Family.CLASSICAL, N), ctx), ctx)
        X = 4 * al * (1 - al)
        b = 1 - 2 * al
        qi = _nome(EvalPoint(Family.CLASSICAL, N, True), ctx)
        a_fn = lambda: -2 / rn * _family_parts_value("D", N, qi, ctx)  # noqa: E731
    elif theorem is Theorem.T1_2:
        al = _alpha_at("classical", _nome(EvalPoint(Family.CLASSICAL, N), ctx), ctx)
        X = -4 * al / (1 - al) ** 2
        b = (1 + al) / (1 - al)
        qi = _nome(EvalPoint(Family.CLASSICAL, N, True), ctx)
        if route == "split":
            if N % 2 or N < 6:
                raise ValueError("the split route needs N = 2*l with l odd")
            dhat = lambda: _split_value(N // 2, qi, ctx)  # noqa: E731
        else:
            dhat = lambda: _family_parts_value("Dhat", N, qi, ctx)  # noqa: E731
        a_fn = lambda: (-2 / rn * ctx.sqrt(al / (1 - al)) * dhat()  # noqa: E731
                        + 1 / (2 * (1 - al)))
    elif theorem is Theorem.T5_1:
        al = _alpha_at("cubic", _nome(EvalPoint(Family.CUBIC, N), ctx), ctx)
        X = 4 * al * (1 - al)
        b = 1 - 2 * al
        qi = _nome(EvalPoint(Family.CUBIC, N, True), ctx)
        a_fn = lambda: -_family_parts_value("C", N, qi, ctx) / rn  # noqa: E731
    elif theorem is Theorem.T5_2:
        al = _alpha_at("cubic", _nome(EvalPoint(Family.CUBIC_ALTERNATING, N), ctx), ctx)
        X = 4 * al * (1 - al)
        b = 1 - 2 * al
        qi = _nome(EvalPoint(Family.CUBIC_ALTERNATING, N, True), ctx)
        a_fn = lambda: _family_parts_value("Chat", N, qi, ctx) / rn  # noqa: E731
    elif theorem is Theorem.T6_1:
        al = _alpha_at("quartic", _nome(EvalPoint(Family.QUARTIC, N), ctx), ctx)
        X = 4 * al * (1 - al)
        b = 1 - 2 * al
        qi = _nome(EvalPoint(Family.QUARTIC, N, True), ctx)
        a_fn = lambda: -_family_parts_value("Dperp", N, qi, ctx) / (2 * rn)  # noqa: E731
    else:
        raise ValueError(theorem)
    # admissibility: divergence is reported before the level range
    if abs(X) >= 1:
        raise DivergentSeries(f"{theorem.value} at N={N}: |X| = {float(abs(X)):.6g} >= 1")
    if N < MIN_LEVEL[theorem]:
        raise InadmissibleLevel(f"{theorem.value} needs N >= {MIN_LEVEL[theorem]}, got {N}")
    _, c, r = _LHS[theorem]
    lhs = ctx.mpf(c.numerator) / c.denominator * ctx.sqrt(ctx.mpf(r) / n)
    return b, a_fn(), X, lhs


def build_spec(theorem, N: int, prec: int = 512, spec_id: str = "",
               route: str = "parts") -> SeriesSpec:
    """Instantiate one series with constants computed at ``prec`` bits.

    Raises :class:`DivergentSeries` when |X| >= 1 and
    :class:`InadmissibleLevel` when N is outside the theorem's range.
    ``route="split"`` (T1_2 at N = 2l only) assembles the hatted Wronskian
    value from levels l and 2 through the even-level splitting.
    """
    if route not in ("parts", "split"):
        raise ValueError(f"unknown route {route!r}")
    theorem = Theorem(theorem)
    N = int(N)
    if N < 1:
        raise InadmissibleLevel("N must be a positive integer")
    lo, hi = make_context(prec + GUARD), make_context(prec + 2 * GUARD)
    v1 = _constants(theorem, N, lo, route)
    v2 = _constants(theorem, N, hi, route)
    vals = [BigReal(y, min(prec, _agree_bits(hi.mpf(x), y, hi))) for x, y in zip(v1, v2)]
    b, a, X, lhs = vals
    return SeriesSpec(theorem, N, FAMILY_OF[theorem], b, a, X, _LHS[theorem][0], lhs,
                      spec_id or f"{FAMILY_OF[theorem].value}.{theorem.value}.N{N}")


def digits_per_term(spec_or_X) -> float:
    """log10(1/|X|)."""
    X = spec_or_X.X if isinstance(spec_or_X, SeriesSpec) else spec_or_X
    v = X.value if isinstance(X, BigReal) else X
    ctx = make_context(128)
    if isinstance(v, Fraction):
        v = ctx.mpf(v.numerator) / v.denominator
    x = abs(ctx.mpf(v))
    if not x < 1:
        raise DivergentSeries("|X| >= 1")
    if x == 0:
        return math.inf
    return float(-ctx.log10(x))


def _term_budget(family, b, a, X, S, target_digits: int) -> int:
    """Number of terms the tail bound asks for, using float logarithms only."""
    shifts = [float(x) for x in _SHIFTS[family]]
    lg_norm = sum(math.lgamma(x) for x in shifts)
    lx = math.log(abs(X))
    goal = math.log(abs(S)) - target_digits * math.log(10)
    k = 0
    while True:
        logA = sum(math.lgamma(x + k) for x in shifts) - lg_norm - 3 * math.lgamma(k + 1)
        lin = abs(b * k + a)
        nxt = abs(b * (k + 1) + a)
        r = abs(X) * (1 + abs(b) / nxt) if nxt else 1.0
        k += 1
        if lin and r < 1 and logA + math.log(lin) + (k - 1) * lx + math.log(r / (1 - r)) < goal:
            return k
        if k > 100000:
            raise DivergentSeries("series failed to converge")


def _block_sum(args):
    family, k0, k1, bits, b_s, a_s, x_s = args
    ctx = make_context(bits)
    b, a, X = ctx.mpf(b_s), ctx.mpf(a_s), ctx.mpf(x_s)
    A = coefficient(family, k0)
    xk = ctx.power(X, k0)
    acc = ctx.mpf(0)
    for k in range(k0, k1):
        acc += ctx.mpf(A.numerator) / A.denominator * (b * k + a) * xk
        A *= ratio(family, k)
        xk *= X
    return ctx.nstr(acc, int(bits / LOG2_10) + 5)


def sum_series(spec: SeriesSpec, target_digits: int, block: int | None = None, jobs: int = 1):
    """Partial sums of sum A_k (b k + a) X^k until ``target_digits`` are assured.

    Returns ``(value, terms_used)``.  The stopping rule bounds the tail by a
    geometric series with ratio |X| (1 + |b| / |b k + a|).

    With ``block`` set, the term count is fixed up front from the same bound,
    terms are summed in blocks of that size (across ``jobs`` processes when
    jobs > 1) and block sums are added left to right, so the result does not
    depend on ``jobs``.
    """
    if target_digits < 1:
        raise ValueError("target_digits must be positive")
    bits = int(math.ceil(target_digits * LOG2_10)) + 128
    ctx = make_context(bits)
    b, a, X = (ctx.mpf(v.value) for v in (spec.b, spec.a, spec.X))
    if not abs(X) < 1:
        raise DivergentSeries("|X| >= 1")
    fam = spec.family
    out_bits = min(int(target_digits * LOG2_10) + 8, spec.precision_bits)
    if block:
        S = float(spec.lhs_factor) / math.pi
        n = _term_budget(fam, float(b), float(a), float(X), S, target_digits) + 1
        strs = [ctx.nstr(v, int(bits / LOG2_10) + 5) for v in (b, a, X)]
        tasks = [(fam, k0, min(k0 + block, n), bits, *strs) for k0 in range(0, n, block)]
        if jobs > 1:
            from concurrent.futures import ProcessPoolExecutor
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                parts = list(pool.map(_block_sum, tasks))
        else:
            parts = [_block_sum(t) for t in tasks]
        total = ctx.mpf(0)
        for p in parts:
            total += ctx.mpf(p)
        return BigReal(total, out_bits), n
    eps = ctx.mpf(10) ** (-target_digits)
    A = Fraction(1)
    xk = ctx.mpf(1)
    total = ctx.mpf(0)
    k = 0
    while True:
        term = ctx.mpf(A.numerator) / A.denominator * (b * k + a) * xk
        total += term
        lin_next = abs(b * (k + 1) + a)
        r = abs(X) * (1 + abs(b) / lin_next) if lin_next else ctx.mpf(1)
        k += 1
        if r < 1 and abs(term) * r / (1 - r) < eps * abs(total):
            break
        if k > 100000:
            raise DivergentSeries("series failed to converge")
        A *= ratio(fam, k - 1)
        xk *= X
    return BigReal(total, out_bits), k


def verify_pi(spec: SeriesSpec, digits: int) -> VerificationReport:
    """Sum the series, invert for pi and count digits agreeing with the reference."""
    value, terms = sum_series(spec, digits + 1)
    bits = int(math.ceil((digits + 10) * LOG2_10)) + 64
    ctx = make_context(bits)
    pi_est = ctx.mpf(spec.lhs_factor.value) / ctx.mpf(value.value)
    ref = reference_pi(bits)
    matched = min(agreeing_digits(pi_est, ref), int(spec.precision_bits / LOG2_10))
    status = Status.PASS if matched >= digits else Status.FAIL
    # truncate rather than round so every printed digit is one that was checked
    shown = ctx.nstr(pi_est, digits + 8, strip_zeros=False)[: digits + 1]
    return VerificationReport(
        spec.id, status, None, notes=f"{matched} digits of pi matched using {terms} terms",
        extra={"matched_digits": matched, "requested_digits": digits, "terms_used": terms,
               "pi_digits": shown, "digits_per_term": round(digits_per_term(spec), 6)})


# -- catalog ----------------------------------------------------------------------------------------

@dataclass(frozen=True)
class CatalogEntry:
    id: str
    theorem: Theorem
    N: int
    provenance: str
    divergent: bool = False


@lru_cache(maxsize=1)
def load_series_catalog() -> dict[str, CatalogEntry]:
    with (resources.files("wronskpi") / "data" / "series.json").open(encoding="utf-8") as fh:
        raw = json.load(fh)
    return {e["id"]: CatalogEntry(e["id"], Theorem(e["theorem"]), int(e["N"]), e["provenance"],
                                  bool(e.get("divergent", False))) for e in raw}


def spec_from_id(spec_id: str, prec: int = 512) -> SeriesSpec:
    cat = load_series_catalog()
    if spec_id not in cat:
        raise KeyError(f"unknown series id {spec_id!r}")
    e = cat[spec_id]
    return build_spec(e.theorem, e.N, prec, spec_id)
