"""Base modular functions as exact :class:`~wronskpi.qseries.QSeries`.

All constructors take a positive integer argument scale ``m`` (the function
is returned in q^m) and a truncation ``order`` in units of q.  Results are
cached; they are immutable so sharing is safe.
"""
from __future__ import annotations

from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from wronskpi.errors import UnsupportedLevel
from wronskpi.qseries import LATTICE, EtaQuotientSpec, QSeries, eta_quotient, lattice

__all__ = [
    "BaseKind",
    "theta_series",
    "eta_series",
    "eisenstein_P",
    "cubic_a_series",
    "quartic_A_series",
    "alpha_series",
    "hauptmodul_series",
    "xi_series",
    "CLASSICAL_HAUPT_LEVELS",
    "CUBIC_HAUPT_LEVELS",
]

CLASSICAL_HAUPT_LEVELS = (3, 5, 7, 11, 23)
CUBIC_HAUPT_LEVELS = (2, 5, 11)


class BaseKind(str, Enum):
    THETA2 = "theta2"
    THETA3 = "theta3"
    THETA4 = "theta4"
    ETA = "eta"
    EISENSTEIN_P = "P"
    CUBIC_A = "a"
    QUARTIC_A = "A"
    ALPHA_CLASSICAL = "alpha"
    ALPHA_CUBIC = "alpha_dagger"
    ALPHA_QUARTIC = "alpha_perp"
    HAUPT_CLASSICAL = "H"
    HAUPT_CUBIC = "Hdagger"
    XI = "xi"


def _lat(order) -> int:
    n = lattice(order)
    if n <= 0:
        raise ValueError("order must be positive")
    return n


def _scaled(builder, m: int, lat_order: int) -> QSeries:
    """Evaluate ``builder`` at a reduced order and substitute q -> q^m."""
    if m < 1:
        raise ValueError("argument scale must be a positive integer")
    base = builder(-(-lat_order // m))
    if m == 1:
        return base.truncate_lattice(lat_order)
    return base.compose_lattice(m, lat_order)


# -- theta functions -----------------------------------------------------------

@lru_cache(maxsize=256)
def _theta(kind: int, lat_order: int) -> QSeries:
    terms: dict[int, int] = {}
    if kind == 2:
        # (k + 1/2)^2 = k^2 + k + 1/4; k and -1-k give the same exponent
        k = 0
        while True:
            e = LATTICE * (k * k + k) + LATTICE // 4
            if e >= lat_order:
                break
            terms[e] = 2
            k += 1
    elif kind in (3, 4):
        terms[0] = 1
        k = 1
        while LATTICE * k * k < lat_order:
            terms[LATTICE * k * k] = 2 if (kind == 3 or k % 2 == 0) else -2
            k += 1
    else:
        raise ValueError(f"theta kind must be 2, 3 or 4, not {kind!r}")
    return QSeries.from_lattice(terms, lat_order)


def theta_series(kind: int, m: int, order) -> QSeries:
    """Jacobi theta function theta_kind(q^m) from its defining sum.

    >>> theta_series(3, 1, 5)
    QSeries('1 + 2q + 2q^4 + O(q^5)')
    """
    lat_order = _lat(order)
    return _scaled(lambda n: _theta(int(kind), n), int(m), lat_order)


# -- eta -----------------------------------------------------------------------

def eta_series(tau_multiple, order) -> QSeries:
    """eta(t*tau) = q^(t/12) prod (1 - q^(2tk)) for t in (1/2)Z>0."""
    return eta_quotient(EtaQuotientSpec(((Fraction(tau_multiple), 1),)), order)


# -- Eisenstein P ----------------------------------------------------------------

@lru_cache(maxsize=64)
def _sigma1(n: int) -> tuple[int, ...]:
    s = [0] * n
    for d in range(1, n):
        for k in range(d, n, d):
            s[k] += d
    return tuple(s)


@lru_cache(maxsize=128)
def _eisenstein(lat_order: int) -> QSeries:
    n = -(-lat_order // LATTICE)
    sig = _sigma1(n)
    coeffs = [1] + [-24 * sig[k] for k in range(1, n)]
    return QSeries.from_list(coeffs, order=Fraction(lat_order, LATTICE))


def eisenstein_P(m: int, order) -> QSeries:
    """P(q^m) = 1 - 24 sum sigma_1(k) q^(mk)."""
    return _scaled(_eisenstein, int(m), _lat(order))


# -- cubic theta function a(q) -----------------------------------------------------

@lru_cache(maxsize=128)
def _cubic_a(lat_order: int) -> QSeries:
    n = -(-lat_order // LATTICE)
    counts = [0] * n
    # x^2 + xy + y^2 >= (3/4) x^2, so |x| <= sqrt(4n/3)
    bound = isqrt(4 * n // 3 + 1) + 1
    for x in range(-bound, bound + 1):
        # y^2 + x y + (x^2 - k) < 0 with k = n; y lies between the two roots
        disc = 4 * n - 3 * x * x
        if disc < 0:
            continue
        r = isqrt(disc) + 1
        for y in range((-x - r) // 2, (-x + r) // 2 + 1):
            v = x * x + x * y + y * y
            if v < n:
                counts[v] += 1
    return QSeries.from_list(counts, order=Fraction(lat_order, LATTICE))


def cubic_a_series(m: int, order) -> QSeries:
    """a(q^m) = sum over (x, y) in Z^2 of q^(m (x^2 + xy + y^2))."""
    return _scaled(_cubic_a, int(m), _lat(order))


# -- quartic A(q) ------------------------------------------------------------------

@lru_cache(maxsize=128)
def _quartic_A(lat_order: int) -> QSeries:
    # A(q) = (eta^8(tau/2) + 32 eta^8(2tau)) / eta^4(tau), i.e. tau -> tau/2 in
    # A(q^2) = (eta^8(tau) + 32 eta^8(4tau)) / eta^4(2tau).  Both quotients
    # have integer valuation (0 and 1 respectively).
    h = Fraction(1, 2)
    first = eta_quotient(EtaQuotientSpec(((h, 8), (1, -4))), Fraction(lat_order, LATTICE))
    second = eta_quotient(EtaQuotientSpec(((2, 8), (1, -4)), prefactor=32),
                          Fraction(lat_order, LATTICE))
    return first + second


def quartic_A_series(m: int, order) -> QSeries:
    return _scaled(_quartic_A, int(m), _lat(order))


# -- modular parameters --------------------------------------------------------------

@lru_cache(maxsize=128)
def _alpha_classical(lat_order: int) -> QSeries:
    t2 = _theta(2, lat_order) ** 4
    t3 = _theta(3, lat_order) ** 4
    return t2 / t3


def _q_squared_quotient(factors, lat_order: int) -> QSeries:
    """Eta quotient in q that is a function of q^2, rewritten with q^2 -> q."""
    s = eta_quotient(EtaQuotientSpec(factors), Fraction(2 * lat_order, LATTICE))
    return s.contract(2)


@lru_cache(maxsize=128)
def _alpha_cubic(lat_order: int) -> QSeries:
    # 1/alpha(q^2) = 1 + (1/27) eta^12(tau)/eta^12(3tau), so with
    # F = eta^12(3tau)/eta^12(tau) (valuation q^2): alpha(q^2) = 27F/(1 + 27F)
    f = _q_squared_quotient(((3, 12), (1, -12)), lat_order + LATTICE) * 27
    return (f / (1 + f)).truncate_lattice(lat_order)


@lru_cache(maxsize=128)
def _alpha_quartic(lat_order: int) -> QSeries:
    # 1/alpha(q^2) = 1 + (1/64) eta^24(tau)/eta^24(2tau)
    g = _q_squared_quotient(((2, 24), (1, -24)), lat_order + LATTICE) * 64
    return (g / (1 + g)).truncate_lattice(lat_order)


_ALPHA = {"classical": _alpha_classical, "cubic": _alpha_cubic, "quartic": _alpha_quartic}


def alpha_series(variant: str, m: int, order) -> QSeries:
    """Modular parameter alpha, alpha-dagger or alpha-perp as a series in q^m.

    >>> alpha_series("classical", 1, 4)
    QSeries('16q - 128q^2 + 704q^3 + O(q^4)')
    """
    try:
        builder = _ALPHA[str(variant)]
    except KeyError:
        raise ValueError(f"unknown alpha variant {variant!r}") from None
    return _scaled(builder, int(m), _lat(order))


# -- Hauptmoduls ----------------------------------------------------------------------

@lru_cache(maxsize=64)
def _haupt(family: str, ell: int, lat_order: int) -> QSeries:
    if family == "classical":
        if ell not in CLASSICAL_HAUPT_LEVELS:
            raise UnsupportedLevel(f"no classical Hauptmodul is provided for level {ell}")
        k, e = 2, 24 // (ell + 1)
    elif family == "cubic":
        if ell not in CUBIC_HAUPT_LEVELS:
            raise UnsupportedLevel(f"no cubic Hauptmodul is provided for level {ell}")
        k, e = 3, 12 // (ell + 1)
    else:
        raise ValueError(f"unknown Hauptmodul family {family!r}")
    spec = EtaQuotientSpec(((k, e), (k * ell, e), (1, -e), (ell, -e)))
    return eta_quotient(spec, Fraction(lat_order, LATTICE))


def hauptmodul_series(family: str, ell: int, order) -> QSeries:
    """(eta(k tau) eta(k ell tau) / (eta(tau) eta(ell tau)))^(2k'/(ell+1)).

    ``k = 2`` with exponent 24/(ell+1) for the classical family, ``k = 3``
    with exponent 12/(ell+1) for the cubic family.
    """
    return _haupt(str(family), int(ell), _lat(order))


# -- xi ----------------------------------------------------------------------------------

@lru_cache(maxsize=64)
def _xi(lat_order: int) -> QSeries:
    spec = EtaQuotientSpec(((1, 24), (Fraction(1, 2), -24)), prefactor=-64)
    return eta_quotient(spec, Fraction(lat_order, LATTICE))


def xi_series(order) -> QSeries:
    """xi(q) = -64 eta^24(tau) / eta^24(tau/2); leading term -64q."""
    return _xi(_lat(order))
