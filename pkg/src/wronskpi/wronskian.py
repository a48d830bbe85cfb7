"""Wronskian quotients of theta-type functions as exact q-series.

For a base function ``g`` and level ``l`` the families are

    W = g(q) * q d/dq[g(q^l)] - g(q^l) * q d/dq[g(q)]
    family = W / (g(q) g(q^l))^p

with ``(g, p)`` equal to ``(theta3, 3)`` for D, ``(theta4, 3)`` for Dhat,
``(a, 2)`` for C, ``(a(-q), 2)`` for Chat and ``(A, 3/2)`` for Dperp.  The
function f is built from Eisenstein series instead.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

from wronskpi.modular import (
    cubic_a_series,
    eisenstein_P,
    eta_series,
    quartic_A_series,
    theta_series,
)
from wronskpi.qseries import LATTICE, QSeries, lattice

__all__ = [
    "FamilyTag",
    "WronskianFamily",
    "FAMILIES",
    "wronskian_quotient",
    "wronskian_determinant",
    "family_series",
    "family_parts",
    "f_series_eta",
]


class FamilyTag(str, Enum):
    F = "F"
    D = "D"
    DHAT = "Dhat"
    C = "C"
    CHAT = "Chat"
    DPERP = "Dperp"


@dataclass(frozen=True)
class WronskianFamily:
    tag: FamilyTag
    base: str
    normalizer_power: Fraction


FAMILIES = {
    FamilyTag.F: WronskianFamily(FamilyTag.F, "P", Fraction(0)),
    FamilyTag.D: WronskianFamily(FamilyTag.D, "theta3", Fraction(3)),
    FamilyTag.DHAT: WronskianFamily(FamilyTag.DHAT, "theta4", Fraction(3)),
    FamilyTag.C: WronskianFamily(FamilyTag.C, "a", Fraction(2)),
    FamilyTag.CHAT: WronskianFamily(FamilyTag.CHAT, "a(-q)", Fraction(2)),
    FamilyTag.DPERP: WronskianFamily(FamilyTag.DPERP, "A", Fraction(3, 2)),
}


def _tag(family) -> FamilyTag:
    if isinstance(family, WronskianFamily):
        return family.tag
    return FamilyTag(family)


def wronskian_determinant(F: QSeries, G: QSeries) -> QSeries:
    """F * qderiv(G) - G * qderiv(F)."""
    return F * G.qderiv() - G * F.qderiv()


def wronskian_quotient(F: QSeries, G: QSeries, normalizer: QSeries) -> QSeries:
    """(F * qderiv(G) - G * qderiv(F)) / normalizer, exactly."""
    return wronskian_determinant(F, G) / normalizer


def _base_pair(tag: FamilyTag, ell: int, lat_order: int) -> tuple[QSeries, QSeries]:
    order = Fraction(lat_order, LATTICE)
    if tag is FamilyTag.D:
        return theta_series(3, 1, order), theta_series(3, ell, order)
    if tag is FamilyTag.DHAT:
        return theta_series(4, 1, order), theta_series(4, ell, order)
    if tag is FamilyTag.C:
        return cubic_a_series(1, order), cubic_a_series(ell, order)
    if tag is FamilyTag.CHAT:
        # a(-q) and a(-q^ell): negate first, then substitute
        neg = cubic_a_series(1, order).negate_q()
        return neg, neg.compose_lattice(ell, lat_order)
    if tag is FamilyTag.DPERP:
        return quartic_A_series(1, order), quartic_A_series(ell, order)
    raise ValueError(f"family {tag.value} has no base pair")


def family_parts(family, ell: int, order):
    """Base series ``(F, G)`` with ``G = F(q^ell)`` and the normalizer power.

    Numerical evaluation assembles the family from these, which needs far
    fewer coefficients than the assembled quotient at large nomes.
    """
    tag = _tag(family)
    F, G = _base_pair(tag, int(ell), lattice(order))
    return F, G, FAMILIES[tag].normalizer_power


@lru_cache(maxsize=256)
def _family(tag: FamilyTag, ell: int, lat_order: int) -> QSeries:
    order = Fraction(lat_order, LATTICE)
    if tag is FamilyTag.F:
        num = eisenstein_P(2 * ell, order) * ell - eisenstein_P(2, order)
        den = theta_series(3, 1, order) ** 2 * theta_series(3, ell, order) ** 2
        return num / den
    F, G = _base_pair(tag, ell, lat_order)
    p = FAMILIES[tag].normalizer_power
    norm = (F * G) ** p
    return wronskian_quotient(F, G, norm)


def family_series(family, ell: int, order) -> QSeries:
    """The requested Wronskian family at level ``ell`` as a series in q.

    >>> family_series("D", 3, 4)
    QSeries('-2q + 12q^2 - 42q^3 + O(q^4)')
    """
    ell = int(ell)
    if ell < 2:
        raise ValueError("level must be at least 2")
    return _family(_tag(family), ell, lattice(order))


def f_series_eta(ell: int, order) -> QSeries:
    """f(ell) from the Wronskian of eta(tau) and eta(ell tau); an independent route."""
    ell = int(ell)
    # the determinant has valuation (1 + ell)/12; dividing by eta(tau)eta(ell tau)
    # loses that much relative precision, so work with a margin
    margin = Fraction(1 + ell, 12)
    e1 = eta_series(1, Fraction(order) + margin)
    el = eta_series(ell, Fraction(order) + margin)
    t = theta_series(3, 1, order) ** 2 * theta_series(3, ell, order) ** 2
    out = wronskian_determinant(e1, el) * 12 / (e1 * el * t)
    return out.truncate(order)
