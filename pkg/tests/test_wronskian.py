from fractions import Fraction

import pytest

from wronskpi.modular import alpha_series, theta_series
from wronskpi.qseries import QSeries
from wronskpi.wronskian import (
    FAMILIES,
    FamilyTag,
    f_series_eta,
    family_series,
    wronskian_quotient,
)

F = Fraction


def test_normalizer_powers():
    assert FAMILIES[FamilyTag.D].normalizer_power == 3
    assert FAMILIES[FamilyTag.DHAT].normalizer_power == 3
    assert FAMILIES[FamilyTag.C].normalizer_power == 2
    assert FAMILIES[FamilyTag.CHAT].normalizer_power == 2
    assert FAMILIES[FamilyTag.DPERP].normalizer_power == F(3, 2)


def test_quotient_examples():
    t = theta_series(3, 1, 20)
    one = QSeries.constant(1, 20)
    assert wronskian_quotient(t, t, one).is_zero()
    assert wronskian_quotient(one, QSeries.monomial(1, 1, 20), one) == QSeries.monomial(1, 1, 20)
    t3 = theta_series(3, 3, 20)
    w = wronskian_quotient(t, t3, t ** 3 * t3 ** 3)
    assert w.valuation == 1 and w[1] == -2 and w[2] == 12


def test_family_leading_terms():
    # frozen from a naive Fraction-list expansion of the defining quotient
    assert [family_series("D", 3, 11)[k] for k in range(11)] == [
        0, -2, 12, -42, 136, -396, 1020, -2496, 5808, -12786, 27208]
    assert [family_series("D", 5, 11)[k] for k in range(11)] == [
        0, -2, 12, -48, 152, -410, 1024, -2392, 5296, -11242, 22940]
    f3 = family_series("F", 3, 11)
    assert [f3[k] for k in range(11)] == [2, -8, 48, -168, 544, -1584, 4080, -9984, 23232,
                                          -51144, 108832]


@pytest.mark.parametrize("ell", [3, 5, 7, 11, 13])
def test_hatted_is_negated(ell):
    d = family_series("D", ell, 100)
    assert (family_series("Dhat", ell, 100) - d.negate_q()).is_zero()


@pytest.mark.parametrize("N", [5, 11, 17])
def test_cubic_hatted_is_negated(N):
    c = family_series("C", N, 100)
    assert (family_series("Chat", N, 100) - c.negate_q()).is_zero()


def test_dhat2_differs_from_negated_d2():
    diff = family_series("Dhat", 2, 21) - family_series("D", 2, 21).negate_q()
    assert not diff.is_zero()
    assert diff.valuation <= 20


@pytest.mark.parametrize("ell", [3, 7])
def test_f_two_routes(ell):
    assert (family_series("F", ell, 150) - f_series_eta(ell, 150)).is_zero()


@pytest.mark.parametrize("ell,k", [(3, 1), (7, 3)])
def test_f_modular_relation(ell, k):
    order = 150
    a = alpha_series("classical", 1, order)
    b = alpha_series("classical", ell, order)
    rhs = k * (1 + (a * b) ** F(1, 2) + ((1 - a) * (1 - b)) ** F(1, 2))
    assert (family_series("F", ell, order) - rhs).is_zero()


@pytest.mark.parametrize("ell", [3, 5, 7, 11, 23])
def test_even_level_splitting(ell):
    order = 150
    t4 = lambda m: theta_series(4, m, order) ** 2  # noqa: E731
    lhs = family_series("Dhat", 2 * ell, order) * t4(1) * t4(2 * ell)
    d2 = family_series("Dhat", 2, order).compose(ell, order)
    rhs = family_series("Dhat", ell, order) * t4(1) * t4(ell) + ell * d2 * t4(ell) * t4(2 * ell)
    assert (lhs - rhs).truncate(order).is_zero()


@pytest.mark.parametrize("N", [3, 5])
def test_dM_relation(N):
    order = 100
    t, tN = theta_series(3, 1, order), theta_series(3, N, order)
    lhs = (t ** 4 / tN ** 4).qderiv()
    rhs = -4 * t ** 6 / tN ** 2 * family_series("D", N, order)
    assert (lhs - rhs).is_zero()


def test_dX_relation():
    order = 150
    a = alpha_series("classical", 1, order)
    X = 4 * a * (1 - a)
    assert (X.qderiv() - (1 - 2 * a) * X * theta_series(3, 1, order) ** 4).is_zero()


def test_level_validation():
    with pytest.raises(ValueError):
        family_series("D", 1, 10)
    with pytest.raises(ValueError):
        family_series("bogus", 3, 10)
