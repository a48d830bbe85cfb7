from fractions import Fraction

import pytest

from wronskpi.errors import UnsupportedLevel
from wronskpi.modular import (
    alpha_series,
    cubic_a_series,
    eisenstein_P,
    eta_series,
    hauptmodul_series,
    quartic_A_series,
    theta_series,
    xi_series,
)
from wronskpi.qseries import QSeries

F = Fraction


def coeffs(s, n):
    return [s[k] for k in range(n)]


def test_theta_examples():
    assert dict(theta_series(3, 1, 5).items()) == {0: 1, 1: 2, 4: 2}
    assert dict(theta_series(4, 1, 5).items()) == {0: 1, 1: -2, 4: 2}
    assert dict(theta_series(2, 1, 3).items()) == {F(1, 4): 2, F(9, 4): 2}
    assert dict(theta_series(3, 3, 13).items()) == {0: 1, 3: 2, 12: 2}


def test_eisenstein_examples():
    assert coeffs(eisenstein_P(1, 5), 5) == [1, -24, -72, -96, -168]
    assert dict(eisenstein_P(2, 5).items()) == {0: 1, 2: -24, 4: -72}


def test_cubic_a_lattice_count():
    # brute-force count of x^2 + xy + y^2 = n
    assert coeffs(cubic_a_series(1, 13), 13) == [1, 6, 0, 6, 6, 0, 0, 12, 0, 6, 0, 0, 6]


def test_quartic_A():
    A = quartic_A_series(1, 100)
    assert coeffs(A, 5) == [1, 24, 24, 96, 24]
    t3, t2 = theta_series(3, 1, 100), theta_series(2, 1, 100)
    assert (A - t3 ** 4 - t2 ** 4).is_zero()


def test_alpha_leading_terms():
    assert coeffs(alpha_series("classical", 1, 8), 8) == [0, 16, -128, 704, -3072, 11488,
                                                          -38400, 117632]
    # frozen from a naive inversion of 1 + (1/27) eta^12(tau)/eta^12(3 tau)
    assert coeffs(alpha_series("cubic", 1, 7), 7) == [0, 27, -405, 4617, -45333, 406458,
                                                      -3428487]
    assert coeffs(alpha_series("quartic", 1, 7), 7) == [0, 64, -2560, 84736, -2551808,
                                                        72725376, -1999353856]


def test_alpha_scaled_argument():
    a1 = alpha_series("classical", 1, 30)
    assert alpha_series("classical", 3, 90) == a1.compose(3)


def test_hauptmoduls():
    h3 = hauptmodul_series("classical", 3, 12)
    assert coeffs(h3, 12) == [0, 0, 1, 0, 6, 0, 21, 0, 68, 0, 198, 0]
    assert hauptmodul_series("classical", 23, 10).valuation == 2
    for ell in (2, 5, 11):
        assert hauptmodul_series("cubic", ell, 20).valuation is not None
    with pytest.raises(UnsupportedLevel):
        hauptmodul_series("classical", 13, 10)
    with pytest.raises(UnsupportedLevel):
        hauptmodul_series("cubic", 3, 10)


def test_xi():
    xi = xi_series(100)
    assert xi.valuation == 1 and xi[1] == -64 and xi[0] == 0
    al = alpha_series("classical", 1, 100)
    assert (xi + 4 * al / (1 - al) ** 2).is_zero()


# -- product forms and classical identities to q^200 ----------------------------------------------

ORDER = 200


@pytest.fixture(scope="module")
def base():
    return {
        "t2": theta_series(2, 1, ORDER), "t3": theta_series(3, 1, ORDER),
        "t4": theta_series(4, 1, ORDER),
        "eh": eta_series(F(1, 2), ORDER + 1), "e1": eta_series(1, ORDER + 1),
        "e2": eta_series(2, ORDER + 1),
    }


def test_product_representations(base):
    b = base
    assert (b["t4"] - b["eh"] ** 2 / b["e1"]).is_zero()
    assert (b["t2"] - 2 * b["e2"] ** 2 / b["e1"]).is_zero()
    assert (b["t3"] - b["e1"] ** 5 / (b["e2"] ** 2 * b["eh"] ** 2)).is_zero()


def test_jacobi_quartic(base):
    assert (base["t3"] ** 4 - base["t2"] ** 4 - base["t4"] ** 4).is_zero()


def test_jacobi_eta24(base):
    t2, t3, t4 = base["t2"], base["t3"], base["t4"]
    rhs = F(1, 256) * t3 ** 24 * (t2 ** 8 / t3 ** 8) * (t4 ** 8 / t3 ** 8)
    lhs = eta_series(1, ORDER + 2) ** 24
    assert lhs.truncate(ORDER).agrees_with(rhs.truncate(ORDER))


def test_duplication_squared_form(base):
    t3, t4 = base["t3"], base["t4"]
    lhs = t3 ** 2 + t4 ** 2
    assert (lhs - 2 * theta_series(3, 2, ORDER) ** 2).is_zero()
    # the unsquared variant is not an identity
    assert not (lhs - 2 * theta_series(3, 2, ORDER)).is_zero()


def test_P_is_log_derivative_of_eta():
    e = eta_series(1, 150)
    assert (eisenstein_P(2, 149) - 12 * e.qderiv() / e).truncate(149).is_zero()


def _hyper(shifts, x, K, order):
    total = QSeries.zero(order) + 1
    term = QSeries.zero(order) + 1
    A = F(1)
    for k in range(K):
        r = F(1)
        for s in shifts:
            r *= s + k
        A *= r / (k + 1) ** 3
        term = term * x
        total = total + A * term
    return total


@pytest.mark.parametrize("kind", ["classical", "cubic", "quartic"])
def test_hypergeometric_expansions(kind):
    K = 40
    if kind == "classical":
        al, lhs, shifts = alpha_series("classical", 1, K + 1), theta_series(3, 1, K + 1) ** 4, \
            (F(1, 2),) * 3
    elif kind == "cubic":
        al, lhs, shifts = alpha_series("cubic", 1, K + 1), cubic_a_series(1, K + 1) ** 2, \
            (F(1, 2), F(1, 3), F(2, 3))
    else:
        al, lhs, shifts = alpha_series("quartic", 1, K + 1), quartic_A_series(1, K + 1), \
            (F(1, 2), F(1, 4), F(3, 4))
    x = 4 * al * (1 - al)
    assert (lhs - _hyper(shifts, x, K, K + 1)).truncate(K + 1).is_zero()


def test_alpha_at_negated_q():
    al = alpha_series("classical", 1, 100)
    assert (al.negate_q() + al / (1 - al)).is_zero()
