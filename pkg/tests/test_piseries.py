import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wronskpi.errors import DivergentSeries, InadmissibleLevel
from wronskpi.piseries import (
    CoefficientFamily,
    Theorem,
    build_spec,
    coefficient,
    digits_per_term,
    load_series_catalog,
    ratio,
    spec_from_id,
    sum_series,
    verify_pi,
)
from wronskpi.precision import agreeing_digits, load_constants, make_context

ctx = make_context(700)
T = Theorem


def const(cid):
    return ctx.mpf(load_constants()[cid].value(640).value)


def val(x):
    return ctx.mpf(x.value)


@pytest.fixture(scope="module")
def specs():
    cache = {}

    def get(theorem, N, prec=512, **kw):
        key = (theorem, N, prec, tuple(sorted(kw.items())))
        if key not in cache:
            cache[key] = build_spec(theorem, N, prec, **kw)
        return cache[key]
    return get


# -- coefficients -----------------------------------------------------------------------------------

def test_coefficient_examples():
    assert coefficient("classical", 1) == Fraction(1, 8)
    assert coefficient("classical", 2) == Fraction(27, 512)
    assert coefficient("cubic", 1) == Fraction(1, 2) * Fraction(1, 3) * Fraction(2, 3)
    assert coefficient("quartic", 0) == 1


@given(st.sampled_from(list(CoefficientFamily)), st.integers(0, 60))
def test_ratio_matches_coefficients(fam, k):
    assert coefficient(fam, k + 1) == coefficient(fam, k) * ratio(fam, k)


@given(st.sampled_from(list(CoefficientFamily)), st.integers(1, 80))
def test_coefficients_decrease(fam, k):
    c = coefficient(fam, k)
    assert 0 < c < coefficient(fam, k - 1)


# -- admissibility -------------------------------------------------------------------------------------

@pytest.mark.parametrize("N", [2, 5])
def test_divergent_cubic_alternating(N):
    with pytest.raises(DivergentSeries):
        build_spec(T.T5_2, N, 256)


def test_inadmissible_levels():
    with pytest.raises(InadmissibleLevel):
        build_spec(T.T1_1, 2, 256)
    with pytest.raises(InadmissibleLevel):
        build_spec(T.T1_1, 0, 256)
    with pytest.raises(ValueError):
        build_spec(T.T1_1, 3, 256, route="other")


# -- constants ------------------------------------------------------------------------------------------

def test_classical_N3(specs):
    s = specs(T.T1_1, 3)
    for got, cid in ((s.b, "b.classical.N3"), (s.a, "a.classical.N3"), (s.X, "X.classical.N3")):
        assert agreeing_digits(got, const(cid)) >= 100


@pytest.mark.parametrize("N", [3, 5, 7])
def test_classical_scaled_forms(specs, N):
    s = specs(T.T1_1, N)
    r = ctx.sqrt(N)
    assert agreeing_digits(val(s.b) * r, const(f"b.classical.N{N}.scaled")) >= 100
    assert agreeing_digits(val(s.a) * r, const(f"a.classical.N{N}.scaled")) >= 100


def test_classical_N13(specs):
    s = specs(T.T1_1, 13)
    scale = const("prefactor.classical.N13") * ctx.sqrt(13)
    assert agreeing_digits(val(s.b) * scale, const("b.classical.N13.scaled")) >= 40
    assert agreeing_digits(val(s.a) * scale, const("a.classical.N13.scaled")) >= 40
    assert agreeing_digits(s.X, const("X.classical.N13")) >= 40
    assert verify_pi(s, 25).passed


@pytest.mark.parametrize("N", [6, 22])
def test_classical_even_block(specs, N):
    s = specs(T.T1_1, N)
    for got, name in ((s.b, "b"), (s.a, "a"), (s.X, "X")):
        assert agreeing_digits(got, const(f"{name}.classical.N{N}")) >= 60


def test_alternating_N6(specs):
    s = specs(T.T1_2, 6)
    for got, name in ((s.b, "b"), (s.a, "a"), (s.X, "X")):
        assert agreeing_digits(got, const(f"{name}.alt.N6")) >= 40
    assert verify_pi(s, 25).passed


def test_alternating_split_route(specs):
    a = specs(T.T1_2, 6)
    b = specs(T.T1_2, 6, route="split")
    for x, y in ((a.b, b.b), (a.a, b.a), (a.X, b.X)):
        assert agreeing_digits(x, y) >= 100
    with pytest.raises((ValueError, InadmissibleLevel)):
        build_spec(T.T1_2, 7, 256, route="split")


@pytest.mark.parametrize("N", [3, 5, 7, 10, 58])
def test_alternating_constants(specs, N):
    s = specs(T.T1_2, N)
    assert agreeing_digits(s.b, const(f"b.alt.N{N}")) >= 40
    assert agreeing_digits(s.a, const(f"a.alt.N{N}")) >= 40


def test_alternating_N22_scaled(specs):
    s = specs(T.T1_2, 22)
    scale = const("prefactor.alt.N22") * ctx.sqrt(22)
    assert agreeing_digits(val(s.b) * scale, const("b.alt.N22.scaled")) >= 60
    assert agreeing_digits(val(s.a) * scale, const("a.alt.N22.scaled")) >= 60
    assert agreeing_digits(s.X, const("X.alt.N22")) >= 60


def test_printed_alternating_N3_is_flagged(specs):
    s = specs(T.T1_2, 3)
    printed = load_constants()["b.alt.N3.printed"]
    assert printed.misprint_suspect
    assert agreeing_digits(s.b, const("b.alt.N3.printed")) < 2


@pytest.mark.parametrize("theorem,N,key,scale", [
    (T.T5_1, 2, "cubic.N2", "6*sqrt(2)"),
    (T.T5_2, 11, "cubicalt.N11", "sqrt(11)"),
    (T.T5_2, 17, "cubicalt.N17", "12*sqrt(17)"),
])
def test_cubic_scaled(specs, theorem, N, key, scale):
    s = specs(theorem, N)
    k = ctx.mpf(eval(scale, {"sqrt": ctx.sqrt}))  # noqa: S307 - fixed literal
    assert agreeing_digits(val(s.b) * k, const(f"b.{key}.scaled")) >= 40
    assert agreeing_digits(val(s.a) * k, const(f"a.{key}.scaled")) >= 40


def test_cubic_N17_series(specs):
    s = specs(T.T5_2, 17)
    assert agreeing_digits(s.X, -ctx.mpf(1) / 16) >= 40
    assert verify_pi(s, 25).passed


def test_cubic_N5_value(specs):
    s = specs(T.T5_1, 5)
    assert agreeing_digits(s.b, const("b.cubic.N5")) >= 60
    assert load_constants()["b.cubic.N5.printed"].misprint_suspect
    assert val(s.b) < 1 < const("b.cubic.N5.printed")


def test_quartic_N29(specs):
    s = specs(T.T6_1, 29)
    assert agreeing_digits(s.b, ctx.mpf(1820) * ctx.sqrt(29) / 9801) >= 50
    assert agreeing_digits(s.a, ctx.mpf(2206) * ctx.sqrt(29) / 284229) >= 50
    assert agreeing_digits(s.X, 1 / ctx.mpf(99) ** 4) >= 50
    assert agreeing_digits(s.b, const("b.quartic.N29.printed")) < 3
    assert agreeing_digits(s.a, const("a.quartic.N29.printed")) < 3


def test_quartic_N3(specs):
    s = specs(T.T6_1, 3)
    for got, name in ((s.b, "b"), (s.a, "a"), (s.X, "X")):
        assert agreeing_digits(got, const(f"{name}.quartic.N3")) >= 60


# -- summation ------------------------------------------------------------------------------------------

def test_classical_N3_rate():
    s = build_spec(T.T1_1, 3, 256)
    rep = verify_pi(s, 30)
    assert rep.passed and rep.extra["terms_used"] <= 55
    assert rep.extra["digits_per_term"] == pytest.approx(math.log10(4), abs=1e-6)


def test_cubic_N2_terms():
    rep = verify_pi(build_spec(T.T5_1, 2, 256), 25)
    assert rep.passed and rep.extra["terms_used"] <= 90


def test_gosper_terms(specs):
    rep = verify_pi(specs(T.T6_1, 29), 40)
    assert rep.passed and rep.extra["terms_used"] <= 6
    assert rep.extra["pi_digits"] == "3.141592653589793238462643383279502884197"


def test_term_count_postcondition(specs):
    # the term count is close to digits / digits_per_term
    for theorem, N in ((T.T1_1, 3), (T.T1_1, 13), (T.T6_1, 29), (T.T1_2, 58)):
        s = specs(theorem, N)
        _, n = sum_series(s, 60)
        ideal = 60 / digits_per_term(s)
        assert ideal - 1 <= n <= 1.25 * ideal + 6


def test_digits_per_term():
    assert digits_per_term(Fraction(1, 100)) == pytest.approx(2)
    with pytest.raises(DivergentSeries):
        digits_per_term(Fraction(3, 2))


def test_blocked_sum_is_deterministic(specs):
    s = specs(T.T1_1, 13)
    seq, n0 = sum_series(s, 50)
    one, n1 = sum_series(s, 50, block=3)
    many, n2 = sum_series(s, 50, block=3, jobs=2)
    assert one.value == many.value and n1 == n2
    assert agreeing_digits(seq, one) >= 48
    assert n1 >= n0


def test_sum_rejects_bad_targets(specs):
    with pytest.raises(ValueError):
        sum_series(specs(T.T1_1, 3), 0)


def test_failed_verification_reports_fail():
    s = build_spec(T.T1_1, 3, 64)
    rep = verify_pi(s, 40)
    assert not rep.passed
    assert rep.extra["matched_digits"] < 40


# -- catalog --------------------------------------------------------------------------------------------

def test_catalog_contents():
    cat = load_series_catalog()
    assert len(cat) == 31
    assert {e.id for e in cat.values() if e.divergent} == {"cubic.T5_2.N2", "cubic.T5_2.N5"}
    with pytest.raises(KeyError):
        spec_from_id("nope")


@pytest.mark.parametrize("sid", [k for k, e in load_series_catalog().items() if not e.divergent])
def test_catalog_series_verify(sid):
    rep = verify_pi(spec_from_id(sid, 320), 25)
    assert rep.passed, rep.notes


@pytest.mark.parametrize("sid", [k for k, e in load_series_catalog().items() if e.divergent])
def test_catalog_divergent(sid):
    with pytest.raises(DivergentSeries):
        spec_from_id(sid, 128)
