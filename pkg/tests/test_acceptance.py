"""One test per acceptance criterion.

Each test prints a single ``criterion N: PASS|FAIL`` line (also collected
in the terminal summary) and then asserts.  Tolerances are pinned here.
"""
import copy
import json
import math
import time
from fractions import Fraction as F
from importlib import resources

from hypothesis import given
from hypothesis import strategies as st

from conftest import ACCEPTANCE
from wronskpi.modular import alpha_series, cubic_a_series, quartic_A_series, theta_series
from wronskpi.piseries import Theorem, build_spec, coefficient, verify_pi
from wronskpi.precision import (
    EvalPoint,
    Family,
    agreeing_digits,
    eta_value,
    eval_const_expr,
    make_context,
    nome,
    singular_modulus,
    theta_value,
    wronskian_value,
    xi_value,
)
from wronskpi.qseries import QSeries
from wronskpi.registry import check_all, default_registry, load_registry
from wronskpi.errors import DivergentSeries

CONST_DIGITS = 50
CTX = make_context(800)


def record(n, ok, detail):
    line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE[n] = line
    print(line)
    assert ok, line


def raw_registry():
    with (resources.files("wronskpi") / "data" / "identities.json").open() as fh:
        return json.load(fh)


def failures(reps):
    return [f"{r.id}@{r.first_discrepant_exponent}" for r in reps if not r.passed]


def C(text):
    return CTX.mpf(eval_const_expr(text, 700).value)


# 1 ---------------------------------------------------------------------------------------------

def test_criterion_01_hauptmodul_block():
    recs = [r for r in default_registry() if r.id.startswith("haupt.")]
    t0 = time.perf_counter()
    reps = check_all(recs, order_override=200)
    dt = time.perf_counter() - t0
    bad = failures(reps)
    ok = len(reps) == 5 and not bad and dt < 300
    record(1, ok, f"{len(reps) - len(bad)}/5 Hauptmodul identities at q^200 in {dt * 1000:.0f} ms {bad}")


# 2 ---------------------------------------------------------------------------------------------

def _perturb_largest(node):
    best = None

    def walk(x):
        nonlocal best
        if isinstance(x, dict):
            if x.get("kind") == "rational":
                v = abs(F(x["value"]))
                if best is None or v > abs(F(best["value"])):
                    best = x
            for v in x.values():
                walk(v)
        elif isinstance(x, list):
            for v in x:
                walk(v)
    walk(node)
    best["value"] = str(F(best["value"]) + 1)


def test_criterion_02_table_of_identities():
    recs = [r for r in default_registry() if r.id.startswith("table1.")]
    reps = check_all(recs, order_override=160)
    bad = failures(reps)
    levels = sorted(r.level for r in recs)
    # a one-unit slip in the largest N=29 coefficient must be pinpointed
    raw = copy.deepcopy(next(r for r in raw_registry() if r["id"] == "table1.N29"))
    _perturb_largest(raw["definitions"])
    slip = check_all(load_registry([raw]), order_override=160)[0]
    pin = slip.first_discrepant_exponent
    ok = (levels == [3, 5, 7, 11, 13, 17, 19, 23, 29, 31] and not bad and not slip.passed
          and pin is not None)
    record(2, ok, f"{len(reps) - len(bad)}/10 table identities at q^160 {bad}; "
                  f"perturbed N=29 fails first at q^{pin}")


# 3 ---------------------------------------------------------------------------------------------

GROUP3 = ("table2.", "cubic_haupt.", "bridge.", "quartic_A", "evenD.", "dhat2.", "f.", "f_eta.",
          "gnmod", "russell.", "mod2eq", "uv", "dlq.", "chat.", "duplication", "alpha_negated")


def test_criterion_03_cubic_quartic_and_modular_equations():
    recs = [r for r in default_registry() if r.id.startswith(GROUP3)]
    reps = check_all(recs, jobs=2)
    bad = failures(reps)
    need = {"table2.N2", "table2.N5", "table2.N11", "table2.N17", "cubic_haupt.C2",
            "cubic_haupt.C5", "cubic_haupt.C11", "bridge.L3", "bridge.L29", "evenD.L3",
            "evenD.L5", "evenD.L7", "evenD.L11", "evenD.L23", "dhat2.quartic", "f.L3", "f.L7"}
    missing = need - {r.id for r in recs}
    ok = not bad and not missing
    record(3, ok, f"{len(reps) - len(bad)}/{len(reps)} identities at configured orders "
                  f"{bad} {sorted(missing)}")


# 4 ---------------------------------------------------------------------------------------------

def _hyper(fam, x, K, order):
    total = QSeries.zero(order) + 1
    power = QSeries.zero(order) + 1
    for k in range(1, K + 1):
        power = power * x
        total = total + coefficient(fam, k) * power
    return total


def test_criterion_04_hypergeometric_expansions():
    K = 40
    n = K + 1
    cases = {
        "classical": (alpha_series("classical", 1, n), theta_series(3, 1, n) ** 4),
        "cubic": (alpha_series("cubic", 1, n), cubic_a_series(1, n) ** 2),
        "quartic": (alpha_series("quartic", 1, n), quartic_A_series(1, n)),
    }
    bad = []
    for fam, (al, lhs) in cases.items():
        x = 4 * al * (1 - al)
        if not (lhs - _hyper(fam, x, K, n)).truncate(n).is_zero():
            bad.append(fam)
    record(4, not bad, f"3 expansions through k={K} {bad}")


# 5 ---------------------------------------------------------------------------------------------

def test_criterion_05_numeric_constants():
    P = EvalPoint
    cl = Family.CLASSICAL
    checks = {
        "alpha3": (singular_modulus("classical", P(cl, 3), 512), C("1/2 - sqrt(3)/4")),
        "alpha7": (singular_modulus("classical", P(cl, 7), 512), C("1/2 - 3*sqrt(7)/16")),
        "alpha13": (singular_modulus("classical", P(cl, 13), 512),
                    C("1/2 - 3*sqrt(-18 + 5*sqrt(13))")),
        "alpha6": (singular_modulus("classical", P(cl, 6), 512),
                   C("35 + 24*sqrt(2) - 20*sqrt(3) - 14*sqrt(6)")),
        "xi10": (xi_value(10, 512), C("-161 + 72*sqrt(5)")),
        "xi22": (xi_value(22, 512), C("-(19601 - 13860*sqrt(2))")),
        "D3": (wronskian_value("D", 3, P(cl, 3, True), 512), C("-1/8")),
        "C2": (wronskian_value("C", 2, P(Family.CUBIC, 2, True), 512), C("-1/6")),
    }
    got = {k: agreeing_digits(a, b) for k, (a, b) in checks.items()}
    low = {k: v for k, v in got.items() if v < CONST_DIGITS}
    record(5, not low, f"8 constants at 512 bits, min {min(got.values())} digits {low}")


# 6 ---------------------------------------------------------------------------------------------

def test_criterion_06_classical_pi():
    r3 = verify_pi(build_spec(Theorem.T1_1, 3, 256), 30)
    s13 = build_spec(Theorem.T1_1, 13, 512)
    scale = C("1/(6*sqrt(13)*sqrt(-18 + 5*sqrt(13)))") * CTX.sqrt(13)
    k13 = min(agreeing_digits(CTX.mpf(s13.b.value) * scale, C("1")),
              agreeing_digits(CTX.mpf(s13.a.value) * scale, C("1/4 - 7*sqrt(13)/156")),
              agreeing_digits(s13.X, C("649 - 180*sqrt(13)")))
    r13 = verify_pi(s13, 25)
    terms = r3.extra["terms_used"]
    ok = r3.passed and terms <= 55 and k13 >= 40 and r13.passed
    record(6, ok, f"N=3: {r3.extra['matched_digits']} digits in {terms} terms "
                  f"({r3.extra['digits_per_term']:.3f}/term); N=13 constants {k13} digits, "
                  f"pi {r13.extra['matched_digits']} digits")


# 7 ---------------------------------------------------------------------------------------------

def test_criterion_07_alternating_pi():
    s6 = build_spec(Theorem.T1_2, 6, 512)
    k6 = min(agreeing_digits(s6.b, C("sqrt(3)*(2 - sqrt(2))")),
             agreeing_digits(s6.a, C("2*sqrt(3)/3 - 5*sqrt(6)/12")),
             agreeing_digits(s6.X, C("-17 + 12*sqrt(2)")))
    r6 = verify_pi(s6, 25)
    s58 = build_spec(Theorem.T1_2, 58, 512)
    k58 = min(agreeing_digits(s58.b, C("-6930*sqrt(2) + 1287*sqrt(58)")),
              agreeing_digits(s58.a, C("-6351*sqrt(2)/2 + 68403*sqrt(58)/116")),
              agreeing_digits(s58.X, C("-192119201 + 35675640*sqrt(29)")))
    ok = k6 >= 40 and r6.passed and k58 >= 40
    record(7, ok, f"N=6 constants {k6} digits, pi {r6.extra['matched_digits']} digits; "
                  f"N=58 constants {k58} digits")


# 8 ---------------------------------------------------------------------------------------------

def test_criterion_08_cubic_pi():
    r2 = verify_pi(build_spec(Theorem.T5_1, 2, 256), 25)
    s17 = build_spec(Theorem.T5_2, 17, 512)
    scale = 12 * CTX.sqrt(17)
    k17 = min(agreeing_digits(CTX.mpf(s17.b.value) * scale, C("51")),
              agreeing_digits(CTX.mpf(s17.a.value) * scale, C("7")),
              agreeing_digits(s17.X, C("-1/16")))
    r17 = verify_pi(s17, 25)
    rejected = []
    for N in (2, 5):
        try:
            build_spec(Theorem.T5_2, N, 256)
        except DivergentSeries:
            rejected.append(N)
    ok = r2.passed and r2.extra["terms_used"] <= 90 and k17 >= 40 and r17.passed \
        and rejected == [2, 5]
    record(8, ok, f"N=2: {r2.extra['matched_digits']} digits in {r2.extra['terms_used']} "
                  f"terms; N=17 constants {k17} digits, pi {r17.extra['matched_digits']} "
                  f"digits; divergent N={rejected}")


# 9 ---------------------------------------------------------------------------------------------

def test_criterion_09_gosper():
    from wronskpi.precision import load_constants

    s = build_spec(Theorem.T6_1, 29, 512)
    rep = verify_pi(s, 40)
    kb = agreeing_digits(s.b, C("1820*sqrt(29)/9801"))
    ka = agreeing_digits(s.a, C("2206*sqrt(29)/284229"))
    table = load_constants()
    flagged = [table[k] for k in ("b.quartic.N29.printed", "a.quartic.N29.printed")]
    documented = all(e.misprint_suspect and e.notes for e in flagged)
    printed_off = max(agreeing_digits(s.b, C(flagged[0].text)),
                      agreeing_digits(s.a, C(flagged[1].text))) < 3
    ok = rep.passed and rep.extra["terms_used"] <= 6 and kb >= 50 and ka >= 50 \
        and documented and printed_off
    record(9, ok, f"{rep.extra['matched_digits']} digits in {rep.extra['terms_used']} terms; "
                  f"b {kb} digits, a {ka} digits; printed forms flagged: "
                  f"{'; '.join(e.notes for e in flagged)}")


# 10 --------------------------------------------------------------------------------------------

series = st.lists(st.integers(-30, 30), min_size=1, max_size=12).map(
    lambda cs: QSeries({k: c for k, c in enumerate(cs)}, order=12))
units = st.lists(st.integers(-30, 30), min_size=1, max_size=12).map(
    lambda cs: QSeries({k: c for k, c in enumerate([1] + cs)}, order=12))


def _properties():
    failed = []
    ran = []

    def prop(name, fn):
        ran.append(name)
        try:
            fn()
        except Exception as exc:  # noqa: BLE001 - collected into the report line
            failed.append(f"{name}: {type(exc).__name__}")

    @given(series, series, series)
    def ring(a, b, c):
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a and a * b == b * a

    @given(series, series)
    def leibniz(a, b):
        assert (a * b).qderiv() == a.qderiv() * b + a * b.qderiv()

    @given(units, st.integers(2, 5))
    def roots(u, n):
        assert (u ** n).nth_root(n) == u

    prop("ring laws", ring)
    prop("Leibniz", leibniz)
    prop("root inverse", roots)

    def jacobi():
        t2, t3, t4 = (theta_series(k, 1, 200) for k in (2, 3, 4))
        assert (t3 ** 4 - t2 ** 4 - t4 ** 4).truncate(200).is_zero()
        from wronskpi.modular import eta_series
        rhs = F(1, 256) * t3 ** 24 * (t2 ** 8 / t3 ** 8) * (t4 ** 8 / t3 ** 8)
        assert (eta_series(1, 202) ** 24).truncate(200).agrees_with(rhs.truncate(200))
    prop("Jacobi", jacobi)

    def transforms():
        cl = Family.CLASSICAL
        for N in (2, 3, 5):
            qi, qd = nome(EvalPoint(cl, N, True), 512), nome(EvalPoint(cl, N), 512)
            a = CTX.mpf(theta_value(3, qi, 512).value) ** 2
            b = CTX.mpf(theta_value(3, qd, 512).value) ** 2
            assert agreeing_digits(a, CTX.sqrt(N) * b) >= 60
            e = CTX.mpf(eta_value(1, qi, 512).value)
            f = CTX.mpf(eta_value(1, qd, 512).value)
            assert agreeing_digits(e, CTX.root(N, 4) * f) >= 60
    prop("transformations", transforms)

    def complementarity():
        cl = Family.CLASSICAL
        for N in (3, 5, 7):
            a = CTX.mpf(singular_modulus("classical", EvalPoint(cl, F(1, N)), 512).value)
            b = CTX.mpf(singular_modulus("classical", EvalPoint(cl, N), 512).value)
            assert agreeing_digits(a, 1 - b) >= 60
    prop("complementarity", complementarity)

    def reciprocity():
        for n in (3, 5, 11):
            a = CTX.mpf(xi_value(2 * n, 512).value) * CTX.mpf(xi_value(F(2, n), 512).value)
            assert agreeing_digits(a, 1) >= 60
    prop("xi reciprocity", reciprocity)

    def mutation():
        data = raw_registry()
        target = next(r for r in data if r["id"] == "haupt.D7")
        inner = target["rhs"]["args"][2]["args"][1]["args"][0]
        assert inner == {"kind": "rational", "value": "3"}
        inner["value"] = "4"
        reps = check_all(load_registry(data), jobs=2)
        assert [r.id for r in reps if not r.passed] == ["haupt.D7"]
    prop("mutation", mutation)
    return ran, failed


def test_criterion_10_property_suites():
    ran, failed = _properties()
    record(10, not failed, f"{len(ran) - len(failed)}/{len(ran)} property groups {failed}")
