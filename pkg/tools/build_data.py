"""Regenerate the JSON catalogs under src/wronskpi/data from infix sources.

Run from the repository root:  python3 tools/build_data.py
The identity, errata and constant catalogs are written as canonical JSON
trees so the package itself never needs to parse infix text at load time.
"""
from __future__ import annotations

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from wronskpi.expr import (  # noqa: E402
    const_to_json,
    parse_const,
    parse_series,
    series_to_json,
)

DATA = ROOT / "src" / "wronskpi" / "data"

P = "alpha*beta*(1-alpha)*(1-beta)"
PD = "alpha_dagger*beta_dagger*(1-alpha_dagger)*(1-beta_dagger)"


def record(rid, level, lhs, rhs, order, provenance, defs=None, branch=(), notes=""):
    defs = defs or {}
    names = list(defs)
    out = {
        "id": rid,
        "level": level,
        "lhs": series_to_json(parse_series(lhs, refs=names)),
        "rhs": series_to_json(parse_series(rhs, refs=names)),
        "check_order": order,
        "provenance": provenance,
    }
    if defs:
        out["definitions"] = {k: series_to_json(parse_series(v, refs=names))
                              for k, v in defs.items()}
    if branch:
        out["branch"] = [{"expr": series_to_json(parse_series(e, refs=names)), "sign": s}
                         for e, s in branch]
    if notes:
        out["notes"] = notes
    return out


# -- identities ------------------------------------------------------------------------

def hauptmodul_records():
    haupt = "Dhat in terms of a Hauptmodul"
    rows = [
        (3, "Dhat(3)[2]", "2*H(3)", ()),
        (5, "Dhat(5)[2]^2", "4*H(5)^2*(1+4*H(5))", [("Dhat(5)[2]", 1)]),
        (7, "Dhat(7)[2]", "2*H(7)*(1+3*H(7))", ()),
        (11, "Dhat(11)[2]", "2*H(11)*(1+4*H(11)+5*H(11)^2)", ()),
        (23, "Dhat(23)[2]",
         "2*H(23)*(1+5*H(23)+13*H(23)^2+20*H(23)^3+20*H(23)^4+11*H(23)^5)", ()),
    ]
    return [record(f"haupt.D{n}", n, lhs, rhs, 200, f"{haupt}, level {n}", branch=br)
            for n, lhs, rhs, br in rows]


def _table1_defs(x, y=None):
    d = {"X": x}
    if y is not None:
        d["Y"] = y
    return d


Y2 = "(1 - sqrt(alpha*beta) - sqrt((1-alpha)*(1-beta)))/8"

N29_A1 = ("123736544264*X*Y+3702335691264*X^2+97491959398*X+134904595824360*X^4"
          "-44395652981864*X^2*Y^2-432321617914*Y^3-42626822690432*X^5-29875947341036*X^3"
          "-9779263696654*X*Y^2+41705207079730*X^2*Y-8251360353152*X^4*Y+5451791661904*X*Y^3"
          "-176409878302552*X^3*Y")
N29_A0 = ("13753900119256887*X^2*Y^3-4877930791543*X+2618284012843192*X^3*Y"
          "+2305243907550368*X*Y^3-700939761749206*X*Y^2+505394444931798*X^2*Y"
          "+96399537859592*X*Y-4086296883979928*X^2*Y^2-14225126607270367*X^3*Y^2"
          "+4709822410848252*X^5*Y+25397795278722548*X^3*Y^3-16793873356376932*X^4*Y^2"
          "+1068896146837092*X*Y^5-175149710486642*X^3+5709212469240785*X^4*Y"
          "-3216747114074433*X*Y^4-16394572380315964*X^2*Y^4-1065063721978775*X^5"
          "-368335914073064*X^4-19806094957276*X^2+6607217263199*Y^5"
          "-204688220825404*X^6-25269791081528*Y^6")

N13_LHS = ("10*X*D(13)^4+(-116*X-404*X*Y^2+528*X*Y-Y^2+Y^3+1280*X^2)*D(13)^2"
           "-16*X-20*Y^5-16000*X^2*Y-176*X*Y^2+2112*X^2+4*Y^4+37824*X^2*Y^2"
           "-3504*X*Y^3+8240*X*Y^4-23040*X^3+192*X*Y")
N17_NUM = "64*X^3*Y-11*X^2*Y-4*X^2-24*X*Y+31*X*Y^2-32*X^3+Y^2+3*X-8*Y^3"
N17_NUM_PRINTED = "64*X^3*Y-11*X^2*Y-4*X^2-24*X*Y+31*X*Y^2-32*X^3+Y^2+3*X-8*Y^2"
N19_RHS = "(2*X+2*Y+16*Y^3-10*Y^2-18*X*Y)/(Y-1)"
N19_RHS_PRINTED = "(2*X+2*Y+16*Y^3-10*Y-18*X*Y)/(Y-1)"
N17_DEFS = _table1_defs(f"(16*{P})^(1/6)/4", Y2)
N19_DEFS = _table1_defs(f"({P})^(1/4)/4",
                        "(1 - (alpha*beta)^(1/4) - ((1-alpha)*(1-beta))^(1/4))/4")


def table1_records():
    t1 = "D_N polynomial table"
    rows = [
        (3, "D(3)", f"-({P})^(1/4)/2", {}, (), ""),
        (5, "D(5)^2", "4*X^2*(1-4*X)", _table1_defs(f"(2^10*{P})^(1/6)/8"),
         [("D(5)", -1)], ""),
        (7, "D(7)", "-2*X*(1-3*X)", _table1_defs(f"({P})^(1/8)/2"), (), ""),
        (11, "D(11)", "-2*X*(1-4*X+5*X^2)", _table1_defs(f"(2^4*{P})^(1/12)/2"), (), ""),
        (13, N13_LHS, "0", _table1_defs(f"({P})^(1/2)/16", Y2), [("D(13)", -1)], ""),
        (17, "D(17)^2*(1-Y+5*X)", f"4*({N17_NUM})", N17_DEFS, [("D(17)", -1)],
         "printed numerator term -8Y^2 corrected to -8Y^3; printed form kept in errata"),
        (19, "D(19)", N19_RHS, N19_DEFS, (),
         "printed numerator term -10Y corrected to -10Y^2; printed form kept in errata"),
        (23, "D(23)", "-2*X*(1-5*X+13*X^2-20*X^3+20*X^4-11*X^5)",
         _table1_defs(f"(2^16*{P})^(1/24)/2"), (), ""),
        (29, "A2*D(29)^4+A1*D(29)^2+A0", "0",
         {"X": f"({P}/256)^(1/6)", "Y": Y2, "A2": "-585689508612*X^2",
          "A1": N29_A1, "A0": N29_A0}, [("D(29)", -1)], ""),
        (31, "D(31)", "-82*X^2+22*X-1536*Y^3-8*Y-32*X*Y+160*Y^2+896*X*Y^2",
         _table1_defs(f"({P})^(1/8)/2",
                      "(1 - (alpha*beta)^(1/8) - ((1-alpha)*(1-beta))^(1/8))/8"), (), ""),
    ]
    return [record(f"table1.N{n}", n, lhs, rhs, 160, f"{t1}, N={n}", defs, br, notes)
            for n, lhs, rhs, defs, br, notes in rows]


def table2_records():
    t2 = "C_N polynomial table"
    x6 = f"({PD})^(1/6)/3"
    y3 = "(1 - (alpha_dagger*beta_dagger)^(1/3) - ((1-alpha_dagger)*(1-beta_dagger))^(1/3))/9"
    rows = [
        (2, "C(2)", "-6*X", {"X": f"({PD})^(1/3)/9"}),
        (5, "C(5)", "-6*X*(1-5*X)", {"X": x6}),
        (11, "C(11)", "-33*X*Y+3*X-6*Y+33*Y^2", {"X": x6, "Y": y3}),
        (17, "C(17)", "6*(-2*X^2+34*X^2*Y+51*X*Y^2-14*Y^2-9*X*Y+Y+51*Y^3)/(8*Y-1)",
         {"X": x6, "Y": y3}),
    ]
    return [record(f"table2.N{n}", n, lhs, rhs, 200 if n <= 14 else 160, f"{t2}, N={n}", d)
            for n, lhs, rhs, d in rows]


def cubic_haupt_records():
    prov = "cubic Wronskian in terms of a Hauptmodul"
    u = "(1+5*H+18*H^2+37*H^3+54*H^4+45*H^5+27*H^6)"
    v = "(1+9*H+18*H^2+27*H^3+9*H^4)"
    rows = [
        (2, "-6*H/(1+9*H)^2"),
        (5, "-6*H*(1+4*H+9*H^2)/(1+9*H+9*H^2)^2"),
        (11, f"-6*H*{u}/{v}^2"),
    ]
    return [record(f"cubic_haupt.C{n}", n, f"C({n})[2]", rhs, 200, f"{prov}, level {n}",
                   {"H": f"Hdagger({n})"})
            for n, rhs in rows]


def misc_records():
    recs = []
    recs.append(record(
        "dhat2.quartic", 2, "Dhat(2)^4", "alpha^4/(64^2*(1-alpha)^3)", 200,
        "Dhat_2 from theta quotients", branch=[("Dhat(2)", 1)]))
    for n in (3, 5, 7, 11, 23):
        recs.append(record(
            f"evenD.L{n}", 2 * n,
            f"Dhat({2*n})*theta4^2*theta4[{2*n}]^2",
            f"Dhat({n})*theta4^2*theta4[{n}]^2 + {n}*Dhat(2)[{n}]*theta4[{n}]^2*theta4[{2*n}]^2",
            150 if 2 * n + 50 <= 150 else 2 * n + 50,
            f"even level splitting, ell={n}"))
    for n in (3, 5, 7, 11, 13):
        recs.append(record(f"dlq.L{n}", n, f"Dhat({n})", f"D({n}, neg=1)", 100,
                           f"Dhat_ell(q) = D_ell(-q) for odd prime ell, ell={n}"))
    for n in (5, 11, 17):
        recs.append(record(f"chat.L{n}", n, f"Chat({n})", f"C({n}, neg=1)", 100,
                           f"alternating cubic Wronskian at odd level {n}"))
    f_rel = "1 + sqrt(alpha*beta) + sqrt((1-alpha)*(1-beta))"
    recs.append(record("f.L3", 3, "f(3)", f_rel, 150, "f(3) as a modular relation"))
    recs.append(record("f.L7", 7, "f(7)", f"3*({f_rel})", 150,
                       "f(7) as a modular relation"))
    for n in (3, 7):
        recs.append(record(f"f_eta.L{n}", n, f"f({n})", f"f_eta({n})", 150,
                           f"f(ell) via the eta Wronskian, ell={n}"))
    # Russell-type modular equations
    rus = [
        (3, "((1-alpha)*(1-beta))^(1/4) + (alpha*beta)^(1/4)", "degree-3 quartic-root form"),
        (5, f"sqrt(alpha*beta) + sqrt((1-alpha)*(1-beta)) + 2*(16*{P})^(1/6)",
         "degree-5 sextic-root form"),
        (7, "(alpha*beta)^(1/8) + ((1-alpha)*(1-beta))^(1/8)", "degree-7 eighth-root form"),
        (11, f"(alpha*beta)^(1/4) + ((1-alpha)*(1-beta))^(1/4) + 2*(16*{P})^(1/12)",
         "degree-11 fourth-root form"),
        (23, f"(alpha*beta)^(1/8) + ((1-alpha)*(1-beta))^(1/8) + 2^(2/3)*({P})^(1/24)",
         "degree-23 form"),
    ]
    for n, lhs, prov in rus:
        recs.append(record(f"russell.deg{n}", n, lhs, "1", 200 if n <= 14 else 160,
                           f"Russell-type modular equation of degree {n}: {prov}"))
    recs.append(record(
        "mod2eq", 2, "theta3^2/theta3[2]^2", "(1 - sqrt(alpha[2]))/sqrt(1-alpha)", 200,
        "degree-2 theta quotient"))
    recs.append(record(
        "duplication", 2, "theta3^2 + theta4^2", "2*theta3[2]^2", 200,
        "duplication formula",
        notes="printed right side 2*theta3(q^2) lacks the square; verified in squared form"))
    recs.append(record(
        "uv", 6, "(U^2 - 2*U + 1)*W", "U*(1 + 16*W + 64*W^2)", 200,
        "degree-2 modular equation in U and V = 1/W, multiplied through by U*W",
        {"U": "(eta*eta(6)/(eta(2)*eta(3)))^12", "W": "(eta(2)*eta(6)/(eta*eta(3)))^6"},
        notes="V has a pole at q = 0, so the record uses W = 1/V and clears denominators"))
    recs.append(record("gnmod", 1, "-4*alpha/(1-alpha)^2", "xi", 200,
                       "xi as the eta quotient -64 eta^24(tau)/eta^24(tau/2)"))
    for n in (3, 29):
        recs.append(record(
            f"bridge.L{n}", n, f"-Dperp({n})",
            f"sqrt(Z*Zl/(A*A[{n}])) * (sqrt(Z/Zl)*alpha*(1-alpha)/(1+alpha)"
            f" - {n}*sqrt(Zl/Z)*beta*(1-beta)/(1+beta) - 4*D({n}))",
            200 if n <= 14 else 160,
            f"quartic-classical bridge with Z = theta_3^4, ell={n}",
            {"Z": "theta3^4", "Zl": f"theta3[{n}]^4"}))
    recs.append(record("quartic_A", 1, "A", "(1+alpha)*theta3^4", 200,
                       "quartic A(q) = (1 + alpha(q)) Z(q)"))
    recs.append(record("euler_negated", 1, "euler(neg=1)", "euler[2]^3/(euler*euler[4])", 200,
                       "Euler product under q -> -q"))
    # structural identities used throughout
    recs.append(record("product.theta4", 1, "theta4", "eta(1/2)^2/eta", 200,
                       "product representation of theta_4"))
    recs.append(record("product.theta2", 1, "theta2", "2*eta(2)^2/eta", 200,
                       "product representation of theta_2"))
    recs.append(record("product.theta3", 1, "theta3", "eta^5/(eta(2)^2*eta(1/2)^2)", 200,
                       "product representation of theta_3"))
    recs.append(record("jacobi.quartic", 1, "theta3^4", "theta2^4 + theta4^4", 200,
                       "Jacobi quartic identity"))
    recs.append(record("jacobi.eta24", 1, "eta^24",
                       "theta3^24*(theta2^8/theta3^8)*(theta4^8/theta3^8)/256", 200,
                       "Jacobi eta^24 identity"))
    recs.append(record("alpha_negated", 1, "alpha(neg=1)", "-alpha/(1-alpha)", 200,
                       "alpha(-q) = -alpha(q)/(1 - alpha(q))"))
    return recs


def errata_records():
    t1 = "D_N polynomial table"
    return [
        record("errata.table1.N17", 17, "D(17)^2",
               f"4*({N17_NUM_PRINTED})/(1-Y+5*X)", 160, f"{t1}, N=17, as printed", N17_DEFS,
               notes="expected first discrepancy at q^2"),
        record("errata.table1.N19", 19, "D(19)", N19_RHS_PRINTED, 160,
               f"{t1}, N=19, as printed", N19_DEFS,
               notes="expected first discrepancy at q^1"),
    ]


# -- constants ---------------------------------------------------------------------------

def const(cid, text, provenance, misprint=False, note=""):
    out = {"id": cid, "text": text, "expr": const_to_json(parse_const(text)),
           "provenance": provenance}
    if misprint:
        out["misprint_suspect"] = True
    if note:
        out["notes"] = note
    return out


def constants():
    c = []
    add = c.append
    add(const("alpha.classical.N3", "1/2 - sqrt(3)/4", "alpha_3 = 1/2 - sqrt(3)/4"))
    add(const("alpha.classical.N5", "1/2 - sqrt(-2 + sqrt(5))", "degree-5 consequence"))
    add(const("alpha.classical.N7", "1/2 - 3*sqrt(7)/16", "degree-7 consequence"))
    add(const("alpha.classical.N13", "1/2 - 3*sqrt(-18 + 5*sqrt(13))",
              "alpha_13 = 1/2 - 3 sqrt(-18+5 sqrt(13))"))
    add(const("alpha.classical.N6", "35 + 24*sqrt(2) - 20*sqrt(3) - 14*sqrt(6)",
              "N=6 singular modulus"))
    add(const("alpha.classical.N2/3", "35 - 24*sqrt(2) - 20*sqrt(3) + 14*sqrt(6)",
              "N=2/3 singular modulus"))
    add(const("alpha.classical.N58",
              "384238403 + 71351280*sqrt(29) - 50452974*sqrt(58) - 271697580*sqrt(2)",
              "N=58 singular modulus"))
    add(const("alpha.classical.N2/29",
              "384238403 - 71351280*sqrt(29) - 50452974*sqrt(58) + 271697580*sqrt(2)",
              "N=2/29 singular modulus"))
    add(const("xi.N10", "-161 + 72*sqrt(5)", "xi_10 = -161+72 sqrt(5)"))
    add(const("xi.N22", "-(19601 - 13860*sqrt(2))", "xi_22 = -(19601-13860 sqrt(2))"))
    add(const("xi.N10.sum", "103682", "xi_10/xi_{2/5} + xi_{2/5}/xi_10"))
    add(const("D.N3.e^{-pi/sqrt3}", "-1/8", "D_3 at the inverted N=3 nome"))
    add(const("C.N2.e^{-2pi/sqrt6}", "-1/6", "C_2(e^{-2 pi/sqrt 6}) = -1/6"))
    add(const("D.N13.inverted", "(7 - 3*sqrt(13))*sqrt(-18 + 5*sqrt(13))/4",
              "-D_13(e^{-pi/sqrt13}) = (-7+3 sqrt13) sqrt(-18+5 sqrt13)/4, negated"))
    add(const("Dhat3sq.e^{-pi/sqrt6}", "(5/2 + 3*sqrt(3)/2)^2", "N=6 constant block"))
    add(const("D3.e^{-pi sqrt(2/3)}", "5/2 - 3*sqrt(3)/2", "quartic N=3 example"))
    add(const("theta3ratio.N3quartic", "3 - 2*sqrt(3) + 3*sqrt(2) - sqrt(6)",
              "quartic N=3 example: sqrt(Z(e^{-pi sqrt(2/3)})/Z(e^{-pi sqrt6}))"))
    add(const("ZA.N3quartic", "1/sqrt(6) + sqrt(2)/4", "quartic N=3 example"))
    add(const("Dperp.N3.neg", "1/sqrt(6)", "quartic N=3 example: -D_3^perp"))
    add(const("a.quartic.N3", "sqrt(2)/12", "quartic N=3 example, printed label a^perp_6",
              note="label printed with index 6; the series is the N=3 quartic series"))
    add(const("b.quartic.N3", "2*sqrt(2)/3", "quartic N=3 series display"))
    add(const("X.quartic.N3", "1/9", "quartic N=3 series display"))
    add(const("D29.e^{-pi sqrt(2/29)}", "6351*sqrt(29) - 24184*sqrt(2)", "quartic N=29 block"))
    add(const("theta3ratio.N29quartic",
              "37323 + 6930*sqrt(29) - 26390*sqrt(2) - 4900*sqrt(58)", "quartic N=29 block"))
    add(const("ZA.N29quartic", "13*sqrt(29)/198 + sqrt(2)/4", "quartic N=29 block"))
    add(const("Dperp.N29.neg", "4412/9801", "quartic N=29 block"))
    add(const("X.quartic.N29", "1/99^4", "X_29 = 1/99^4"))
    add(const("b.quartic.N29", "1820*sqrt(29)/9801", "Gosper series (1103 + 26390k)",
              note="engine value; the printed b_29 uses 9081"))
    add(const("a.quartic.N29", "2206*sqrt(29)/284229", "Gosper series (1103 + 26390k)",
              note="engine value; the printed a_29 carries sqrt(2)"))
    add(const("b.quartic.N29.printed", "1820*sqrt(29)/9081", "N=29 block as printed",
              misprint=True, note="9081 should be 9801 = 99^2"))
    add(const("a.quartic.N29.printed", "2206*sqrt(2)/284229", "N=29 block as printed",
              misprint=True, note="sqrt(2) should be sqrt(29)"))
    # classical theorem constants
    add(const("b.classical.N3", "sqrt(3)/2", "N=3 series (3k/2 + 1/4)(1/4)^k"))
    add(const("a.classical.N3", "1/(4*sqrt(3))", "N=3 series"))
    add(const("X.classical.N3", "1/4", "N=3 series"))
    add(const("b.classical.N13.scaled", "1", "N=13 series"))
    add(const("a.classical.N13.scaled", "1/4 - 7*sqrt(13)/156", "N=13 series"))
    add(const("X.classical.N13", "649 - 180*sqrt(13)", "N=13 series"))
    add(const("prefactor.classical.N13", "1/(6*sqrt(13)*sqrt(-18 + 5*sqrt(13)))",
              "N=13 series prefactor"))
    add(const("b.alt.N6", "sqrt(3)*(2 - sqrt(2))", "N=6 alternating series"))
    add(const("a.alt.N6", "2*sqrt(3)/3 - 5*sqrt(6)/12", "N=6 alternating series"))
    add(const("X.alt.N6", "-17 + 12*sqrt(2)", "N=6 alternating series"))
    add(const("b.alt.N58", "-6930*sqrt(2) + 1287*sqrt(58)", "N=58 alternating series"))
    add(const("a.alt.N58", "-6351*sqrt(2)/2 + 68403*sqrt(58)/116", "N=58 alternating series"))
    add(const("X.alt.N58", "-192119201 + 35675640*sqrt(29)", "N=58 alternating series"))
    add(const("b.alt.N3", "15 - 8*sqrt(3)", "odd-N alternating series, N=3",
              note="printed as sqrt(15) - 8 sqrt(3), which is negative"))
    add(const("b.alt.N3.printed", "sqrt(15) - 8*sqrt(3)", "odd-N alternating series, as printed",
              misprint=True, note="negative, while (1+alpha_3)/(1-alpha_3) > 1"))
    # cubic
    add(const("alpha.cubic.N2", "(sqrt(2) - 1)/(2*sqrt(2))", "cubic N=2 singular modulus"))
    add(const("b.cubic.N5", "11*sqrt(5)/25", "cubic N=5 constants",
              note="engine value sqrt(1 - X); the printed value uses 23"))
    add(const("b.cubic.N5.printed", "11*sqrt(5)/23", "cubic N=5 constants as printed",
              misprint=True, note="exceeds 1, while 1 - 2 alpha lies in (0, 1); 23 should be 25"))
    add(const("a.cubic.N5", "4*sqrt(5)/75", "cubic N=5 constants"))
    add(const("X.cubic.N5", "4/125", "cubic N=5 constants"))
    add(const("b.cubic.N11", "-5*sqrt(11)/242 + 45*sqrt(33)/242", "cubic N=11 constants"))
    add(const("a.cubic.N11", "-13*sqrt(11)/726 + 3*sqrt(33)/121", "cubic N=11 constants"))
    add(const("X.cubic.N11", "-194/1331 + 225*sqrt(3)/2662", "cubic N=11 constants"))
    add(const("X.cubicalt.N2", "-256 - 153*sqrt(3)", "cubic alternating N=2, divergent"))
    add(const("X.cubicalt.N5", "-4", "X-hat_5 = -4"))
    add(const("alpha.cubicalt.N17", "1/2 - sqrt(17)/8", "cubic N=17 alternating modulus"))
    add(const("X.cubicalt.N17", "-1/16", "(51k+7)(-1/16)^k series"))
    add(const("b.cubicalt.N17.scaled", "51", "(51k+7)(-1/16)^k"))
    add(const("a.cubicalt.N17.scaled", "7", "(51k+7)(-1/16)^k"))
    # odd-N variants of the classical series at even N
    add(const("b.classical.N6", "-69 - 48*sqrt(2) + 40*sqrt(3) + 28*sqrt(6)", "even-N block"))
    add(const("a.classical.N6", "-30 - 21*sqrt(2) + 52/3*sqrt(3) + 73/6*sqrt(6)", "even-N block"))
    add(const("X.classical.N6", "-18872 - 13344*sqrt(2) + 10896*sqrt(3) + 7704*sqrt(6)",
              "even-N block"))
    add(const("b.classical.N10", "-645 + 456*sqrt(2) + 204*sqrt(10) - 288*sqrt(5)", "even-N block"))
    add(const("a.classical.N10", "-290 + 205*sqrt(2) + 917/10*sqrt(10) - 648/5*sqrt(5)",
              "even-N block"))
    add(const("X.classical.N10", "-1662776 + 1175760*sqrt(2) + 525816*sqrt(10) - 743616*sqrt(5)",
              "even-N block"))
    add(const("b.classical.N22", "-78405 - 55440*sqrt(2) + 23640*sqrt(11) + 16716*sqrt(22)",
              "even-N block"))
    add(const("a.classical.N22",
              "-36542 - 25839*sqrt(2) + 121196/11*sqrt(11) + 171397/22*sqrt(22)", "even-N block"))
    add(const("X.classical.N22",
              "-24589219256 - 17387203680*sqrt(2) + 7413928560*sqrt(11) + 5242439160*sqrt(22)",
              "even-N block"))
    # classical series with the left side multiplied by sqrt(N)
    add(const("b.classical.N3.scaled", "3/2", "(3k/2 + 1/4)(1/4)^k"))
    add(const("a.classical.N3.scaled", "1/4", "(3k/2 + 1/4)(1/4)^k"))
    add(const("b.classical.N5.scaled", "2*sqrt(-10 + 5*sqrt(5))", "N=5 series"))
    add(const("a.classical.N5.scaled", "sqrt(-22 + 10*sqrt(5))/2", "N=5 series"))
    add(const("X.classical.N5", "9 - 4*sqrt(5)", "N=5 series"))
    add(const("b.classical.N7.scaled", "21/8", "(21k/8 + 5/16)(1/64)^k"))
    add(const("a.classical.N7.scaled", "5/16", "(21k/8 + 5/16)(1/64)^k"))
    add(const("X.classical.N7", "1/64", "4 alpha_7 (1 - alpha_7) = 1/64"))
    # alternating classical series
    add(const("a.alt.N3", "6 - 10/3*sqrt(3)", "odd-N alternating series, N=3"))
    add(const("X.alt.N3", "-416 + 240*sqrt(3)", "odd-N alternating series, N=3"))
    add(const("b.alt.N7", "255 - 96*sqrt(7)", "odd-N alternating series, N=7"))
    add(const("a.alt.N7", "112 - 296/7*sqrt(7)", "odd-N alternating series, N=7"))
    add(const("X.alt.N7", "-129536 + 48960*sqrt(7)", "odd-N alternating series, N=7"))
    add(const("b.alt.N5", "35 + 16*sqrt(5) - 72*sqrt(sqrt(5) - 2) - 32*sqrt(5*sqrt(5) - 10)",
              "odd-N alternating series, N=5"))
    add(const("a.alt.N5", "15 + 34/5*sqrt(5) - 18*sqrt(sqrt(5) - 2) - 8*sqrt(5*sqrt(5) - 10)"
              " - 1/5*sqrt(1990 + 890*sqrt(5))", "odd-N alternating series, N=5"))
    add(const("X.alt.N5", "-4936 - 2208*sqrt(5) + 10160*sqrt(sqrt(5) - 2)"
              " + 4544*sqrt(5*sqrt(5) - 10)", "odd-N alternating series, N=5"))
    add(const("b.alt.N10", "3*sqrt(10) - 6*sqrt(2)", "N=10 alternating series"))
    add(const("a.alt.N10", "23/20*sqrt(10) - 5/2*sqrt(2)", "N=10 alternating series"))
    add(const("b.alt.N22.scaled", "-33", "N=22 alternating series"))
    add(const("a.alt.N22.scaled", "(17*sqrt(2) - 33)/4", "N=22 alternating series"))
    add(const("X.alt.N22", "-19601 + 13860*sqrt(2)", "N=22 alternating series"))
    add(const("prefactor.alt.N22", "1/(2*(7 - 5*sqrt(2)))", "N=22 alternating series"))
    # N=6 constant block and further singular moduli
    add(const("Dhat2sq.e^{-pi sqrt(3/2)}",
              "-41/16*sqrt(6) + 99/16 - 35/8*sqrt(2) + 29/8*sqrt(3)", "N=6 constant block"))
    add(const("theta4ratio.N6.a", "5 + 8/3*sqrt(3) + 2*sqrt(6) + 10/3*sqrt(2)",
              "N=6 block: theta4^4(e^{-pi sqrt(3/2)}) / theta4^4(e^{-pi/sqrt6})"))
    add(const("theta4ratio.N6.b", "-3 + 2*sqrt(2) + 2*sqrt(3) - sqrt(6)",
              "N=6 block: theta4^4(e^{-pi sqrt(3/2)}) / theta4^4(e^{-pi sqrt6})"))
    add(const("Dhat6.e^{-pi/sqrt6}",
              "sqrt(111/16 + 5*sqrt(2) + 33/8*sqrt(3) + 45/16*sqrt(6))", "N=6 block"))
    add(const("alpha.classical.N10", "323 + 144*sqrt(5) - 102*sqrt(10) - 228*sqrt(2)",
              "N=10 singular modulus"))
    add(const("alpha.classical.N2/5", "323 - 144*sqrt(5) - 102*sqrt(10) + 228*sqrt(2)",
              "N=2/5 singular modulus"))
    add(const("alpha.classical.N22", "39203 + 27720*sqrt(2) - 11820*sqrt(11) - 8358*sqrt(22)",
              "N=22 singular modulus"))
    # cubic series with scaled left sides
    add(const("b.cubic.N2", "sqrt(2)/2", "cubic N=2 constants"))
    add(const("X.cubic.N2", "1/2", "cubic N=2 constants"))
    add(const("b.cubic.N2.scaled", "6", "3 sqrt3/pi = sum A_k (6k+1)/2^k"))
    add(const("a.cubic.N2.scaled", "1", "3 sqrt3/pi = sum A_k (6k+1)/2^k"))
    add(const("b.cubicalt.N11.scaled", "45/22*sqrt(3) + 5/22", "cubic alternating N=11 series"))
    add(const("a.cubicalt.N11.scaled", "13/66 + 3/11*sqrt(3)", "cubic alternating N=11 series"))
    add(const("X.cubicalt.N11", "-194/1331 - 225/2662*sqrt(3)", "cubic alternating N=11 series"))
    return c


SERIES = [
    # (theorem, N, provenance, divergent)
    ("T1_1", 3, "(3k/2 + 1/4)(1/4)^k", False),
    ("T1_1", 5, "(9 - 4 sqrt5)^k series", False),
    ("T1_1", 6, "even-N block", False),
    ("T1_1", 7, "(21k/8 + 5/16)(1/64)^k", False),
    ("T1_1", 10, "even-N block", False),
    ("T1_1", 11, "level-11 Hauptmodul", False),
    ("T1_1", 13, "(649 - 180 sqrt13)^k series", False),
    ("T1_1", 17, "level-17 row of the D_N table", False),
    ("T1_1", 19, "level-19 row of the D_N table", False),
    ("T1_1", 22, "even-N block", False),
    ("T1_1", 23, "level-23 Hauptmodul", False),
    ("T1_1", 29, "level-29 row of the D_N table", False),
    ("T1_1", 31, "level-31 row of the D_N table", False),
    ("T1_2", 3, "odd-N alternating series", False),
    ("T1_2", 5, "odd-N alternating series", False),
    ("T1_2", 6, "(-17 + 12 sqrt2)^k series", False),
    ("T1_2", 7, "odd-N alternating series", False),
    ("T1_2", 10, "(-161 + 72 sqrt5)^k series", False),
    ("T1_2", 14, "N=14 alternating series", False),
    ("T1_2", 22, "(-19601 + 13860 sqrt2)^k series", False),
    ("T1_2", 46, "N=46 alternating series", False),
    ("T1_2", 58, "N=58 alternating series", False),
    ("T5_1", 2, "3 sqrt3/pi = sum A_k (6k+1)/2^k", False),
    ("T5_1", 5, "cubic N=5 constants", False),
    ("T5_1", 11, "cubic N=11 constants", False),
    ("T5_2", 2, "X = -256 - 153 sqrt3", True),
    ("T5_2", 5, "X = -4", True),
    ("T5_2", 11, "cubic alternating N=11 series", False),
    ("T5_2", 17, "(51k+7)(-1/16)^k series", False),
    ("T6_1", 3, "(2 sqrt2 k/3 + sqrt2/12)(1/9)^k", False),
    ("T6_1", 29, "2 sqrt2 sum A_k (1103 + 26390k)(1/99^2)^(2k+1)", False),
]

_FAMILY = {"T1_1": "classical", "T1_2": "classical", "T5_1": "cubic", "T5_2": "cubic",
           "T6_1": "quartic"}


def series_catalog():
    out = []
    for th, n, prov, div in SERIES:
        e = {"id": f"{_FAMILY[th]}.{th}.N{n}", "theorem": th, "N": n, "provenance": prov}
        if div:
            e["divergent"] = True
        out.append(e)
    return out


def main():
    DATA.mkdir(parents=True, exist_ok=True)
    idents = (hauptmodul_records() + table1_records() + table2_records()
              + cubic_haupt_records() + misc_records())
    ids = [r["id"] for r in idents]
    assert len(ids) == len(set(ids)), "duplicate ids"
    dump = lambda obj, name: (DATA / name).write_text(
        json.dumps(obj, indent=1, sort_keys=False) + "\n", encoding="utf-8")
    dump(idents, "identities.json")
    dump(errata_records(), "errata.json")
    dump(constants(), "constants.json")
    dump(series_catalog(), "series.json")
    print(f"{len(idents)} identities, {len(errata_records())} errata, {len(constants())} constants, "
          f"{len(series_catalog())} series")


if __name__ == "__main__":
    main()
