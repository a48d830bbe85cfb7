import copy
import io
import json
from fractions import Fraction
from importlib import resources

import pytest

from wronskpi.errors import DuplicateId, RootObstruction, SchemaError, UnknownAtom
from wronskpi.expr import parse_series, series_to_json
from wronskpi.registry import (
    IdentityRecord,
    Status,
    check_all,
    check_identity,
    check_identity_strict,
    default_registry,
    errata_registry,
    evaluate_side,
    load_registry,
    record_to_json,
)


def raw_registry():
    with (resources.files("wronskpi") / "data" / "identities.json").open() as fh:
        return json.load(fh)


def rec(rid, lhs, rhs, level=3, order=100, **kw):
    out = {"id": rid, "level": level, "lhs": series_to_json(parse_series(lhs)),
           "rhs": series_to_json(parse_series(rhs)), "check_order": order,
           "provenance": "test"}
    out.update(kw)
    return out


@pytest.fixture(scope="module")
def shipped():
    return default_registry()


@pytest.fixture(scope="module")
def shipped_reports(shipped):
    return {r.id: r for r in check_all(shipped)}


# -- loading -----------------------------------------------------------------------------------------

def test_shipped_registry_loads(shipped):
    ids = [r.id for r in shipped]
    assert len(ids) >= 30 and len(ids) == len(set(ids))
    assert all(r.check_order >= 2 * r.level + 50 for r in shipped)


def test_load_sources(tmp_path):
    data = [rec("a", "theta3^2", "theta3*theta3")]
    text = json.dumps(data)
    p = tmp_path / "r.json"
    p.write_text(text)
    for src in (data, text, p, str(p), io.StringIO(text)):
        (r,) = load_registry(src)
        assert r.id == "a"
    assert load_registry("") == []
    assert load_registry([]) == []


def test_unknown_atom():
    bad = rec("a", "theta3", "theta3")
    bad["rhs"] = {"kind": "atom", "name": "gamma"}
    with pytest.raises(UnknownAtom):
        load_registry([bad])


def test_duplicate_id():
    with pytest.raises(DuplicateId):
        load_registry([rec("a", "theta3", "theta3"), rec("a", "theta4", "theta4")])


@pytest.mark.parametrize("mutate", [
    lambda r: r.update(check_order=10),
    lambda r: r.update(extra_key=1),
    lambda r: r.update(lhs={"kind": "frobnicate"}),
    lambda r: r.update(lhs={"kind": "pow", "base": {"kind": "atom", "name": "theta3"},
                            "exp": [1, 5]}),
    lambda r: r.pop("provenance"),
])
def test_schema_errors(mutate):
    r = rec("a", "theta3", "theta3")
    mutate(r)
    with pytest.raises(SchemaError):
        load_registry([r])


def test_record_roundtrip(shipped):
    again = load_registry([record_to_json(r) for r in shipped])
    assert again == shipped


# -- checking ---------------------------------------------------------------------------------------

def test_full_registry_passes(shipped_reports):
    bad = {k: (r.status, r.notes) for k, r in shipped_reports.items() if not r.passed}
    assert not bad


@pytest.mark.parametrize("rid", [r["id"] for r in raw_registry()])
def test_each_record_passes(rid, shipped_reports):
    r = shipped_reports[rid]
    assert r.status is Status.PASS, r.notes
    assert r.first_discrepant_exponent is None


def test_named_examples(shipped):
    by_id = {r.id: r for r in shipped}
    d3 = check_identity(by_id["haupt.D3"])
    assert d3.passed and d3.checked_order == 200
    lhs = evaluate_side(by_id["haupt.D3"], "lhs", 10)
    assert lhs.valuation == 2 and lhs[2] == 2
    n3 = by_id["table1.N3"]
    assert check_identity(n3).passed
    d3 = evaluate_side(n3, "lhs", 60)
    assert d3.valuation == 1 and d3[1] == -2
    # the power-cleared consequence holds as well
    (p,) = load_registry([rec("p", "alpha*beta*(1-alpha)*(1-beta)", "16*D(3)^4")])
    lhs, rhs = evaluate_side(p, "lhs", 60), evaluate_side(p, "rhs", 60)
    assert (lhs - rhs).is_zero() and (16 * d3 ** 4 - lhs).is_zero()
    n13 = check_identity(by_id["table1.N13"], order_override=160)
    assert n13.passed and n13.checked_order == 160


def test_report_ordering_and_jobs(shipped):
    seq = check_all(shipped)
    par = check_all(shipped, jobs=2)
    assert [r.id for r in seq] == sorted(r.id for r in shipped)
    assert [r.to_dict() for r in seq] == [r.to_dict() for r in par]
    assert check_all([]) == []


def test_errata_fail_with_pinpointed_coefficient():
    reps = {r.id: r for r in check_all(errata_registry())}
    n17 = reps["errata.table1.N17"]
    assert n17.status is Status.FAIL
    assert n17.first_discrepant_exponent == 2
    assert (n17.lhs_coefficient, n17.rhs_coefficient) == (4, -28)
    n19 = reps["errata.table1.N19"]
    assert n19.status is Status.FAIL
    assert n19.first_discrepant_exponent == 1
    assert (n19.lhs_coefficient, n19.rhs_coefficient) == (-2, 8)


def test_mutation_fails_exactly_one_record():
    data = raw_registry()
    mutated = copy.deepcopy(data)
    target = next(r for r in mutated if r["id"] == "haupt.D7")
    inner = target["rhs"]["args"][2]["args"][1]["args"][0]
    assert inner == {"kind": "rational", "value": "3"}
    inner["value"] = "4"
    reps = check_all(load_registry(mutated))
    failed = [r for r in reps if not r.passed]
    assert [r.id for r in failed] == ["haupt.D7"]
    assert failed[0].status is Status.FAIL
    assert failed[0].first_discrepant_exponent is not None


def test_branch_condition_can_fail():
    good = rec("b", "theta3^2", "theta3^2", branch=[{"expr": series_to_json(parse_series("D(3)")),
                                                     "sign": -1}])
    bad = copy.deepcopy(good)
    bad["branch"][0]["sign"] = 1
    assert check_identity(load_registry([good])[0]).passed
    r = check_identity(load_registry([bad])[0])
    assert r.status is Status.FAIL and "branch" in r.notes


def test_power_clearing_of_irrational_root():
    # sqrt(2 theta3^2) has leading coefficient sqrt 2; clearing gives 2 theta3^2 = 2 theta3^2
    (r,) = load_registry([rec("c", "sqrt(2*theta3^2)", "sqrt(2)*theta3")])
    assert check_identity(r).passed
    (r,) = load_registry([rec("c", "sqrt(2*theta3^2)", "-sqrt(2)*theta3")])
    assert check_identity(r).status is Status.FAIL


def test_root_obstruction_is_reported():
    (r,) = load_registry([rec("o", "sqrt(q) + sqrt(2*q)", "theta3")])
    rep = check_identity(r)
    assert rep.status is Status.ERROR
    with pytest.raises(RootObstruction):
        check_identity_strict(r)


def test_definitions_and_notes(shipped):
    by_id = {r.id: r for r in shipped}
    assert by_id["table1.N13"].definitions
    assert "square" in by_id["duplication"].notes
    assert not any(r.id.startswith("table1.N37") for r in shipped)


def test_report_dict_fields():
    rep = check_identity(IdentityRecord("x", 1, parse_series("theta3"), parse_series("theta4"),
                                        60, "test"))
    d = rep.to_dict()
    assert d["status"] == "Fail" and d["first_discrepant_exponent"] == "1"
    assert (d["lhs_coefficient"], d["rhs_coefficient"]) == ("2", "-2")
    assert Fraction(d["first_discrepant_exponent"]) == 1


def test_irrational_roots_merge_across_factors():
    # sqrt(2 theta3) * sqrt(2 theta3) = 2 theta3 although each factor alone is irrational
    (r,) = load_registry([rec("m", "sqrt(2*theta3)*sqrt(2*theta3)", "2*theta3")])
    rep = check_identity(r)
    assert rep.passed and "power-cleared" not in rep.notes
    (r,) = load_registry([rec("m", "(sqrt(2*theta3))^2", "2*theta3")])
    assert check_identity(r).passed
