"""Declarative identity catalog and exact q-series verification.

A record equates two expression trees over series atoms.  Checking expands
both sides to the record's order and compares coefficients exactly.

Fractional powers ``E^(p/r)`` are taken as series roots with the positive
leading coefficient.  When that root is not rational (for example a factor
``2^(2/3)``), the checker first merges the fractional-power factors of a
product into a single root, and if that still fails it clears the root
altogether: an identity ``R = c * E^(1/L)`` is checked as ``R^L = c^L * E``
together with the branch condition that ``R/c`` has a positive leading
coefficient.
"""
from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from importlib import resources
from math import lcm
from typing import Iterable, Mapping, Sequence

from wronskpi.errors import (
    DuplicateId,
    IrrationalRootLeadingCoefficient,
    NonLatticeRoot,
    RootObstruction,
    SchemaError,
    UnknownAtom,
    WronskPiError,
)
from wronskpi.expr import (
    Add,
    Atom,
    Mul,
    Neg,
    Pow,
    Rat,
    Ref,
    format_series,
    series_atoms,
    series_from_json,
    series_refs,
    series_to_json,
)
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
from wronskpi.qseries import LATTICE, QSeries, euler_coefficients, rational_root
from wronskpi.wronskian import f_series_eta, family_series

__all__ = [
    "Status",
    "BranchCondition",
    "IdentityRecord",
    "VerificationReport",
    "load_registry",
    "default_registry",
    "errata_registry",
    "evaluate_side",
    "check_identity",
    "check_all",
    "record_to_json",
]

RECORD_KEYS = {"id", "level", "lhs", "rhs", "check_order", "provenance",
               "definitions", "branch", "notes"}


class Status(str, Enum):
    PASS = "Pass"
    FAIL = "Fail"
    ERROR = "Error"


@dataclass(frozen=True)
class BranchCondition:
    """The leading coefficient of ``expr`` must have sign ``sign`` (+1 or -1)."""

    expr: object
    sign: int


@dataclass(frozen=True)
class IdentityRecord:
    id: str
    level: int
    lhs: object
    rhs: object
    check_order: int
    provenance: str
    definitions: tuple = ()
    branch: tuple = ()
    notes: str = ""


@dataclass
class VerificationReport:
    id: str
    status: Status
    checked_order: int | None = None
    first_discrepant_exponent: Fraction | None = None
    lhs_coefficient: Fraction | None = None
    rhs_coefficient: Fraction | None = None
    notes: str = ""
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS

    def to_dict(self) -> dict:
        def s(x):
            return None if x is None else str(x)
        out = {
            "id": self.id,
            "status": self.status.value,
            "checked_order": self.checked_order,
            "first_discrepant_exponent": s(self.first_discrepant_exponent),
            "lhs_coefficient": s(self.lhs_coefficient),
            "rhs_coefficient": s(self.rhs_coefficient),
            "notes": self.notes,
        }
        out.update(self.extra)
        return out


# -- loading ----------------------------------------------------------------------------

def _record_from_json(obj, index: int) -> IdentityRecord:
    if not isinstance(obj, Mapping):
        raise SchemaError(f"record #{index} is not an object")
    unknown = set(obj) - RECORD_KEYS
    if unknown:
        raise SchemaError(f"record #{index}: unknown field(s) {sorted(unknown)}")
    for key in ("id", "level", "lhs", "rhs", "check_order", "provenance"):
        if key not in obj:
            raise SchemaError(f"record #{index}: missing field {key!r}")
    rid = obj["id"]
    if not isinstance(rid, str) or not rid:
        raise SchemaError(f"record #{index}: id must be a non-empty string")
    level, order = obj["level"], obj["check_order"]
    for name, v in (("level", level), ("check_order", order)):
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            raise SchemaError(f"{rid}: {name} must be a positive integer")
    if order < 2 * level + 50:
        raise SchemaError(f"{rid}: check_order {order} is below 2*level + 50")
    if not isinstance(obj["provenance"], str) or not obj["provenance"].strip():
        raise SchemaError(f"{rid}: provenance must be a non-empty string")
    defs_raw = obj.get("definitions", {})
    if not isinstance(defs_raw, Mapping):
        raise SchemaError(f"{rid}: definitions must be an object")
    defs = tuple((str(k), series_from_json(v)) for k, v in defs_raw.items())
    branch_raw = obj.get("branch", [])
    if not isinstance(branch_raw, list):
        raise SchemaError(f"{rid}: branch must be a list")
    branch = []
    for b in branch_raw:
        if not isinstance(b, Mapping) or b.get("sign") not in (1, -1) or "expr" not in b:
            raise SchemaError(f"{rid}: branch entries need 'expr' and 'sign' in (1, -1)")
        branch.append(BranchCondition(series_from_json(b["expr"]), b["sign"]))
    rec = IdentityRecord(rid, level, series_from_json(obj["lhs"]), series_from_json(obj["rhs"]),
                         order, obj["provenance"], defs, tuple(branch), str(obj.get("notes", "")))
    _check_refs(rec)
    return rec


def _check_refs(rec: IdentityRecord) -> None:
    known: set[str] = set()
    for name, node in rec.definitions:
        for r in series_refs(node):
            if r not in known:
                raise UnknownAtom(f"{rec.id}: definition {name} uses undefined {r!r}")
        known.add(name)
    for node in (rec.lhs, rec.rhs, *(b.expr for b in rec.branch)):
        for r in series_refs(node):
            if r not in known:
                raise UnknownAtom(f"{rec.id}: undefined name {r!r}")


def load_registry(source) -> list[IdentityRecord]:
    """Parse records from a path, a file object, JSON text or decoded JSON.

    Raises :class:`SchemaError`, :class:`UnknownAtom` or :class:`DuplicateId`.
    """
    if isinstance(source, (list, tuple)):
        data = source
    else:
        if isinstance(source, os.PathLike) or (isinstance(source, str) and os.path.exists(source)):
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
        elif hasattr(source, "read"):
            text = source.read()
        else:
            text = str(source)
        if not text.strip():
            return []
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"registry is not valid JSON: {exc}") from None
    if not isinstance(data, list):
        raise SchemaError("registry top level must be a list of records")
    out, seen = [], set()
    for i, obj in enumerate(data):
        rec = _record_from_json(obj, i)
        if rec.id in seen:
            raise DuplicateId(rec.id)
        seen.add(rec.id)
        out.append(rec)
    return out


def _data_file(name: str):
    return resources.files("wronskpi") / "data" / name


def default_registry() -> list[IdentityRecord]:
    """The shipped identity catalog."""
    with _data_file("identities.json").open(encoding="utf-8") as fh:
        return load_registry(fh)


def errata_registry() -> list[IdentityRecord]:
    """Identities exactly as printed where the printed form is known to fail."""
    with _data_file("errata.json").open(encoding="utf-8") as fh:
        return load_registry(fh)


def record_to_json(rec: IdentityRecord) -> dict:
    out = {"id": rec.id, "level": rec.level, "lhs": series_to_json(rec.lhs),
           "rhs": series_to_json(rec.rhs), "check_order": rec.check_order,
           "provenance": rec.provenance}
    if rec.definitions:
        out["definitions"] = {k: series_to_json(v) for k, v in rec.definitions}
    if rec.branch:
        out["branch"] = [{"expr": series_to_json(b.expr), "sign": b.sign} for b in rec.branch]
    if rec.notes:
        out["notes"] = rec.notes
    return out


# -- evaluation ---------------------------------------------------------------------------

_ALPHA_ATOMS = {"alpha": ("classical", False), "beta": ("classical", True),
                "alpha_dagger": ("cubic", False), "beta_dagger": ("cubic", True),
                "alpha_perp": ("quartic", False), "beta_perp": ("quartic", True)}


def _base_atom(atom: Atom, level: int, order: Fraction) -> QSeries:
    """The atom's function in its own variable (before negation and scaling)."""
    name = atom.name
    if name in _ALPHA_ATOMS:
        variant, shifted = _ALPHA_ATOMS[name]
        return alpha_series(variant, level if shifted else 1, order)
    if name in ("theta2", "theta3", "theta4"):
        return theta_series(int(name[-1]), 1, order)
    if name == "eta":
        return eta_series(atom.tau if atom.tau is not None else 1, order)
    if name == "xi":
        return xi_series(order)
    if name == "P":
        return eisenstein_P(1, order)
    if name == "a":
        return cubic_a_series(1, order)
    if name == "A":
        return quartic_A_series(1, order)
    if name == "q":
        return QSeries.monomial(1, 1, order)
    if name == "euler":
        n = -(-order.numerator // order.denominator)
        return QSeries.from_list(euler_coefficients(n), order=order)
    if name == "H":
        return hauptmodul_series("classical", atom.level, order)
    if name == "Hdagger":
        return hauptmodul_series("cubic", atom.level, order)
    if name == "f":
        return family_series("F", atom.level, order)
    if name == "f_eta":
        return f_series_eta(atom.level, order)
    if name in ("D", "Dhat", "C", "Chat", "Dperp"):
        return family_series(name, atom.level, order)
    raise UnknownAtom(name)


@dataclass
class _Obstructed(Exception):
    """Value of the form ``coef * inner^(1/degree)`` whose root is not rational."""

    coef: QSeries
    inner: QSeries
    degree: int


class _Evaluator:
    def __init__(self, rec: IdentityRecord, lat_order: int):
        self.rec = rec
        self.lat_order = lat_order
        self.defs = dict(rec.definitions)
        self.cache: dict[object, QSeries] = {}
        self.active: set[str] = set()

    def one(self) -> QSeries:
        return QSeries.from_lattice({0: 1}, self.lat_order)

    def atom(self, a: Atom) -> QSeries:
        key = ("atom", a)
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        base_order = Fraction(-(-self.lat_order // a.scale), LATTICE)
        s = _base_atom(a, self.rec.level, base_order)
        if a.negate:
            s = s.negate_q()
        s = s.compose_lattice(a.scale, self.lat_order) if a.scale != 1 else \
            s.truncate_lattice(self.lat_order)
        self.cache[key] = s
        return s

    def ref(self, name: str) -> QSeries:
        key = ("ref", name)
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        if name in self.active:
            raise SchemaError(f"{self.rec.id}: definition {name} is circular")
        self.active.add(name)
        try:
            s = self.eval(self.defs[name])
        finally:
            self.active.discard(name)
        self.cache[key] = s
        return s

    def eval(self, node) -> QSeries:
        if isinstance(node, Rat):
            return self.one() * node.value
        if isinstance(node, Atom):
            return self.atom(node)
        if isinstance(node, Ref):
            return self.ref(node.name)
        if isinstance(node, Add):
            try:
                acc = self.eval(node.args[0])
                for a in node.args[1:]:
                    acc = acc + self.eval(a)
            except _Obstructed:
                # a sum with an irrational root cannot be power-cleared termwise
                raise RootObstruction(f"{self.rec.id}: irrational root inside a sum") from None
            return acc
        if isinstance(node, Neg):
            try:
                return -self.eval(node.arg)
            except _Obstructed as ob:
                raise _Obstructed(-ob.coef, ob.inner, ob.degree) from None
        if isinstance(node, Mul):
            return self.mul(node)
        if isinstance(node, Pow):
            return self.pow(node)
        raise TypeError(node)

    def pow(self, node: Pow) -> QSeries:
        e = node.exp
        if isinstance(node.arg, Rat) and e.denominator != 1:
            c = node.arg.value ** e.numerator if e.numerator >= 0 else 1 / node.arg.value ** -e.numerator
            r = rational_root(c, e.denominator)
            if r is None:
                raise _Obstructed(self.one(), self.one() * c, e.denominator)
            return self.one() * r
        try:
            base = self.eval(node.arg)
        except _Obstructed as ob:
            if e.denominator != 1:
                raise RootObstruction(f"{self.rec.id}: nested irrational root") from None
            k = int(e)
            return self._unobstruct(ob.coef ** k, ob.inner ** k, ob.degree)
        if e.denominator == 1:
            return base ** int(e)
        try:
            return base ** e
        except (IrrationalRootLeadingCoefficient, NonLatticeRoot):
            raise _Obstructed(self.one(), base ** e.numerator, e.denominator) from None

    def mul(self, node: Mul) -> QSeries:
        # negative powers divide at the end so a valuation in a denominator
        # can cancel against the numerator
        num = [a for a in node.args if not (isinstance(a, Pow) and a.exp < 0)]
        den = [Pow(a.arg, -a.exp) for a in node.args if isinstance(a, Pow) and a.exp < 0]
        if den:
            top = self.mul(Mul(tuple(num))) if num else self.one()
            try:
                bottom = self.mul(Mul(tuple(den)))
            except _Obstructed as ob:
                # top / (c E^(1/L)) = (top / c) * (1/E)^(1/L)
                raise _Obstructed(top / ob.coef, self.one() / ob.inner, ob.degree) from None
            return top / bottom
        acc = self.one()
        pending: list[_Obstructed] = []
        for a in node.args:
            try:
                acc = acc * self.eval(a)
            except _Obstructed as ob:
                pending.append(ob)
        if not pending:
            return acc
        # merge every irrational factor into one root of degree lcm(...)
        degree = lcm(*(ob.degree for ob in pending))
        inner = self.one()
        for ob in pending:
            acc = acc * ob.coef
            inner = inner * ob.inner ** (degree // ob.degree)
        return self._unobstruct(acc, inner, degree)

    def _unobstruct(self, coef: QSeries, inner: QSeries, degree: int) -> QSeries:
        """coef * inner^(1/degree), or :class:`_Obstructed` if that root is irrational."""
        try:
            return coef * inner.nth_root(degree)
        except (IrrationalRootLeadingCoefficient, NonLatticeRoot):
            raise _Obstructed(coef, inner, degree) from None


def evaluate_side(rec: IdentityRecord, side: str, order) -> QSeries:
    """Expand ``rec.lhs`` or ``rec.rhs`` (no power-clearing) to ``order`` in q."""
    ev = _Evaluator(rec, int(Fraction(order) * LATTICE))
    return ev.eval(rec.lhs if side == "lhs" else rec.rhs)


def _leading_sign(s: QSeries) -> int:
    c = s.leading_coefficient
    return (c > 0) - (c < 0)


def _compare(rec: IdentityRecord, lat_order: int):
    """Return (lhs, rhs, cleared_note, extra_branch) at working order ``lat_order``."""
    ev = _Evaluator(rec, lat_order)
    sides, obstructed = [], []
    for node in (rec.lhs, rec.rhs):
        try:
            sides.append(ev.eval(node))
            obstructed.append(None)
        except _Obstructed as ob:
            sides.append(None)
            obstructed.append(ob)
    branch: list[tuple[str, QSeries, int]] = []
    for b in rec.branch:
        branch.append((format_series(b.expr), ev.eval(b.expr), b.sign))
    if obstructed == [None, None]:
        return sides[0], sides[1], "", branch, ev
    if obstructed[0] is not None and obstructed[1] is not None:
        o1, o2 = obstructed
        d = lcm(o1.degree, o2.degree)
        lhs = o1.coef ** d * o1.inner ** (d // o1.degree)
        rhs = o2.coef ** d * o2.inner ** (d // o2.degree)
        branch.append(("sign(lhs coefficient) = sign(rhs coefficient)",
                       o1.coef * o2.coef, 1))
        return lhs, rhs, f"power-cleared (both sides raised to the power {d})", branch, ev
    k = 0 if obstructed[0] is not None else 1
    ob, other = obstructed[k], sides[1 - k]
    ratio = other / ob.coef
    cleared = ratio ** ob.degree
    branch.append((f"other side / coefficient has positive leading term", ratio, 1))
    pair = (ob.inner, cleared) if k == 0 else (cleared, ob.inner)
    return pair[0], pair[1], f"power-cleared (raised to the power {ob.degree})", branch, ev


def check_identity(record: IdentityRecord, order_override: int | None = None,
                   max_attempts: int = 5) -> VerificationReport:
    """Verify one record by exact series comparison.

    The working order is raised automatically until both sides are known up
    to the check order (valuations of intermediate factors cost precision).
    """
    target = int(order_override or record.check_order)
    lat_target = target * LATTICE
    work = lat_target + LATTICE * (4 + record.level // 2)
    try:
        for _ in range(max_attempts):
            lhs, rhs, note, branch, _ev = _compare(record, work)
            diff = lhs - rhs
            known = diff.lattice_order
            if known >= lat_target or not diff.is_zero():
                break
            work += (lat_target - known) + 2 * LATTICE
        diff = (lhs - rhs).truncate_lattice(lat_target)
        if not diff.is_zero():
            e = diff.lattice_valuation
            return VerificationReport(
                record.id, Status.FAIL, min(target, int(Fraction(diff.lattice_order, LATTICE))),
                Fraction(e, LATTICE), lhs.lattice_coeff(e), rhs.lattice_coeff(e),
                "; ".join(x for x in (note, "series differ") if x))
        if diff.lattice_order < lat_target:
            return VerificationReport(record.id, Status.ERROR,
                                      int(Fraction(diff.lattice_order, LATTICE)),
                                      notes="could not reach the check order")
        for text, series, sign in branch:
            if series.is_zero() or _leading_sign(series) != sign:
                return VerificationReport(
                    record.id, Status.FAIL, target,
                    series.valuation, notes=f"branch condition failed: {text}")
        notes = [x for x in (note, record.notes) if x]
        if branch:
            notes.append(f"{len(branch)} branch condition(s) hold")
        return VerificationReport(record.id, Status.PASS, target, notes="; ".join(notes))
    except _Obstructed:
        return VerificationReport(record.id, Status.ERROR, notes="root obstruction")
    except RootObstruction as exc:
        return VerificationReport(record.id, Status.ERROR, notes=f"root obstruction: {exc}")
    except (WronskPiError, ArithmeticError, ValueError) as exc:
        return VerificationReport(record.id, Status.ERROR,
                                  notes=f"{type(exc).__name__}: {exc}")


def check_identity_strict(record: IdentityRecord, order_override: int | None = None):
    """Like :func:`check_identity` but raises :class:`RootObstruction` when a
    fractional power cannot be handled even after clearing."""
    rep = check_identity(record, order_override)
    if rep.status is Status.ERROR and rep.notes.startswith("root obstruction"):
        raise RootObstruction(record.id)
    return rep


def _check_one(args):
    rec, order = args
    return check_identity(rec, order)


def check_all(records: Iterable[IdentityRecord], order_override: int | None = None,
              jobs: int = 1) -> list[VerificationReport]:
    """Check every record; reports are returned sorted by id.

    ``jobs > 1`` fans the checks out over worker processes.
    """
    recs = list(records)
    if not recs:
        return []
    work = [(r, order_override) for r in recs]
    if jobs and jobs > 1 and len(recs) > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, len(recs))) as pool:
            reports = list(pool.map(_check_one, work))
    else:
        reports = [_check_one(w) for w in work]
    return sorted(reports, key=lambda r: r.id)
