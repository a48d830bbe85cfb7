"""Expression trees for series identities and closed-form constants.

Two small tree languages share one infix front end built on :mod:`ast`:

* series expressions (registry records): rational, atom, add, mul, neg,
  pow with a rational exponent, and ``ref`` to a record-local definition;
* constant expressions (ConstExpr): Rational, Add, Sub, Mul, Div, Neg,
  Pow (integer) and Root (positive real branch).

Infix syntax accepts ``^`` or ``**`` for powers, ``sqrt(x)`` and
``root(x, n)``.  Series atoms are written ``name``, ``name[m]`` (argument
q^m), ``name(level)`` or ``name(level)[m]``; ``neg=1`` as a keyword applies
q -> -q before the substitution, e.g. ``a(neg=1)[5]`` is a(-q^5).
"""
from __future__ import annotations

import ast
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Union

from wronskpi.errors import SchemaError, UnknownAtom

__all__ = [
    "Rat", "Atom", "Ref", "Add", "Mul", "Neg", "Pow",
    "SeriesNode", "ATOM_NAMES", "LEVEL_ATOMS",
    "parse_series", "series_from_json", "series_to_json", "series_atoms", "series_refs",
    "CRational", "CAdd", "CSub", "CMul", "CDiv", "CNeg", "CPow", "CRoot", "ConstNode",
    "parse_const", "const_from_json", "const_to_json", "format_series",
]

# Atoms that need a level (Wronskian families and Hauptmoduls).
LEVEL_ATOMS = frozenset({"D", "Dhat", "C", "Chat", "Dperp", "f", "f_eta", "H", "Hdagger"})
ATOM_NAMES = frozenset({
    "alpha", "beta", "alpha_dagger", "beta_dagger", "alpha_perp", "beta_perp",
    "theta2", "theta3", "theta4", "eta", "xi", "P", "a", "A", "euler", "q",
}) | LEVEL_ATOMS


# -- series trees ---------------------------------------------------------------

@dataclass(frozen=True)
class Rat:
    value: Fraction


@dataclass(frozen=True)
class Atom:
    name: str
    scale: int = 1
    level: int | None = None
    negate: bool = False
    tau: Fraction | None = None


@dataclass(frozen=True)
class Ref:
    name: str


@dataclass(frozen=True)
class Add:
    args: tuple


@dataclass(frozen=True)
class Mul:
    args: tuple


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class Pow:
    arg: object
    exp: Fraction


SeriesNode = Union[Rat, Atom, Ref, Add, Mul, Neg, Pow]


def _check_atom(a: Atom) -> Atom:
    if a.name not in ATOM_NAMES:
        raise UnknownAtom(a.name)
    if a.scale < 1:
        raise SchemaError(f"atom {a.name}: scale must be a positive integer")
    if a.name in LEVEL_ATOMS:
        if a.level is None or a.level < 2:
            raise SchemaError(f"atom {a.name} needs an integer level >= 2")
    elif a.level is not None:
        raise SchemaError(f"atom {a.name} takes no level")
    if a.name == "eta":
        t = a.tau if a.tau is not None else Fraction(1)
        if t <= 0 or (2 * t).denominator != 1:
            raise SchemaError("eta tau multiple must be k or k/2")
    elif a.tau is not None:
        raise SchemaError(f"atom {a.name} takes no tau multiple")
    return a


def _frac(x, what="value") -> Fraction:
    try:
        if isinstance(x, bool):
            raise TypeError
        if isinstance(x, (list, tuple)) and len(x) == 2:
            return Fraction(int(x[0]), int(x[1]))
        if isinstance(x, float):
            raise TypeError
        return Fraction(x)
    except (TypeError, ValueError, ZeroDivisionError):
        raise SchemaError(f"malformed rational {what}: {x!r}") from None


def series_from_json(obj) -> SeriesNode:
    """Decode a registry expression tree, validating node kinds and atoms."""
    if not isinstance(obj, Mapping):
        raise SchemaError(f"expression node must be an object, got {type(obj).__name__}")
    kind = obj.get("kind")
    if kind == "rational":
        return Rat(_frac(obj.get("value")))
    if kind == "atom":
        name = obj.get("name")
        if not isinstance(name, str):
            raise SchemaError("atom without a name")
        level = obj.get("level")
        tau = obj.get("tau")
        scale = obj.get("scale", 1)
        if not isinstance(scale, int) or isinstance(scale, bool):
            raise SchemaError(f"atom {name}: scale must be an integer")
        if level is not None and (not isinstance(level, int) or isinstance(level, bool)):
            raise SchemaError(f"atom {name}: level must be an integer")
        return _check_atom(Atom(name, scale, level, bool(obj.get("negate", False)),
                                None if tau is None else _frac(tau, "tau")))
    if kind == "ref":
        name = obj.get("name")
        if not isinstance(name, str):
            raise SchemaError("ref without a name")
        return Ref(name)
    if kind in ("add", "mul"):
        args = obj.get("args")
        if not isinstance(args, list) or not args:
            raise SchemaError(f"{kind} node needs a non-empty 'args' list")
        sub = tuple(series_from_json(a) for a in args)
        return Add(sub) if kind == "add" else Mul(sub)
    if kind == "neg":
        return Neg(series_from_json(obj.get("arg")))
    if kind == "pow":
        exp = obj.get("exp")
        if not isinstance(exp, list) or len(exp) != 2 or not all(
                isinstance(v, int) and not isinstance(v, bool) for v in exp) or exp[1] <= 0:
            raise SchemaError("pow exponent must be [num, den] with den > 0")
        e = Fraction(exp[0], exp[1])
        if 24 % e.denominator:
            raise SchemaError(f"pow exponent {e}: denominator must divide 24")
        return Pow(series_from_json(obj.get("arg")), e)
    raise SchemaError(f"unknown node kind {kind!r}")


def series_to_json(node: SeriesNode) -> dict:
    if isinstance(node, Rat):
        return {"kind": "rational", "value": str(node.value)}
    if isinstance(node, Atom):
        out = {"kind": "atom", "name": node.name}
        if node.level is not None:
            out["level"] = node.level
        if node.tau is not None:
            out["tau"] = str(node.tau)
        if node.scale != 1:
            out["scale"] = node.scale
        if node.negate:
            out["negate"] = True
        return out
    if isinstance(node, Ref):
        return {"kind": "ref", "name": node.name}
    if isinstance(node, Add):
        return {"kind": "add", "args": [series_to_json(a) for a in node.args]}
    if isinstance(node, Mul):
        return {"kind": "mul", "args": [series_to_json(a) for a in node.args]}
    if isinstance(node, Neg):
        return {"kind": "neg", "arg": series_to_json(node.arg)}
    if isinstance(node, Pow):
        return {"kind": "pow", "arg": series_to_json(node.arg),
                "exp": [node.exp.numerator, node.exp.denominator]}
    raise TypeError(f"not a series node: {node!r}")


def series_atoms(node: SeriesNode):
    """Yield every atom in a tree."""
    if isinstance(node, Atom):
        yield node
    elif isinstance(node, (Add, Mul)):
        for a in node.args:
            yield from series_atoms(a)
    elif isinstance(node, (Neg, Pow)):
        yield from series_atoms(node.arg)


def series_refs(node: SeriesNode):
    if isinstance(node, Ref):
        yield node.name
    elif isinstance(node, (Add, Mul)):
        for a in node.args:
            yield from series_refs(a)
    elif isinstance(node, (Neg, Pow)):
        yield from series_refs(node.arg)


def format_series(node: SeriesNode) -> str:
    """Infix rendering (parseable by :func:`parse_series`)."""
    if isinstance(node, Rat):
        v = node.value
        return str(v) if v.denominator == 1 and v >= 0 else f"({v})"
    if isinstance(node, Atom):
        s = node.name
        args = []
        if node.level is not None:
            args.append(str(node.level))
        if node.tau is not None:
            args.append(str(node.tau))
        if node.negate:
            args.append("neg=1")
        if args:
            s += "(" + ", ".join(args) + ")"
        if node.scale != 1:
            s += f"[{node.scale}]"
        return s
    if isinstance(node, Ref):
        return node.name
    if isinstance(node, Add):
        return "(" + " + ".join(format_series(a) for a in node.args) + ")"
    if isinstance(node, Mul):
        return "*".join(format_series(a) for a in node.args)
    if isinstance(node, Neg):
        return f"(-{format_series(node.arg)})"
    if isinstance(node, Pow):
        e = node.exp
        es = str(e) if e.denominator == 1 and e > 0 else f"({e})"
        return f"({format_series(node.arg)})^{es}"
    raise TypeError(node)


# -- infix front end -----------------------------------------------------------------

def _tree(text: str) -> ast.expr:
    try:
        return ast.parse(text.replace("^", "**"), mode="eval").body
    except SyntaxError as exc:
        raise SchemaError(f"cannot parse expression {text!r}: {exc.msg}") from None


def _const_fraction(node: ast.expr) -> Fraction | None:
    """Fold a purely numeric subtree (used for exponents)."""
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return Fraction(node.value)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _const_fraction(node.operand)
        if v is None:
            return None
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        a, b = _const_fraction(node.left), _const_fraction(node.right)
        if a is None or b is None:
            return None
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return a * b
        if isinstance(node.op, ast.Div) and b:
            return a / b
        if isinstance(node.op, ast.Pow) and b.denominator == 1:
            return a ** int(b)
    return None


def _flatten(cls, items):
    out = []
    for x in items:
        if isinstance(x, cls):
            out.extend(x.args)
        else:
            out.append(x)
    return cls(tuple(out))


class _SeriesBuilder:
    def __init__(self, names: Mapping[str, int] | None, refs: frozenset):
        self.names = dict(names or {})
        self.refs = refs

    def atom(self, name: str, level=None, scale=1, negate=False, tau=None) -> SeriesNode:
        if name in self.refs:
            if level is not None or scale != 1 or negate or tau is not None:
                raise SchemaError(f"definition {name} cannot take arguments")
            return Ref(name)
        return _check_atom(Atom(name, scale, level, negate, tau))

    def build(self, node: ast.expr) -> SeriesNode:
        v = _const_fraction(node)
        if v is not None:
            return Rat(v)
        if isinstance(node, ast.Name):
            if node.id in self.names:
                return Rat(Fraction(self.names[node.id]))
            return self.atom(node.id)
        if isinstance(node, ast.Subscript):
            base = self.build(node.value)
            m = _const_fraction(node.slice)
            if not isinstance(base, Atom) or m is None or m.denominator != 1:
                raise SchemaError("subscript must be an integer scale on an atom")
            return _check_atom(Atom(base.name, base.scale * int(m), base.level, base.negate,
                                    base.tau))
        if isinstance(node, ast.Call):
            if not isinstance(node.func, ast.Name):
                raise SchemaError("only named calls are supported")
            fname = node.func.id
            if fname == "sqrt":
                return Pow(self.build(node.args[0]), Fraction(1, 2))
            if fname == "root":
                n = _const_fraction(node.args[1])
                if n is None or n.denominator != 1 or n < 1:
                    raise SchemaError("root degree must be a positive integer")
                return Pow(self.build(node.args[0]), Fraction(1, int(n)))
            kw = {k.arg: _const_fraction(k.value) for k in node.keywords}
            if any(v is None for v in kw.values()):
                raise SchemaError(f"keyword arguments of {fname} must be numeric")
            pos = []
            for a in node.args:
                if isinstance(a, ast.Name) and a.id in self.names:
                    pos.append(Fraction(self.names[a.id]))
                else:
                    c = _const_fraction(a)
                    if c is None:
                        raise SchemaError(f"arguments of {fname} must be numeric")
                    pos.append(c)
            level = tau = None
            if fname == "eta":
                tau = pos[0] if pos else None
            elif pos:
                if pos[0].denominator != 1:
                    raise SchemaError(f"level of {fname} must be an integer")
                level = int(pos[0])
            unknown = set(kw) - {"neg", "scale"}
            if unknown:
                raise SchemaError(f"unknown keyword(s) {sorted(unknown)} for {fname}")
            scale = int(kw.get("scale", 1))
            return self.atom(fname, level, scale, bool(kw.get("neg", 0)), tau)
        if isinstance(node, ast.UnaryOp):
            if isinstance(node.op, ast.USub):
                return Neg(self.build(node.operand))
            if isinstance(node.op, ast.UAdd):
                return self.build(node.operand)
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                e = _const_fraction(node.right)
                if e is None:
                    raise SchemaError("exponents must be numeric")
                return Pow(self.build(node.left), e)
            a, b = self.build(node.left), self.build(node.right)
            if isinstance(node.op, ast.Add):
                return _flatten(Add, [a, b])
            if isinstance(node.op, ast.Sub):
                return _flatten(Add, [a, Neg(b)])
            if isinstance(node.op, ast.Mult):
                return _flatten(Mul, [a, b])
            if isinstance(node.op, ast.Div):
                if isinstance(b, Rat):
                    if b.value == 0:
                        raise SchemaError("division by the constant 0")
                    return _flatten(Mul, [a, Rat(1 / b.value)])
                return _flatten(Mul, [a, Pow(b, Fraction(-1))])
        raise SchemaError(f"unsupported syntax: {ast.dump(node)[:60]}")


def parse_series(text: str, names: Mapping[str, int] | None = None,
                 refs=()) -> SeriesNode:
    """Parse an infix series expression.

    ``names`` maps identifiers to integers (e.g. ``{"N": 13}``); ``refs``
    lists identifiers that denote record-local definitions.

    >>> format_series(parse_series("2*H(3)"))
    '2*H(3)'
    """
    return _SeriesBuilder(names, frozenset(refs)).build(_tree(text))


# -- constant trees ------------------------------------------------------------------

@dataclass(frozen=True)
class CRational:
    value: Fraction


@dataclass(frozen=True)
class CAdd:
    args: tuple


@dataclass(frozen=True)
class CSub:
    left: object
    right: object


@dataclass(frozen=True)
class CMul:
    args: tuple


@dataclass(frozen=True)
class CDiv:
    left: object
    right: object


@dataclass(frozen=True)
class CNeg:
    arg: object


@dataclass(frozen=True)
class CPow:
    arg: object
    n: int


@dataclass(frozen=True)
class CRoot:
    arg: object
    n: int


ConstNode = Union[CRational, CAdd, CSub, CMul, CDiv, CNeg, CPow, CRoot]


def _const_build(node: ast.expr) -> ConstNode:
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(
            node.value, bool):
        return CRational(Fraction(node.value))
    if isinstance(node, ast.UnaryOp):
        if isinstance(node.op, ast.USub):
            inner = _const_build(node.operand)
            if isinstance(inner, CRational):
                return CRational(-inner.value)
            return CNeg(inner)
        if isinstance(node.op, ast.UAdd):
            return _const_build(node.operand)
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name):
        if node.func.id == "sqrt" and len(node.args) == 1:
            return CRoot(_const_build(node.args[0]), 2)
        if node.func.id == "root" and len(node.args) == 2:
            n = _const_fraction(node.args[1])
            if n is None or n.denominator != 1 or n < 1:
                raise SchemaError("root degree must be a positive integer")
            return CRoot(_const_build(node.args[0]), int(n))
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            e = _const_fraction(node.right)
            if e is None:
                raise SchemaError("exponents must be numeric")
            base = _const_build(node.left)
            if e.denominator != 1:
                base = CRoot(base, e.denominator)
            return base if e.numerator == 1 else CPow(base, e.numerator)
        a, b = _const_build(node.left), _const_build(node.right)
        if isinstance(a, CRational) and isinstance(b, CRational):
            if isinstance(node.op, ast.Div) and b.value == 0:
                raise SchemaError("division by zero in constant")
            folded = {ast.Add: lambda: a.value + b.value, ast.Sub: lambda: a.value - b.value,
                      ast.Mult: lambda: a.value * b.value,
                      ast.Div: lambda: a.value / b.value}.get(type(node.op))
            if folded is not None:
                return CRational(folded())
        if isinstance(node.op, ast.Add):
            return CAdd((a, b))
        if isinstance(node.op, ast.Sub):
            return CSub(a, b)
        if isinstance(node.op, ast.Mult):
            return CMul((a, b))
        if isinstance(node.op, ast.Div):
            return CDiv(a, b)
    raise SchemaError(f"unsupported syntax in constant: {ast.dump(node)[:60]}")


def parse_const(text: str) -> ConstNode:
    """Parse a closed-form real constant such as ``"1/2 - sqrt(3)/4"``."""
    return _const_build(_tree(text))


_CKIND = {CAdd: "add", CSub: "sub", CMul: "mul", CDiv: "div", CNeg: "neg", CPow: "pow",
          CRoot: "root", CRational: "rational"}


def const_to_json(node: ConstNode) -> dict:
    kind = _CKIND[type(node)]
    if isinstance(node, CRational):
        return {"kind": kind, "value": str(node.value)}
    if isinstance(node, (CAdd, CMul)):
        return {"kind": kind, "args": [const_to_json(a) for a in node.args]}
    if isinstance(node, (CSub, CDiv)):
        return {"kind": kind, "args": [const_to_json(node.left), const_to_json(node.right)]}
    if isinstance(node, CNeg):
        return {"kind": kind, "arg": const_to_json(node.arg)}
    return {"kind": kind, "arg": const_to_json(node.arg), "n": node.n}


def const_from_json(obj) -> ConstNode:
    if not isinstance(obj, Mapping):
        raise SchemaError("constant node must be an object")
    kind = obj.get("kind")
    if kind == "rational":
        return CRational(_frac(obj.get("value")))
    if kind in ("add", "mul", "sub", "div"):
        args = obj.get("args")
        if not isinstance(args, list) or len(args) < 2 or (kind in ("sub", "div") and len(args) != 2):
            raise SchemaError(f"{kind} node has the wrong number of args")
        sub = [const_from_json(a) for a in args]
        if kind == "add":
            return CAdd(tuple(sub))
        if kind == "mul":
            return CMul(tuple(sub))
        return CSub(*sub) if kind == "sub" else CDiv(*sub)
    if kind == "neg":
        return CNeg(const_from_json(obj.get("arg")))
    if kind in ("pow", "root"):
        n = obj.get("n")
        if not isinstance(n, int) or isinstance(n, bool) or (kind == "root" and n < 1):
            raise SchemaError(f"{kind} node needs an integer 'n'")
        arg = const_from_json(obj.get("arg"))
        return CPow(arg, n) if kind == "pow" else CRoot(arg, n)
    raise SchemaError(f"unknown constant node kind {kind!r}")
