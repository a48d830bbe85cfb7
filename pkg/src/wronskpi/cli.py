"""Command-line front end.

Exit status: 0 on success, 1 when a verification fails, 2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone
from fractions import Fraction

from wronskpi import __version__
from wronskpi.errors import InsufficientOrder, WronskPiError

DEFAULT_ORDER = 200
DEFAULT_PREC = 512
DEFAULT_DIGITS = 30


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive(name):
    def conv(text):
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} expects an integer, got {text!r}") from None
        if v < 1:
            raise argparse.ArgumentTypeError(f"{name} must be positive, got {v}")
        return v
    conv.__name__ = name
    return conv


def _common(p, order=False, prec=False, digits=False):
    if order:
        p.add_argument("--order", type=_positive("--order"), default=DEFAULT_ORDER,
                       help=f"q-order for series work (default {DEFAULT_ORDER})")
    if prec:
        p.add_argument("--prec", type=_positive("--prec"), default=DEFAULT_PREC,
                       help=f"working precision in bits (default {DEFAULT_PREC})")
    if digits:
        p.add_argument("--digits", type=_positive("--digits"), default=DEFAULT_DIGITS,
                       help=f"decimal digits (default {DEFAULT_DIGITS})")
    p.add_argument("--report", metavar="PATH", help="write a JSON report to PATH")
    p.add_argument("--json", action="store_true", help="machine-readable output on stdout")
    p.add_argument("--no-timestamp", action="store_true", help="omit the report timestamp")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="wronskpi", description="q-series identities and series for 1/pi")
    p.add_argument("--version", action="version", version=f"wronskpi {__version__}")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    s = sub.add_parser("expand", help="expand a q-series expression")
    s.add_argument("--function", required=True,
                   help="series expression, e.g. theta3, 'D(13)', 'eta(2)^2/eta'")
    s.add_argument("--level", type=_positive("--level"), default=1,
                   help="level used by level-dependent atoms written without one")
    _common(s, order=True)

    s = sub.add_parser("verify", help="check one registry identity")
    s.add_argument("--id", required=True)
    s.add_argument("--registry", metavar="PATH", help="JSON registry instead of the shipped one")
    _common(s)
    s.add_argument("--order", type=_positive("--order"), default=None,
                   help="override the record's configured check order")

    s = sub.add_parser("verify-all", help="check every registry identity")
    s.add_argument("--registry", metavar="PATH")
    s.add_argument("--jobs", type=_positive("--jobs"), default=1)
    _common(s)
    s.add_argument("--order", type=_positive("--order"), default=None)

    s = sub.add_parser("eval", help="evaluate a constant or a series at a nome")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--id", help="constant id from the catalog")
    g.add_argument("--expr", help="closed-form constant, e.g. '1/2 - sqrt(3)/4'")
    g.add_argument("--function", help="series expression to evaluate at --nome")
    s.add_argument("--nome", help="FAMILY:N[:inverted], e.g. classical:3:inverted")
    s.add_argument("--level", type=_positive("--level"), default=1)
    s.add_argument("--order", type=_positive("--order"), default=None,
                   help="series order; raised automatically when omitted")
    _common(s, prec=True, digits=True)

    s = sub.add_parser("sum", help="sum a catalog series for 1/pi")
    s.add_argument("--id", required=True)
    s.add_argument("--block", type=_positive("--block"), default=None)
    s.add_argument("--jobs", type=_positive("--jobs"), default=1)
    _common(s, prec=True, digits=True)

    s = sub.add_parser("pi-digits", help="verify digits of pi from a catalog series")
    s.add_argument("--id", required=True)
    _common(s, prec=True, digits=True)

    s = sub.add_parser("list", help="list catalog entries")
    s.add_argument("what", choices=["identities", "series", "constants"])
    s.add_argument("--json", action="store_true")
    return p


# -- verbs ------------------------------------------------------------------------------------------

def _registry(path):
    from wronskpi.registry import default_registry, errata_registry, load_registry
    if path:
        return load_registry(path)
    return default_registry()


def _find_record(rid, path):
    from wronskpi.registry import errata_registry
    recs = _registry(path)
    if not path:
        recs = recs + errata_registry()
    for r in recs:
        if r.id == rid:
            return r
    raise UsageError(f"--id: unknown identity {rid!r}")


def _expand(a):
    from wronskpi.expr import parse_series
    from wronskpi.registry import IdentityRecord, evaluate_side
    try:
        node = parse_series(a.function)
    except (WronskPiError, SyntaxError) as e:
        raise UsageError(f"--function: {e}") from None
    rec = IdentityRecord("expand", a.level, node, node, 2 * a.level + 50, "command line")
    s = evaluate_side(rec, "lhs", a.order)
    text = s.format(show_order=False)
    result = {"function": a.function, "order": a.order, "series": text,
              "coefficients": [[str(e), str(c)] for e, c in s.items()]}
    return 0, text, result


def _verify(a):
    from wronskpi.registry import check_identity
    rec = _find_record(a.id, a.registry)
    rep = check_identity(rec, order_override=a.order)
    return (0 if rep.passed else 1), _report_line(rep), rep.to_dict()


def _report_line(rep):
    line = f"{rep.id}: {rep.status.value.upper()}"
    if rep.checked_order is not None:
        line += f" (order {rep.checked_order})"
    if rep.first_discrepant_exponent is not None:
        line += (f" first discrepancy at q^{rep.first_discrepant_exponent}:"
                 f" lhs {rep.lhs_coefficient}, rhs {rep.rhs_coefficient}")
    elif rep.notes and rep.status.value != "Pass":
        line += f" {rep.notes}"
    return line


def _verify_all(a):
    from wronskpi.registry import check_all
    reps = check_all(_registry(a.registry), order_override=a.order, jobs=a.jobs)
    lines = [_report_line(r) for r in reps]
    npass = sum(r.passed for r in reps)
    lines.append(f"{npass}/{len(reps)} passed")
    code = 0 if npass == len(reps) else 1
    return code, "\n".join(lines), {"results": [r.to_dict() for r in reps],
                                    "passed": npass, "total": len(reps)}


def _parse_nome(text):
    from wronskpi.precision import EvalPoint, Family
    if not text:
        raise UsageError("--nome is required with --function")
    parts = text.split(":")
    try:
        fam = Family(parts[0])
        N = int(parts[1])
        inv = len(parts) > 2 and parts[2] in ("inverted", "inv")
        if len(parts) > 3 or (len(parts) == 3 and not inv):
            raise ValueError
        return EvalPoint(fam, N, inv)
    except (ValueError, IndexError):
        raise UsageError(f"--nome: expected FAMILY:N[:inverted], got {text!r}") from None


def _eval(a):
    from wronskpi.precision import eval_const_expr, eval_series_at, load_constants, nome
    if a.id:
        table = load_constants()
        if a.id not in table:
            raise UsageError(f"--id: unknown constant {a.id!r}")
        entry = table[a.id]
        v = entry.value(a.prec)
        label, extra = a.id, {"text": entry.text, "misprint_suspect": entry.misprint_suspect}
    elif a.expr:
        try:
            v = eval_const_expr(a.expr, a.prec)
        except (SyntaxError, ValueError, KeyError) as e:
            raise UsageError(f"--expr: {e}") from None
        label, extra = a.expr, {}
    else:
        from wronskpi.expr import parse_series
        from wronskpi.registry import IdentityRecord, evaluate_side
        point = _parse_nome(a.nome)
        try:
            node = parse_series(a.function)
        except (WronskPiError, SyntaxError) as e:
            raise UsageError(f"--function: {e}") from None
        rec = IdentityRecord("eval", a.level, node, node, 2 * a.level + 50, "command line")
        q0 = nome(point, a.prec).value
        order = a.order or DEFAULT_ORDER
        for _ in range(12):
            try:
                v = eval_series_at(evaluate_side(rec, "lhs", order), q0, a.prec)
                break
            except InsufficientOrder:
                if a.order:           # explicit order: report, do not raise it
                    raise
                order = int(order * 1.6) + 8
        else:
            raise InsufficientOrder(f"gave up at order {order}")
        label, extra = f"{a.function} at {a.nome}", {"order": order}
    shown = min(a.digits, v.digits)
    text = v.decimal(shown)
    result = {"label": label, "value": text, "digits": shown, "precision_bits": v.precision_bits}
    result.update(extra)
    return 0, f"{label} = {text}  ({shown} digits)", result


def _spec(a):
    from wronskpi.piseries import load_series_catalog, spec_from_id
    if a.id not in load_series_catalog():
        raise UsageError(f"--id: unknown series {a.id!r}")
    return spec_from_id(a.id, a.prec)


def _sum(a):
    from wronskpi.piseries import sum_series
    spec = _spec(a)
    v, n = sum_series(spec, a.digits, block=a.block, jobs=a.jobs)
    text = v.decimal(a.digits)
    result = {"id": spec.id, "target": spec.target_lhs, "value": text, "digits": a.digits,
              "terms_used": n, "N": spec.N, "theorem": spec.theorem.value}
    return 0, f"{spec.id}: sum = {text} ({spec.target_lhs}), {n} terms", result


def _pi_digits(a):
    from wronskpi.piseries import verify_pi
    rep = verify_pi(_spec(a), a.digits)
    word = "PASS" if rep.passed else "FAIL"
    text = (f"{rep.extra['pi_digits']}\n{rep.id}: {rep.extra['matched_digits']} digits matched"
            f" in {rep.extra['terms_used']} terms\n{word}")
    return (0 if rep.passed else 1), text, rep.to_dict()


def _list(a):
    rows = []
    if a.what == "identities":
        from wronskpi.registry import default_registry
        rows = [(r.id, r.provenance) for r in default_registry()]
    elif a.what == "series":
        from wronskpi.piseries import load_series_catalog
        rows = [(e.id, e.provenance + ("  [divergent]" if e.divergent else ""))
                for e in load_series_catalog().values()]
    else:
        from wronskpi.precision import load_constants
        rows = [(c.id, c.provenance + ("  [misprint suspect]" if c.misprint_suspect else ""))
                for c in load_constants().values()]
    width = max((len(r[0]) for r in rows), default=0)
    text = "\n".join(f"{i.ljust(width)}  {p}" for i, p in rows)
    return 0, text, {"entries": [{"id": i, "provenance": p} for i, p in rows]}


VERBS = {"expand": _expand, "verify": _verify, "verify-all": _verify_all, "eval": _eval,
         "sum": _sum, "pi-digits": _pi_digits, "list": _list}


def _payload(verb, argv, result, code, stamp):
    out = {"tool": "wronskpi", "version": __version__, "verb": verb, "argv": list(argv),
           "exit_status": code}
    if stamp:
        out["timestamp"] = datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
    out["result"] = result
    return out


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    raise TypeError(type(x).__name__)


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(f"wronskpi: usage error: {e}", file=stderr)
        return 2
    except SystemExit as e:          # --help / --version
        return int(e.code or 0)
    try:
        code, text, result = VERBS[args.verb](args)
    except UsageError as e:
        print(f"wronskpi: usage error: {e}", file=stderr)
        return 2
    except WronskPiError as e:
        print(f"wronskpi: {type(e).__name__}: {e}", file=stderr)
        return 1
    stamp = not getattr(args, "no_timestamp", True)
    payload = _payload(args.verb, argv, result, code, stamp)
    dumped = json.dumps(payload, indent=2, sort_keys=True, default=_jsonable) + "\n"
    if getattr(args, "json", False):
        stdout.write(dumped)
    else:
        stdout.write(text + "\n")
    if getattr(args, "report", None):
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(dumped)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
