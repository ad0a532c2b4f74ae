"""Command-line front end.

Exit codes: 0 success or coherent, 1 incoherent, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .coherence import CoherenceVerdict, check_coherence
from .dsl import parse_problem
from .errors import ProbLogicError
from .propagation import extension_interval
from .rules import (CATALOG, DESCRIPTIONS, RULE_NAMES, apply_rule, check_connexive, pttt_engine,
                    pttt_predictions)

EXIT_OK, EXIT_INCOHERENT, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def decimal6(q: Fraction) -> str:
    """Exact rounding of ``q`` to six decimals (ties to even)."""
    scaled = round(Fraction(q) * 10**6)
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10**6)
    return f"{sign}{whole}.{frac:06d}"


def _json_frac(q):
    return None if q is None else str(q)


def _result_json(coherent, lower=None, upper=None, non_informative=None, certificate=None, **extra):
    out = {
        "coherent": coherent,
        "lower": _json_frac(lower),
        "upper": _json_frac(upper),
        "lower_decimal": None if lower is None else decimal6(lower),
        "upper_decimal": None if upper is None else decimal6(upper),
        "non_informative": non_informative,
        "certificate": certificate,
    }
    out.update(extra)
    return out


def _certificate_json(assessment, verdict: CoherenceVerdict):
    book = verdict.certificate
    return {
        "stakes": [str(s) for s in book.stakes],
        "prices": [str(p) for p in book.prices],
        "events": [str(e.event) for e in assessment],
        "max_gain": str(book.max_gain),
        "guaranteed_sign": book.guaranteed_sign,
    }


def _layers_text(verdict: CoherenceVerdict) -> list[str]:
    lines = []
    for k, layer in enumerate(verdict.layer_trace):
        entries = ", ".join(str(i + 1) for i in layer.active)
        lines.append(f"layer {k}: entries [{entries}] {'solvable' if layer.solvable else 'unsolvable'}")
    return lines


def _book_text(assessment, verdict: CoherenceVerdict) -> list[str]:
    book = verdict.certificate
    lines = [f"Dutch book (sure loss for the assessor, best-case gain {book.max_gain}):"]
    for s, p, e in zip(book.stakes, book.prices, assessment):
        if s:
            lines.append(f"  stake {s} on p({e.event}) at price {p}")
    return lines


def _load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_problem(text)


def _emit(args, payload, lines):
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        for line in lines:
            print(line)


def cmd_check(args) -> int:
    problem = _load(args.file)
    assessment = problem.assessment()
    if not len(assessment):
        raise UsageError("the problem file contains no assessments")
    verdict = check_coherence(assessment)
    lines = ["coherent" if verdict.coherent else "incoherent"] + _layers_text(verdict)
    cert = None
    if not verdict.coherent:
        lines += _book_text(assessment, verdict)
        cert = _certificate_json(assessment, verdict)
    _emit(args, _result_json(verdict.coherent, certificate=cert), lines)
    return EXIT_OK if verdict.coherent else EXIT_INCOHERENT


def cmd_dutchbook(args) -> int:
    problem = _load(args.file)
    assessment = problem.assessment()
    if not len(assessment):
        raise UsageError("the problem file contains no assessments")
    verdict = check_coherence(assessment)
    if verdict.coherent:
        _emit(args, _result_json(True), ["coherent: no Dutch book exists"])
        return EXIT_OK
    lines = _book_text(assessment, verdict)
    _emit(args, _result_json(False, certificate=_certificate_json(assessment, verdict)), lines)
    return EXIT_INCOHERENT


def cmd_propagate(args) -> int:
    problem = _load(args.file)
    if problem.query is None:
        raise UsageError("the problem file has no query line '? p(...)'")
    assessment = problem.assessment()
    if not len(assessment):
        raise UsageError("the problem file contains no premises")
    verdict = check_coherence(assessment)
    if not verdict.coherent:
        lines = ["premises: incoherent"] + _layers_text(verdict) + _book_text(assessment, verdict)
        _emit(args, _result_json(False, certificate=_certificate_json(assessment, verdict)), lines)
        return EXIT_INCOHERENT
    r = extension_interval(assessment, problem.query)
    lines = [
        "premises: coherent",
        f"query: p({problem.query})",
        f"lower: {r.lower} ({decimal6(r.lower)})",
        f"upper: {r.upper} ({decimal6(r.upper)})",
    ]
    if r.non_informative:
        lines.append("NON-INFORMATIVE")
    _emit(args, _result_json(True, r.lower, r.upper, r.non_informative), lines)
    return EXIT_OK


def _interval_text(lo, hi) -> str:
    return f"[{lo}, {hi}]  ({decimal6(lo)}, {decimal6(hi)})"


def _parse_params(extra: list[str]) -> dict[str, Fraction]:
    params = {}
    it = iter(extra)
    for tok in it:
        if not tok.startswith("--"):
            raise UsageError(f"unexpected argument {tok!r}")
        key, sep, raw = tok[2:].partition("=")
        if not sep:
            raw = next(it, None)
            if raw is None:
                raise UsageError(f"parameter --{key} needs a value")
        try:
            params[key] = Fraction(raw)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"parameter --{key}: {raw!r} is not a rational or decimal") from None
    return params


def _run_pttt(args, params) -> int:
    allowed = {"x1", "x2", "x3", "x4"}
    unknown = set(params) - allowed
    if unknown:
        raise UsageError(f"PTTT takes --x1 .. --x4, not {', '.join(sorted(unknown))}")
    missing = sorted(allowed - set(params))
    if missing:
        raise UsageError(f"PTTT needs {', '.join('--' + m for m in missing)}")
    xs = [params[k] for k in ("x1", "x2", "x3", "x4")]
    pred = pttt_predictions(*xs)
    engine = pttt_engine(*xs) if args.verify else None
    lines, payload = ["rule: PTTT"], {"rule": "PTTT"}
    for key, value in pred.items():
        if isinstance(value, tuple):
            text, jv = f"[{value[0]}, {value[1]}]", [str(v) for v in value]
        else:
            text, jv = f"{value} ({decimal6(value)})", str(value)
        lines.append(f"{key}: {text}")
        payload[key] = jv
    if engine is not None:
        agree = all(
            engine[k] == (pred[k] if isinstance(pred[k], tuple) else (pred[k], pred[k]))
            for k in pred)
        lines.append(f"engine: {'EQUAL' if agree else 'UNEQUAL'}")
        payload["engine"] = {k: [str(v) for v in iv] for k, iv in engine.items()}
        payload["equal"] = agree
    _emit(args, payload, lines)
    return EXIT_OK


def _run_connexive(args, name, params) -> int:
    unknown = set(params) - {"x", "t"}
    if unknown:
        raise UsageError(f"{name} takes no parameter {', '.join(sorted(unknown))}")
    report = check_connexive(name, x=params.get("x"), t=params.get("t"))
    lines = [f"rule: {report.name}", report.statement]
    findings = {}
    for label, value in report.findings:
        if isinstance(value, tuple):
            shown = "forced " + str(value[0]) if value[0] == value[1] else f"[{value[0]}, {value[1]}]"
            findings[label] = [str(v) for v in value]
        else:
            shown = ("yes" if value else "no") if isinstance(value, bool) else str(value)
            findings[label] = value
        lines.append(f"  {label}: {shown}")
    lines.append("holds" if report.holds else "FAILS")
    _emit(args, {"rule": report.name, "holds": report.holds, "statement": report.statement,
                 "findings": findings}, lines)
    return EXIT_OK


def cmd_rule(args, extra) -> int:
    params = _parse_params(extra)
    name = args.name.upper()
    if name == "PTTT":
        return _run_pttt(args, params)
    if name == "AFP" or (name in ("AT1", "AT2", "BT1", "BT2") and not args.verify):
        return _run_connexive(args, name, params)
    r = apply_rule(name, params, verify=args.verify, strict=False)
    lines = [f"rule: {r.name}", f"closed form: {_interval_text(r.lower, r.upper)}"]
    extra_json = {"rule": r.name}
    if r.engine is not None:
        lines.append(f"engine: {_interval_text(r.engine.lower, r.engine.upper)}  "
                     f"{'EQUAL' if r.equal else 'UNEQUAL'}")
        extra_json["engine"] = {"lower": str(r.engine.lower), "upper": str(r.engine.upper)}
        extra_json["equal"] = r.equal
    if r.non_informative:
        lines.append("NON-INFORMATIVE")
    coherent = True if r.engine is not None else None
    _emit(args, _result_json(coherent, r.lower, r.upper, r.non_informative, **extra_json), lines)
    return EXIT_OK if r.equal is not False else EXIT_INCOHERENT


def cmd_pttt(args, extra) -> int:
    return _run_pttt(args, _parse_params(extra))


def cmd_rules(args) -> int:
    lines = [f"{name:<15} {DESCRIPTIONS[name]}" for name in RULE_NAMES]
    payload = {"rules": [{"name": n, "description": DESCRIPTIONS[n],
                          "params": list(CATALOG[n].params) if n in CATALOG
                          else (["x1", "x2", "x3", "x4"] if n == "PTTT" else ["t"])}
                         for n in RULE_NAMES]}
    _emit(args, payload, lines)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="problogic",
        description="Coherence checking and probability propagation for conditional events.")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    json_flag = argparse.ArgumentParser(add_help=False)
    json_flag.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (("check", "decide coherence of the assessments in FILE"),
                            ("propagate", "tightest coherent bounds for the query in FILE"),
                            ("dutchbook", "print a Dutch book for an incoherent FILE")):
        p = sub.add_parser(name, parents=[json_flag], help=help_text)
        p.add_argument("file", metavar="FILE")
    p = sub.add_parser("rule", parents=[json_flag],
                       help="closed-form bounds of a catalog rule; parameters as --name value")
    p.add_argument("name", metavar="NAME")
    p.add_argument("--verify", action="store_true", help="compare with the engine interval")
    p = sub.add_parser("pttt", parents=[json_flag],
                       help="truth-table task predictions from --x1 .. --x4")
    p.add_argument("--verify", action="store_true", help="certify with the engine")
    sub.add_parser("rules", parents=[json_flag], help="list the rule catalog")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args, extra = parser.parse_known_args(argv)
    try:
        if args.command in ("rule", "pttt"):
            return cmd_rule(args, extra) if args.command == "rule" else cmd_pttt(args, extra)
        if extra:
            parser.error(f"unrecognized arguments: {' '.join(extra)}")
        return {"check": cmd_check, "propagate": cmd_propagate,
                "dutchbook": cmd_dutchbook, "rules": cmd_rules}[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
    except ProbLogicError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
