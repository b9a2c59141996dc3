"""``defarg`` command-line interface.

Every command prints one key-sorted JSON report on stdout::

    {"command": [...], "inputs": {...}, "result": ..., "warnings": [...]}

Exit codes: 0 ok, 1 I/O or parse error, 2 unsatisfied arc, 3 theory not
singular under ``--singular``, 4 argument component not singular,
5 missing or non-atomic translation, 6 enumeration limit exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from pathlib import Path

from . import serialize as ser
from .argmap import (
    DEFAULT_POLICY, MissingTranslation, NonAtomicTranslation, premise_atomic_assignment,
    validate_labels,
)
from .defaults import EnumerationLimitExceeded, NotSingular, all_extensions
from .relations import relation_profile

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_UNSATISFIED = 2
EXIT_NOT_SINGULAR = 3
EXIT_ARG_NOT_SINGULAR = 4
EXIT_TRANSLATION = 5
EXIT_LIMIT = 6

DEFAULT_MAX_DEFAULTS = 16


class CommandError(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        super().__init__(message)


def max_defaults() -> int:
    raw = os.environ.get("DEFARG_MAX_DEFAULTS", "").strip()
    if not raw:
        return DEFAULT_MAX_DEFAULTS
    try:
        value = int(raw)
    except ValueError:
        raise CommandError(EXIT_INPUT, f"DEFARG_MAX_DEFAULTS must be an integer, got {raw!r}") from None
    if value < 0:
        raise CommandError(EXIT_INPUT, "DEFARG_MAX_DEFAULTS must be non-negative")
    return value


class Report:
    def __init__(self, command: list[str]):
        self.command = command
        self.inputs: dict[str, dict[str, str]] = {}
        self.result = None
        self.warnings: list[str] = []
        self.error: str | None = None

    def read(self, role: str, path: str):
        try:
            raw = Path(path).read_bytes()
        except OSError as exc:
            raise CommandError(EXIT_INPUT, f"cannot read {path}: {exc.strerror}") from None
        self.inputs[role] = {"path": path, "sha256": hashlib.sha256(raw).hexdigest()}
        try:
            return json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise CommandError(EXIT_INPUT, f"{path}: invalid JSON ({exc})") from None

    def to_json(self) -> dict:
        doc = {
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
            "warnings": self.warnings,
        }
        if self.error is not None:
            doc["error"] = self.error
        return doc


def _check_argument_size(doc, limit: int) -> None:
    if not isinstance(doc, dict):
        return
    for key in ("implicit_premises", "implicit_claims"):
        rules = doc.get(key) or []
        if isinstance(rules, list) and len(rules) > limit:
            raise EnumerationLimitExceeded(len(rules), limit)


def _load_argument(report: Report, role: str, path: str, limit: int):
    doc = report.read(role, path)
    _check_argument_size(doc, limit)
    return ser.argument_from_json(doc)


# ---------------------------------------------------------------- commands

def cmd_extensions(args, report: Report) -> int:
    theory = ser.theory_from_json(report.read("kb", args.kb))
    exts = all_extensions(theory, max_defaults())
    shown = exts if args.all or len(exts) <= 1 else exts[:1]
    report.result = {
        "defaults": [str(d) for d in theory.defaults],
        "facts": [str(f) for f in theory.facts],
        "count": len(exts),
        "singular": len(exts) == 1,
        "extensions": [ser.extension_to_json(e) for e in shown],
    }
    if not exts:
        report.warnings.append("the theory has no extension")
    elif len(shown) < len(exts):
        report.warnings.append(f"{len(exts) - len(shown)} further extensions omitted; pass --all")
    if any(e.inconsistent for e in exts):
        report.warnings.append("the facts are inconsistent; the only extension is the whole language")
    if args.singular and len(exts) != 1:
        return EXIT_NOT_SINGULAR
    return EXIT_OK


def cmd_argument_check(args, report: Report) -> int:
    a = _load_argument(report, "argument", args.file, max_defaults())
    report.result = ser.argument_summary(a)
    return EXIT_OK


def cmd_relate(args, report: Report) -> int:
    limit = max_defaults()
    a = _load_argument(report, "a", args.a, limit)
    b = _load_argument(report, "b", args.b, limit)
    report.result = {
        "a_to_b": relation_profile(a, b).to_dict(),
        "b_to_a": relation_profile(b, a).to_dict(),
    }
    return EXIT_OK


def cmd_map_instantiate(args, report: Report) -> int:
    m = ser.map_from_json(report.read("map", args.map))
    table = ser.translation_from_json(report.read("translation", args.translation))
    im = premise_atomic_assignment(m, table)
    doc = ser.imap_to_json(im)
    if args.output:
        try:
            Path(args.output).write_text(ser.dump_json(doc, pretty=True) + "\n", encoding="utf-8")
        except OSError as exc:
            raise CommandError(EXIT_INPUT, f"cannot write {args.output}: {exc.strerror}") from None
    report.result = {"method": args.method, "output": args.output, "assignment": doc["assignment"]}
    return EXIT_OK


def cmd_map_validate(args, report: Report) -> int:
    doc = report.read("imap", args.imap)
    limit = max_defaults()
    if isinstance(doc, dict) and isinstance(doc.get("assignment"), dict):
        for arg_doc in doc["assignment"].values():
            _check_argument_size(arg_doc, limit)
    im = ser.imap_from_json(doc)
    policy = DEFAULT_POLICY
    if args.policy:
        try:
            policy = ser.policy_from_json(report.read("policy", args.policy))
        except ValueError as exc:
            raise CommandError(EXIT_INPUT, str(exc)) from None
    result = validate_labels(im, policy)
    report.result = ser.validation_to_json(result)
    report.result["policy"] = ser.policy_to_json(policy)
    for rec in result.unsatisfied:
        report.warnings.append(f"arc {rec.source} {rec.label} {rec.target} is not satisfied")
    return EXIT_OK if result.valid else EXIT_UNSATISFIED


def render_validation_table(report: Report) -> str:
    res = report.result
    lines = [f"{'from':<8} {'to':<8} {'label':<5} {'ok':<4} witnesses"]
    for arc in res["arcs"]:
        ok = "yes" if arc["satisfied"] else "NO"
        lines.append(f"{arc['from']:<8} {arc['to']:<8} {arc['label']:<5} {ok:<4} {', '.join(arc['witnesses']) or '-'}")
    lines.append(f"valid: {'yes' if res['valid'] else 'no'}")
    return "\n".join(lines)


# ---------------------------------------------------------------- wiring

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="defarg", description="Default-logic argument toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extensions", help="enumerate extensions of a default theory")
    p.add_argument("--kb", required=True, help="knowledge-base JSON")
    p.add_argument("--all", action="store_true", help="list every extension")
    p.add_argument("--singular", action="store_true", help="exit 3 unless exactly one extension")
    p.set_defaults(func=cmd_extensions)

    p = sub.add_parser("argument", help="argument commands")
    asub = p.add_subparsers(dest="action", required=True)
    q = asub.add_parser("check", help="construct an argument and print its profile")
    q.add_argument("file")
    q.set_defaults(func=cmd_argument_check)

    p = sub.add_parser("relate", help="relation profiles between two arguments")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_relate)

    p = sub.add_parser("map", help="argument-map commands")
    msub = p.add_subparsers(dest="action", required=True)
    q = msub.add_parser("instantiate", help="assign default arguments to map nodes")
    q.add_argument("map")
    q.add_argument("--translation", required=True)
    q.add_argument("--method", choices=["premise-atomic"], default="premise-atomic")
    q.add_argument("-o", "--output")
    q.set_defaults(func=cmd_map_instantiate)
    q = msub.add_parser("validate", help="check arc labels against an instantiation")
    q.add_argument("imap")
    q.add_argument("--policy")
    q.add_argument("--pretty", action="store_true", help="print a table instead of JSON")
    q.set_defaults(func=cmd_map_validate)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors; here 2 means an unsatisfied arc
        return EXIT_OK if exc.code in (0, None) else EXIT_INPUT
    report = Report(argv)
    try:
        code = args.func(args, report)
    except CommandError as exc:
        code, report.error = exc.code, str(exc)
    except EnumerationLimitExceeded as exc:
        code, report.error = EXIT_LIMIT, str(exc)
    except NotSingular as exc:
        code, report.error = EXIT_ARG_NOT_SINGULAR, str(exc)
    except (MissingTranslation, NonAtomicTranslation) as exc:
        code, report.error = EXIT_TRANSLATION, str(exc)
    except ValueError as exc:
        # parse and schema errors, invalid maps
        code, report.error = EXIT_INPUT, str(exc)
    if report.error is not None:
        print(f"defarg: {report.error}", file=sys.stderr)
    if getattr(args, "pretty", False) and report.result is not None:
        print(render_validation_table(report))
    else:
        print(ser.dump_json(report.to_json()))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
