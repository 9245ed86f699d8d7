"""Command-line entry point: ``eofragile analyze|translate|refine|bench``.

Exit codes: 0 clean, 1 defects found, 2 analysis error, 64 usage error.
Diagnostics go to stderr; reports and programs go to stdout or ``--output``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources
from pathlib import Path

from . import __version__
from .analysis import detect_cycles, format_reports
from .bench import ANALYZERS, render_json, render_markdown, run_suite
from .eo import pretty
from .errors import EoFragileError
from .mini import parse_mini_oo, translate
from .model import build_context, dump_tree, resolve
from .pipeline import load_program, package_for
from .refine import Unanticipated, apply_static_forms, classify_cycle, inlinable_forms

EXIT_CLEAN, EXIT_DEFECTS, EXIT_ERROR, EXIT_USAGE = 0, 1, 2, 64
PACKAGE_ENV = "EO_FRAGILE_PACKAGE"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_help(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def schema_path(name: str):
    """Location of a bundled JSON schema, e.g. ``report.schema.json``."""
    return resources.files("eofragile") / "schemas" / name


def _parser():
    p = _Parser(prog="eofragile", description="Detect unanticipated mutual recursion in EO programs.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser, metavar="COMMAND")

    a = sub.add_parser("analyze", help="report cross-object call cycles")
    a.add_argument("inputs", nargs="+", metavar="FILE", help=".eo or .mini files forming one context")
    a.add_argument("--package", help="package prefix for every file (default: +package line or file stem)")
    a.add_argument("--format", choices=("text", "json"), default="text")
    a.add_argument("--dump-tree", choices=("partial", "resolved"),
                   help="print the object tree instead of the reports")
    a.add_argument("-o", "--output", help="write to this file instead of stdout")

    t = sub.add_parser("translate", help="translate a mini-OO file to EO")
    t.add_argument("input", metavar="FILE")
    t.add_argument("--package", help="emit a +package line")
    t.add_argument("-o", "--output")

    r = sub.add_parser("refine", help="fix dynamic calls of one object statically")
    r.add_argument("input", metavar="FILE")
    r.add_argument("--object", required=True, metavar="FQN", help="object whose calls are fixed")
    r.add_argument("--all", action="store_true",
                   help="fix every inlinable call, not only the witnesses of reported cycles")
    r.add_argument("--package")
    r.add_argument("-o", "--output")

    b = sub.add_parser("bench", help="run the benchmark suite")
    b.add_argument("--tests", required=True, metavar="DIR")
    b.add_argument("--out", default=".", metavar="DIR", help="directory for report.md / report.json")
    b.add_argument("--format", choices=("md", "json", "both"), default="both")
    b.add_argument("--jobs", type=int, default=1, metavar="N")
    b.add_argument("--analyzers", default=",".join(ANALYZERS),
                   help="comma-separated subset of: " + ", ".join(ANALYZERS))
    b.add_argument("--compare", action="append", default=[], metavar="JSON",
                   help="outcomes of another tool to list alongside (repeatable)")
    return p


def _package(args):
    if args.package is not None:
        return args.package
    return os.environ.get(PACKAGE_ENV)


def _read(path):
    return Path(path).read_text(encoding="utf-8")


def _emit(text, output):
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _diagnose(exc):
    if isinstance(exc, EoFragileError):
        where = f"{exc.span}: " if exc.span else ""
        print(f"{where}error: {exc.message}", file=sys.stderr)
    else:
        print(f"error: {exc}", file=sys.stderr)


def _context(paths, package):
    units = []
    for path in paths:
        program = load_program(_read(path), str(path))
        units.append((program, package_for(program, path, package)))
    return build_context(units)


def cmd_analyze(args):
    partial = _context(args.inputs, _package(args))
    if args.dump_tree == "partial":
        _emit(dump_tree(partial), args.output)
        return EXIT_CLEAN
    root = resolve(partial)
    if args.dump_tree == "resolved":
        _emit(dump_tree(root), args.output)
        return EXIT_CLEAN
    reports = detect_cycles(root)
    if args.format == "json":
        doc = {"defects": [{
            "object": r.object_fqn,
            "message": r.one_line(),
            "chain": [{"method": c.method_fqn, "redefined_in": c.redefined_in} for c in r.chain],
        } for r in reports]}
        _emit(json.dumps(doc, indent=2) + "\n", args.output)
    else:
        _emit(format_reports(reports), args.output)
    return EXIT_DEFECTS if reports else EXIT_CLEAN


def cmd_translate(args):
    classes = parse_mini_oo(_read(args.input), args.input)
    _emit(translate(classes, _package(args)), args.output)
    return EXIT_CLEAN


def cmd_refine(args):
    root = resolve(_context([args.input], _package(args)))
    node = root.find(args.object)
    if node is None:
        raise UsageError(f"no object {args.object!r} in {args.input}")
    if args.all:
        forms = inlinable_forms(node, root)
    else:
        forms = []
        for report in detect_cycles(root):
            verdict = classify_cycle(report, root)
            if (isinstance(verdict, Unanticipated)
                    and verdict.witness.candidate.enclosing_object_fqn == node.fqn
                    and verdict.witness not in forms):
                forms.append(verdict.witness)
    _emit(pretty(apply_static_forms(root, forms)), args.output)
    return EXIT_CLEAN


def cmd_bench(args):
    analyzers = [a.strip() for a in args.analyzers.split(",") if a.strip()]
    unknown = [a for a in analyzers if a not in ANALYZERS]
    if unknown or not analyzers:
        raise UsageError(f"unknown analyzer(s): {', '.join(unknown) or '(none)'}")
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    tests = Path(args.tests)
    if not tests.is_dir():
        raise FileNotFoundError(f"no such directory: {tests}")
    suite = run_suite(tests, analyzers, jobs=args.jobs, compare=args.compare)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.format in ("md", "both"):
        (out / "report.md").write_text(render_markdown(suite), encoding="utf-8")
    if args.format in ("json", "both"):
        (out / "report.json").write_text(render_json(suite), encoding="utf-8")
    for row in suite.statistics:
        if row.defect == "All":
            print(f"{row.analyzer}: TP={row.tp} TN={row.tn} FP={row.fp} FN={row.fn} "
                  f"ERR={row.err} accuracy={row.accuracy}%", file=sys.stderr)
    return EXIT_CLEAN


COMMANDS = {"analyze": cmd_analyze, "translate": cmd_translate,
            "refine": cmd_refine, "bench": cmd_bench}


def main(argv=None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if args.command is None:
        parser.print_help(sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"eofragile: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (EoFragileError, OSError, UnicodeDecodeError, ValueError) as exc:
        _diagnose(exc)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
