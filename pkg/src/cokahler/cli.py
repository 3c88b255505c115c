"""Command line entry point: ``cokahler analyze`` and ``cokahler corpus``."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

from .errors import CoKahlerError, CorpusMismatchError, ParseError
from .report import CHECKS, corpus, parse_input, parse_omega, render, run_pipeline

EXIT_OK, EXIT_INVALID, EXIT_CHECK_FAILED = 0, 1, 2


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load_omega(path: str):
    try:
        doc = json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if isinstance(doc, dict):
        doc = doc.get("omega")
    return parse_omega(doc)


def cmd_analyze(args) -> int:
    spec = parse_input(_read(args.input))
    if args.omega:
        omega = _load_omega(args.omega)
        if len(omega) != 2 * spec.n:
            raise ParseError(f"--omega: expected a {2 * spec.n}x{2 * spec.n} matrix")
        spec = replace(spec, omega=omega)
    if args.checks:
        names = tuple(c.strip() for c in args.checks.split(",") if c.strip())
        unknown = [c for c in names if c not in CHECKS]
        if unknown:
            raise ParseError(f"--checks: unknown check(s) {unknown}; known: {list(CHECKS)}")
        spec = replace(spec, checks=names)
    report = run_pipeline(spec)
    sys.stdout.write(render(report, args.format))
    return EXIT_CHECK_FAILED if report.failed_checks else EXIT_OK


def cmd_corpus(args) -> int:
    try:
        results = corpus(args.name)
    except CorpusMismatchError as exc:
        print(f"corpus mismatch:\n{exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    failed = False
    if args.format == "json":
        doc = {entry.name: rep.to_dict() for entry, rep in results}
        sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        for entry, rep in results:
            sys.stdout.write(f"== {entry.name} ==\n")
            sys.stdout.write(render(rep, "text"))
    for _, rep in results:
        failed = failed or bool(rep.failed_checks)
    return EXIT_CHECK_FAILED if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cokahler",
        description="Exact invariants of co-Kahler mapping tori of flat tori.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="analyze one monodromy matrix")
    p.add_argument("--input", required=True, help="JSON input document ('-' for stdin)")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--omega", help="JSON file with a skew integer matrix overriding omega")
    p.add_argument("--checks", help="comma-separated subset of: " + ", ".join(CHECKS))
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("corpus", help="run the built-in examples")
    p.add_argument("--name", default="all",
                   help="cdm, catmap, mp(N), identity(N) or all (default)")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except CoKahlerError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
