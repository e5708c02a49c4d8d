"""Command-line front end.

Exit codes: 0 when every check passes, 1 for any input problem (bad
flags, unreadable file, syntax or schema errors, unsupported parameter),
2 when the input is well formed but some verification check fails.
"""

from __future__ import annotations

import argparse
import sys

from .fileformat import FileFormatError, parse_parameter_file
from .params import ParameterError
from .report import analyze_file, render_machine, render_text

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CHECK = 2


class _UsageError(Exception):
    def __init__(self, message):
        self.message = message
        super().__init__(message)


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad usage; 2 is reserved for check failures here
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="packetlift",
        description="Exact component-group and packet-lifting checks for "
                    "parameter description files.")
    sub = parser.add_subparsers(dest="command", required=True)
    an = sub.add_parser("analyze", help="run the full pipeline on a file")
    an.add_argument("file", help="parameter description file, or - for stdin")
    an.add_argument("--format", choices=("text", "machine"), default="text",
                    help="output format (default: text)")
    mode = an.add_mutually_exclusive_group()
    mode.add_argument("--nonarchimedean", dest="nonarchimedean",
                      action="store_true", default=True,
                      help="exact packet counts (default)")
    mode.add_argument("--archimedean", dest="nonarchimedean",
                      action="store_false",
                      help="report counts as upper bounds only")
    an.add_argument("--oracle", action="store_true",
                    help="require a matrix-realization cross-check for "
                         "every parameter")
    an.add_argument("--seed", default=None,
                    help="reserved; rejected (the pipeline is deterministic)")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc.message}", file=sys.stderr)
        return EXIT_INPUT

    if args.seed is not None:
        print("error: --seed is reserved; the pipeline is deterministic and "
              "accepts no randomness", file=sys.stderr)
        return EXIT_INPUT

    try:
        if args.file == "-":
            text = sys.stdin.read()
        else:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        print(f"error: cannot read {args.file}: {exc}", file=sys.stderr)
        return EXIT_INPUT

    try:
        pf = parse_parameter_file(text)
    except FileFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ParameterError as exc:
        # structurally valid file describing an unsupported parameter
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    report = analyze_file(pf, nonarchimedean=args.nonarchimedean,
                          force_oracle=args.oracle)
    render = render_text if args.format == "text" else render_machine
    sys.stdout.write(render(report))

    if report.all_passed:
        return EXIT_OK
    for line in report.failures():
        print(f"check failed: {line}", file=sys.stderr)
    return EXIT_CHECK


if __name__ == "__main__":
    sys.exit(main())
