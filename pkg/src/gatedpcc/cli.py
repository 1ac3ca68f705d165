"""Command line: ``gatedpcc scan <recipe>`` and ``gatedpcc check``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .grid import render_grid, write_grid
from .scan import ScanConvergenceError, ScanValidationError, load_scan, run_scan

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_VALIDATION = 2
EXIT_CONVERGENCE = 3


def _positive_int(text):
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gatedpcc", description="Gated photon-coincidence spectra of a TSJ-modulated oscillator.")
    sub = parser.add_subparsers(dest="command", required=True)
    scan = sub.add_parser("scan", help="evaluate a scan recipe on its grid")
    scan.add_argument("config", type=Path, help="TOML recipe (format = \"pcc-scan/1\")")
    scan.add_argument("--format", choices=("csv", "json"), default=None, help="output format (default: recipe, else csv)")
    scan.add_argument("--out", type=Path, default=None, help="output file (default: recipe [output] path, else stdout)")
    scan.add_argument("--threads", type=_positive_int, default=1, help="worker threads; results do not depend on it")
    sub.add_parser("check", help="run the fast self-consistency suite")
    return parser


def _scan(args) -> int:
    try:
        spec = load_scan(args.config)
    except OSError as exc:
        print(f"error: cannot read {args.config}: {exc.strerror}", file=sys.stderr)
        return EXIT_VALIDATION
    except ScanValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    fmt = args.format or spec.output_format
    out = args.out
    if out is None and spec.output:
        out = Path(spec.output)
        if not out.is_absolute():
            out = args.config.parent / out
    try:
        grid = run_scan(spec, threads=args.threads)
    except ScanConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    if out is None:
        sys.stdout.write(render_grid(grid, fmt))
        return EXIT_OK
    try:
        write_grid(grid, out, fmt)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    print(f"wrote {out}", file=sys.stderr)
    return EXIT_OK


def _check() -> int:
    from .checks import run_checks

    results = run_checks()
    for r in results:
        print(r.line())
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAILURE


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "scan":
        return _scan(args)
    return _check()


if __name__ == "__main__":
    sys.exit(main())
