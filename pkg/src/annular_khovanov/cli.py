"""Command-line interface.

Usage examples::

    python3 -m annular_khovanov akh diagram.knot --coeff Z --json
    python3 -m annular_khovanov braid-check --braid "3: 1 -2 1" --strict
    python3 -m annular_khovanov ss diagram.knot --filtration winding
    python3 -m annular_khovanov selftest

Exit codes: 0 success, 1 input error (message on stderr), 2 certificate
failure under ``--strict`` or a failing selftest.
"""

from __future__ import annotations

import argparse
import os
import sys
from importlib import resources
from pathlib import Path
from typing import Sequence

from . import acceptance
from .apps import akh, braid_certificate, colored_khr, kh, tkh, unlink_certificate
from .diagram import (DiagramError, SliceSyntaxError, SliceWord, link_data, parse_braid_spec,
                      parse_slice_word)
from .fields import Field
from .homology import Coefficients
from .spectral import (AnticommutationError, cube_filtration, khovanov_cube, pages,
                       winding_filtration)
from .tqft import ANNULAR, PLAIN, assemble


class InputError(Exception):
    """Anything the user can fix: bad flags, unreadable or malformed files."""


def default_corpus_dir() -> Path:
    return Path(str(resources.files("annular_khovanov") / "data" / "corpus"))


def read_diagram(text: str, source: str = "<input>") -> SliceWord:
    """Parse a diagram file.

    Besides the slice format, a file whose first meaningful line is
    ``braid <n> <signed ints>`` is read as a braid closure.
    """
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("braid"):
            parts = line.split()
            if len(parts) < 2:
                raise InputError(f"{source}: 'braid' line needs a strand count")
            return parse_braid_spec(f"{parts[1]}: {' '.join(parts[2:])}")
        break
    try:
        return parse_slice_word(text)
    except SliceSyntaxError as exc:
        raise InputError(f"{source}: {exc}") from None


def load_input(args) -> SliceWord:
    if getattr(args, "braid", None):
        if args.input:
            raise InputError("give either an input file or --braid, not both")
        return parse_braid_spec(args.braid)
    if not args.input:
        raise InputError("no input: pass a diagram file (or '-') or --braid")
    if args.input == "-":
        return read_diagram(sys.stdin.read(), "<stdin>")
    try:
        text = Path(args.input).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {args.input}: {exc.strerror}") from None
    return read_diagram(text, args.input)


def load_corpus(directory: Path) -> dict[str, SliceWord]:
    files = sorted(directory.glob("*.knot")) if directory.is_dir() else []
    if not files:
        raise InputError(f"corpus missing: no .knot files in {directory}")
    return {f.stem: read_diagram(f.read_text(), str(f)) for f in files}


def parse_coeff(text: str) -> Coefficients:
    try:
        return Coefficients.parse(text)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _emit_group(group, args) -> None:
    print(group.to_json() if args.json else group.table(), end="\n" if args.json else "")


def _emit_verdict(verdict, args) -> int:
    if args.json:
        print(verdict.to_json())
    else:
        print(f"{verdict.kind}: {'passed' if verdict.passed else 'failed'}")
    return 2 if args.strict and not verdict.passed else 0


# ---------------------------------------------------------------- commands

def cmd_homology(args) -> int:
    w = load_input(args)
    coeff = parse_coeff(args.coeff)
    mode = PLAIN if args.command == "kh" else args.mode
    if args.debug_dump:
        sys.stderr.write(assemble(w, mode).debug_dump())
    if args.command == "tkh":
        group = tkh(w, coeff)
    elif mode == PLAIN:
        group = kh(w, coeff, workers=args.threads)
    else:
        group = akh(w, coeff, workers=args.threads)
    _emit_group(group, args)
    return 0


def cmd_braid_check(args) -> int:
    return _emit_verdict(braid_certificate(load_input(args)), args)


def cmd_unlink_check(args) -> int:
    w = load_input(args)
    n = args.components if args.components is not None else link_data(w).components
    return _emit_verdict(unlink_certificate(w, n), args)


def cmd_colored(args) -> int:
    w = load_input(args)
    if args.n < 1:
        raise InputError("-n must be at least 1")
    _emit_group(colored_khr(w, args.n), args)
    return 0


def cmd_ss(args) -> int:
    w = load_input(args)
    coeff = parse_coeff(args.coeff)
    if coeff.kind == "Z":
        raise InputError("spectral sequences need field coefficients (Q or Fp)")
    field = Field(coeff.p if coeff.kind == "Fp" else 0)
    if args.filtration == "winding":
        fc = winding_filtration(w, field)
    else:
        convention = "khovanov" if args.filtration == "cube" else "eta"
        try:
            fc = cube_filtration(khovanov_cube(w, args.mode, convention), field)
        except AnticommutationError as exc:
            raise InputError(str(exc)) from None
    result = pages(fc)
    if args.json:
        print(result.to_json())
    else:
        print(result.table(), end="")
    return 0


def _corrupted_sign(v, i):
    return 1


def cmd_selftest(args) -> int:
    words = load_corpus(Path(args.corpus) if args.corpus else default_corpus_dir())
    only = None
    if args.only:
        try:
            only = [int(x) for x in args.only.split(",")]
        except ValueError:
            raise InputError(f"--only expects comma-separated numbers, got {args.only!r}") from None
    sign = _corrupted_sign if args.corrupt_signs else acceptance.edge_sign
    results = acceptance.run_all(words, sign=sign, workers=args.threads, only=only)
    for res in results:
        print(res.line())
    failed = [r.number for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return 2 if failed else 0


# ----------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="annular-khovanov",
        description="Annular Khovanov homology of links in the thickened annulus.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                        help="worker processes for large complexes (default: all cores)")

    diagram = argparse.ArgumentParser(add_help=False)
    diagram.add_argument("input", nargs="?", help="diagram file, or '-' for stdin")
    diagram.add_argument("--braid", metavar='"N: I J ..."',
                         help="use the closure of a braid instead of a file")

    coeff = argparse.ArgumentParser(add_help=False)
    coeff.add_argument("--coeff", default="Z", help="Z, Q, F2 or Fp:<prime> (default Z)")

    strict = argparse.ArgumentParser(add_help=False)
    strict.add_argument("--strict", action="store_true",
                        help="exit with status 2 when the certificate fails")

    for name, help_text in (("akh", "annular Khovanov homology"),
                            ("kh", "Khovanov homology in S^3"),
                            ("tkh", "top winding summand (tangle Khovanov homology)")):
        p = sub.add_parser(name, parents=[diagram, coeff, common], help=help_text)
        p.add_argument("--mode", choices=(ANNULAR, PLAIN), default=ANNULAR)
        p.add_argument("--debug-dump", action="store_true",
                       help="write the assembled complex to stderr")
        p.set_defaults(func=cmd_homology)

    p = sub.add_parser("braid-check", parents=[diagram, strict, common],
                       help="certify whether the tangle is a braid")
    p.set_defaults(func=cmd_braid_check)

    p = sub.add_parser("unlink-check", parents=[diagram, strict, common],
                       help="certify whether the link is an annular unlink")
    p.add_argument("--components", type=int, help="declared number of components")
    p.set_defaults(func=cmd_unlink_check)

    p = sub.add_parser("colored", parents=[diagram, common],
                       help="colored Khovanov homology of a 1-1 tangle (seam width 1)")
    p.add_argument("-n", type=int, default=2, help="cable number (default 2)")
    p.set_defaults(func=cmd_colored)

    p = sub.add_parser("ss", parents=[diagram, common], help="spectral sequence pages")
    p.add_argument("--coeff", default="Q", help="Q, F2 or Fp:<prime> (default Q)")
    p.add_argument("--filtration", choices=("winding", "cube", "cube-eta"), default="winding")
    p.add_argument("--mode", choices=(ANNULAR, PLAIN), default=ANNULAR,
                   help="complex at each cube vertex for the cube filtrations")
    p.set_defaults(func=cmd_ss)

    p = sub.add_parser("selftest", parents=[common], help="run the acceptance criteria")
    p.add_argument("--corpus", help="directory of .knot files (default: bundled corpus)")
    p.add_argument("--only", help="comma-separated criterion numbers")
    p.add_argument("--corrupt-signs", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_selftest)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed the usage message
        return 0 if exc.code == 0 else 1
    if getattr(args, "threads", 1) < 1:
        print("error: --threads must be positive", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except (InputError, DiagramError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
