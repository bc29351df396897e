"""Command-line interface: build the full-shift diagram, inspect marker
rows, iterate successors, and run decisiveness diagnostics.

Data goes to standard output (or ``--out``); diagnostics and errors go to
standard error.  Exit code 0 means success, 1 a domain error, 2 a usage
error.
"""

from __future__ import annotations

import argparse
import sys

from . import catalog
from .diagram import (BVDParseError, DiagramValidationError, deserialize,
                      parse_path_spec, serialize, to_dot)
from .markers import mark_all_rows, render_marked_word
from .trapezoids import InsufficientWindowError, WidenSchedule, build_diagram
from .vershik import (extension_count, image_diameter_profile, interior_witness,
                      maximal_prefixes, minimal_prefixes, orbit)


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None or out_path == "-":
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _read_diagram(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return deserialize(fh.read())


def _format_diagram(diagram, fmt: str) -> str:
    return to_dot(diagram) if fmt == "dot" else serialize(diagram)


def cmd_build_fullshift(args) -> int:
    schedule = WidenSchedule.parse(args.widths)
    try:
        diagram = build_diagram(args.levels, schedule, args.word_length)
    except InsufficientWindowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print("hint: increase --word-length", file=sys.stderr)
        return 1
    for k in range(1, diagram.depth + 1):
        print(f"V_{k} = {diagram.level_size(k)}")
    _emit(_format_diagram(diagram, args.format), args.out)
    return 0


def cmd_markers(args) -> int:
    mw = mark_all_rows(args.word, args.rows)
    if args.render or args.format == "text":
        print(render_marked_word(mw))
    else:
        for k in range(1, mw.depth + 1):
            row = mw.row(k)
            positions = ",".join(str(p) for p in sorted(row.positions))
            print(f"ROW {k} determined={row.lo}..{row.hi} markers={positions}")
    return 0


def cmd_successor(args) -> int:
    diagram = _read_diagram(args.diagram)
    prefix = parse_path_spec(diagram, args.path)
    seq = orbit(prefix, args.steps)
    for p in seq:
        print(p)
    if len(seq) < args.steps + 1:
        print("MAXIMAL-EXHAUSTED")
    return 0


def cmd_diagnose(args) -> int:
    diagram = _read_diagram(args.diagram)
    k_max = diagram.depth
    for n in range(1, k_max + 1):
        print(f"PREFIXES depth={n} maximal={len(maximal_prefixes(diagram, n))} "
              f"minimal={len(minimal_prefixes(diagram, n))}")
    if k_max >= 2:
        for side in ("max", "min"):
            witnesses = interior_witness(diagram, side, 1, args.probe_depth)
            probe = min(1 + args.probe_depth, k_max)
            status = "candidate" if witnesses else "certified-absent-to-probe"
            print(f"WITNESS side={side} depth=1 probe={probe} "
                  f"count={len(witnesses)} status={status}")
            for p in witnesses:
                print(f"WITNESS-PATH side={side} {p}")
    for side, base in (("max", maximal_prefixes), ("min", minimal_prefixes)):
        isolated = [p for p in sorted(base(diagram, 1), key=lambda q: q.indices())
                    if extension_count(diagram, p) == 1]
        print(f"ISOLATED side={side} depth=1 count={len(isolated)}")
        for p in isolated:
            print(f"ISOLATED-PATH side={side} {p}")
    profile = image_diameter_profile(diagram, args.steps, k_max)
    for n, point in enumerate(profile):
        print(f"PROFILE n={n} diameter={point.diameter:g} undetermined={point.undetermined}")
    return 0


def cmd_catalog(args) -> int:
    diagram = catalog.CONSTRUCTORS[args.name](args.depth)
    _emit(_format_diagram(diagram, args.format), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bratteli",
        description="Ordered Bratteli diagrams: construction, successor dynamics, diagnostics.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-fullshift",
                       help="build the marker-rule diagram of the binary full shift")
    p.add_argument("--levels", "-k", type=int, default=3, help="levels below the root")
    p.add_argument("--word-length", "-L", type=int, default=18, dest="word_length",
                   help="enumeration word length (all 2^L words are scanned)")
    p.add_argument("--widths", default="1", help="comma list of widening rectangle widths")
    p.add_argument("--format", choices=["bvd", "dot"], default="bvd")
    p.add_argument("--out", "-o", default=None, help="output file (default: stdout)")
    p.set_defaults(func=cmd_build_fullshift)

    p = sub.add_parser("markers", help="marker rows of a binary word")
    p.add_argument("--word", required=True)
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--format", choices=["positions", "text"], default="positions",
                   help="position lists or the pictorial text rendering")
    p.add_argument("--render", action="store_true",
                   help="shorthand for --format text")
    p.set_defaults(func=cmd_markers)

    p = sub.add_parser("successor", help="iterate the successor map along a path prefix")
    p.add_argument("diagram", help="BVD file")
    p.add_argument("path", help="path spec i1/i2/.../iN (edge indices per level)")
    p.add_argument("--steps", type=int, default=0)
    p.set_defaults(func=cmd_successor)

    p = sub.add_parser("diagnose", help="extremal-prefix counts, interior witnesses, "
                                        "image-diameter profile")
    p.add_argument("diagram", help="BVD file")
    p.add_argument("--probe-depth", type=int, default=2, dest="probe_depth")
    p.add_argument("--steps", type=int, default=8, help="successor steps in the profile")
    p.set_defaults(func=cmd_diagnose)

    p = sub.add_parser("catalog", help="emit a reference diagram")
    p.add_argument("name", choices=sorted(catalog.CONSTRUCTORS))
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--format", choices=["bvd", "dot"], default="bvd")
    p.add_argument("--out", "-o", default=None)
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "markers" and args.rows < 1:
        parser.error("--rows must be >= 1")
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (BVDParseError, DiagramValidationError, InsufficientWindowError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
