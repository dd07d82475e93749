"""Command-line front end: ``dendro <command> ...``.

Exit codes: 0 when every asserted check passes, 1 on an assertion
failure, 2 on usage, parse or limit errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from .checks import (CHECKS, CheckReport, Limits, closed_report, default_limits,
                     footprint_report, reproduce_counterexamples, run_check)
from .faces import FaceError, all_subfaces, parse_face
from .heights import DecodeError, HeightError, decode, encode, mono_key, parse_heights
from .tensor import LimitError, TensorError, dendrex_dot, dendrices, render_dendrex, shuffles
from .trees import ParseError, Tree, TreeError, parse_tree, render_dot, render_text

USAGE_ERRORS = (ParseError, TreeError, HeightError, DecodeError, TensorError, KeyError)


def _bool(text: str) -> bool:
    v = text.strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {text!r}")


def export(kind: str, S: Tree | None, T: Tree, fmt: str = "text",
           out: str | Path | None = None) -> list[str]:
    """Render shuffles, dendrices or faces; write one file per object when
    ``out`` is given, named ``<kind>_<index>.<ext>`` in a stable order.
    Returns the rendered objects."""
    if kind == "faces":
        objs = list(all_subfaces(T))
        render = (lambda x, i: render_dot(x, name=f"F{i}")) if fmt == "dot" else \
            (lambda x, i: render_text(x))
    else:
        if S is None:
            raise TreeError(f"{kind} needs both trees")
        objs = list(shuffles(S, T)) if kind == "shuffles" else list(dendrices(S, T))
        render = (lambda x, i: dendrex_dot(x, S, T, name=f"D{i}")) if fmt == "dot" else \
            (lambda x, i: render_dendrex(x, S, T))
    texts = [render(x, i) for i, x in enumerate(objs)]
    if out is not None:
        d = Path(out)
        d.mkdir(parents=True, exist_ok=True)
        ext = "dot" if fmt == "dot" else "txt"
        for i, text in enumerate(texts):
            (d / f"{kind}_{i:03d}.{ext}").write_text(text + "\n")
    return texts


def _print_report(r: CheckReport, max_failures: int | None) -> None:
    for line in r.lines(max_failures):
        print(line)


def cmd_check(args) -> int:
    ids = list(CHECKS) if args.check_id == "all" else [args.check_id]
    if args.check_id != "all" and args.check_id not in CHECKS:
        print(f"unknown check {args.check_id!r}; known: all, {', '.join(CHECKS)}",
              file=sys.stderr)
        return 2
    status = 0
    for cid in ids:
        base = default_limits(cid)
        limits = Limits(
            max_n=base.max_n if args.max_n is None else args.max_n,
            max_vertices=base.max_vertices if args.max_vertices is None else args.max_vertices,
            max_arity=base.max_arity if args.max_arity is None else args.max_arity,
            allow_stumps=args.allow_stumps,
            ceiling=base.ceiling if args.ceiling is None else args.ceiling)
        report = run_check(cid, limits)
        _print_report(report, args.max_failures)
        if not report.passed:
            status = 1
    if args.check_id == "all":
        report = reproduce_counterexamples()
        _print_report(report, args.max_failures)
        if not report.passed:
            status = 1
    return status


def cmd_counterexamples(args) -> int:
    report = reproduce_counterexamples()
    _print_report(report, None)
    return 0 if report.passed else 1


def cmd_report(args) -> int:
    report = footprint_report() if args.kind == "footprints" else closed_report(args.max_n)
    _print_report(report, None)
    return 0


def cmd_export(args) -> int:
    S = parse_tree(args.s) if getattr(args, "s", None) else None
    T = parse_tree(args.t)
    texts = export(args.command, S, T, args.format, args.out)
    if args.out is None:
        print("\n".join(texts))
    else:
        print(f"wrote {len(texts)} files to {args.out}")
    return 0


def cmd_encode(args) -> int:
    T = parse_tree(args.t)
    face = T if args.face in ("id", "identity") else parse_face(T, args.face).image
    key = mono_key(face, T, args.n, parse_heights(args.h))
    print(render_text(encode(key)))
    return 0


def cmd_decode(args) -> int:
    T = parse_tree(args.t)
    key = decode(parse_tree(args.r), T, args.n, closed=args.closed)
    print(f"face: {render_text(key.face)}")
    print(f"h: {key.height}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dendro", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="run a named check over a catalog of trees")
    c.add_argument("check_id", help="one of: all, " + ", ".join(CHECKS))
    c.add_argument("--max-n", type=int)
    c.add_argument("--max-vertices", type=int)
    c.add_argument("--max-arity", type=int)
    c.add_argument("--allow-stumps", type=_bool, metavar="BOOL")
    c.add_argument("--ceiling", type=int, help="largest estimated instance count")
    c.add_argument("--max-failures", type=int, default=50, help="failure lines to print")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("counterexamples", help="reproduce the three counterexamples")
    c.set_defaults(func=cmd_counterexamples)

    c = sub.add_parser("report", help="informational reports (never asserted)")
    c.add_argument("kind", choices=["footprints", "closed"])
    c.add_argument("--max-n", type=int, default=2)
    c.set_defaults(func=cmd_report)

    for name in ("shuffles", "dendrices"):
        c = sub.add_parser(name, help=f"list the {name} of S (x) T")
        c.add_argument("--s", required=True, metavar="TREE")
        c.add_argument("--t", required=True, metavar="TREE")
        c.add_argument("--format", choices=["text", "dot"], default="text")
        c.add_argument("--out", metavar="DIR")
        c.set_defaults(func=cmd_export)

    c = sub.add_parser("faces", help="list all faces of a tree")
    c.add_argument("--t", required=True, metavar="TREE")
    c.add_argument("--format", choices=["text", "dot"], default="text")
    c.add_argument("--out", metavar="DIR")
    c.set_defaults(func=cmd_export)

    c = sub.add_parser("encode", help="mono of [n](x)T from a face and height function")
    c.add_argument("--t", required=True, metavar="TREE")
    c.add_argument("--face", default="id", help="'id', a descriptor like inner:y, or an image tree")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--h", required=True, help="heights, e.g. 'a:1;b:2;c:1,3'")
    c.set_defaults(func=cmd_encode)

    c = sub.add_parser("decode", help="face and height function of a dendrex of [n](x)T")
    c.add_argument("--t", required=True, metavar="TREE")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--r", required=True, metavar="DENDREX", help="edges written i|e")
    c.add_argument("--closed", action="store_true", help="first factor is cl[n]")
    c.set_defaults(func=cmd_decode)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except LimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DecodeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1 if args.command == "decode" and "valence" in str(exc) else 2
    except (*USAGE_ERRORS, FaceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
