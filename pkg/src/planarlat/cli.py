"""Command-line interface.

Exit codes: 0 success, 1 a checked property failed, 2 bad input or usage.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from . import census
from .cells import count_pairs, enumerate_cells, maximal_upper_adjacent_pairs
from .diagram import LatticeError, LemmaViolation, is_semimodular, validate
from .expansion import decompose, full_expansion
from .grid import recognize_grid_minus_corners
from .io import LatticeFormatError, emit_dot, emit_lattice, parse_lattice
from .slimming import add_eye, is_slim, slim

OK, PROPERTY_FAILED, BAD_INPUT = 0, 1, 2


class PropertyFailure(Exception):
    pass


def _fmt(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise LatticeFormatError(f"cannot read {path}: {exc.strerror}", 0) from exc
    return parse_lattice(text, validate=False)


def _require_planar(d, out):
    rep = validate(d)
    if not rep.ok:
        for rule, elems in rep.violations:
            print(f"violation: {rule} {[d.label(x) for x in elems]}", file=out)
        raise PropertyFailure("invalid diagram")


def _write(d, path, out):
    text = emit_lattice(d)
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        out.write(text)


def _labels(d, xs):
    return "{" + ", ".join(d.label(x) for x in sorted(xs)) + "}"


# ----------------------------------------------------------------- verbs

def cmd_check(args, out):
    d = _load(args.input)
    p = census.predicate_vector(d)
    if not p["planar"]:
        print("planar=false", file=out)
        _require_planar(d, out)
    keys = ["planar", "distributive", "four_cell", "semimodular", "modular", "slim", "pairs"]
    print(" ".join(f"{k.replace('four_cell', '4-cell')}={_fmt(p[k])}" for k in keys), file=out)


def cmd_slim(args, out):
    d = _load(args.input)
    _require_planar(d, out)
    s, records = slim(d)
    for r in records:
        print(f"# removed {r.removed} from cell {','.join(r.host)} gap {r.position}", file=out)
    _write(s, args.output, out)


def cmd_add_eye(args, out):
    d = _load(args.input)
    _require_planar(d, out)
    cells = [c for c in enumerate_cells(d) if c.is_4cell]
    if not 0 <= args.cell < len(cells):
        raise LatticeFormatError(f"cell index {args.cell} out of range 0..{len(cells) - 1}", 0)
    _write(add_eye(d, cells[args.cell], args.position, args.label), args.output, out)


def _slim_semimodular(d, out):
    _require_planar(d, out)
    if not is_semimodular(d):
        print("not semimodular", file=out)
        raise PropertyFailure("not semimodular")
    if not is_slim(d):
        print("not slim", file=out)
        raise PropertyFailure("not slim")


def cmd_expand(args, out):
    d = _load(args.input)
    _slim_semimodular(d, out)
    fe = full_expansion(d, args.seed_order)
    for k, ex in enumerate(fe.trace, 1):
        ctx = ex.context
        print(
            f"step {k}: pair top={ex.projection.target.label(ctx.pair.top)} "
            f"u={ex.projection.target.label(ctx.pair.u)} size {ex.projection.target.n} -> {ex.base.n} "
            f"pairs {count_pairs(ex.projection.target)} -> {count_pairs(ex.base)}",
            file=out,
        )
    D = fe.distributive
    dec = recognize_grid_minus_corners(D)
    print(f"final: n={D.n} grid={dec.m}x{dec.n} left={dec.left_trace} right={dec.right_trace}", file=out)
    print("kernel: " + " ".join(_labels(D, c) for c in fe.phi.kernel_classes() if len(c) > 1), file=out)
    _write(D, args.output, out)


def cmd_decompose(args, out):
    d = _load(args.input)
    _slim_semimodular(d, out)
    pairs = maximal_upper_adjacent_pairs(d)
    if not pairs:
        print("modular: no upper-adjacent pairs", file=out)
        return
    pair = pairs[args.seed_order % len(pairs)]
    ctx = decompose(d, pair)
    L = d.label
    print(f"pair: top={L(pair.top)} u={L(pair.u)} v={L(pair.v)} w={L(pair.w)}", file=out)
    print(f"C_U: {[L(x) for x in ctx.left.chain]}", file=out)
    print(f"D_U: {[L(x) for x in ctx.right.chain]}", file=out)
    print(f"v+={L(ctx.v_plus)} w+={L(ctx.w_plus)} c+={L(ctx.c_plus)} d+={L(ctx.d_plus)}", file=out)
    for name in "TBIJ":
        print(f"{name}: {_labels(d, getattr(ctx, name))}", file=out)
    print(f"I-bridges: {[(L(x), L(y)) for x, y in ctx.i_bridges]}", file=out)
    print(f"J-bridges: {[(L(x), L(y)) for x, y in ctx.j_bridges]}", file=out)


def cmd_recognize(args, out):
    d = _load(args.input)
    _require_planar(d, out)
    try:
        dec = recognize_grid_minus_corners(d)
    except LatticeError as exc:
        print(str(exc), file=out)
        raise PropertyFailure(str(exc)) from exc
    print(f"grid={dec.m}x{dec.n} left={dec.left_trace} right={dec.right_trace}", file=out)


def cmd_corpus(args, out):
    entries = census.build_corpus(args.max, args.slack)
    os.makedirs(args.out, exist_ok=True)
    failed = 0
    index = ["id\tsize\tcode\tplanar\tsemimodular\tmodular\tdistributive\tslim\tpairs\ttrace\tverified"]
    for k, e in enumerate(entries):
        stem = f"{k:04d}"
        with open(os.path.join(args.out, stem + ".lat"), "w", encoding="utf-8", newline="\n") as fh:
            fh.write(emit_lattice(e.diagram))
        with open(os.path.join(args.out, stem + ".trace.json"), "w", encoding="utf-8") as fh:
            json.dump([t.to_dict() for t in e.traces], fh, indent=1)
        verified = "-"
        if args.verify:
            rep = census.verify_roundtrip(e)
            verified = "ok" if rep.ok else "FAIL:" + ";".join(f"{a}: {b}" for a, b in rep.failures)
            failed += not rep.ok
        p = e.predicates
        index.append(
            "\t".join(
                [stem, str(e.diagram.n), e.code.hex()]
                + [_fmt(p[x]) for x in ("planar", "semimodular", "modular", "distributive", "slim", "pairs")]
                + [stem + ".trace.json", verified]
            )
        )
    with open(os.path.join(args.out, "index.tsv"), "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(index) + "\n")
    print(f"entries={len(entries)} written to {args.out}" + (f" roundtrip_failures={failed}" if args.verify else ""), file=out)
    if failed:
        raise PropertyFailure("round trip failed")


def cmd_crosscheck(args, out):
    rep = census.exhaustive_crosscheck(args.n)
    det = rep.details
    print(f"lattices={det['lattices']} planar_semimodular={det['exhaustive']} corpus={det['constructive']}", file=out)
    for lemma, msg in rep.failures:
        print(f"gap: {lemma} {msg}", file=out)
    print("match" if rep.ok else "MISMATCH", file=out)
    if not rep.ok:
        raise PropertyFailure("crosscheck mismatch")


def cmd_export(args, out):
    d = _load(args.input)
    _require_planar(d, out)
    classes = None
    if args.expand:
        fe = full_expansion(d, args.seed_order)
        classes = [c for c in fe.phi.kernel_classes() if len(c) > 1]
        d = fe.distributive
    text = emit_dot(d, classes)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        out.write(text)


# ------------------------------------------------------------------ parser

def build_parser():
    parser = argparse.ArgumentParser(prog="planarlat", description="Planar semimodular lattice toolkit.")
    parser.add_argument("--seed-order", type=int, default=0, help="index of the maximal pair to expand along")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="verb", required=True, metavar="verb")

    def with_input(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("input")
        return p

    p = with_input("check", "print the predicate vector")
    p.set_defaults(func=cmd_check)
    p = with_input("slim", "remove eyes; writes the slim lattice")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_slim)
    p = with_input("add-eye", "insert an eye into a 4-cell")
    p.add_argument("--cell", type=int, required=True, help="index among 4-cells (sorted by bottom, left atom)")
    p.add_argument("--position", type=int, default=None)
    p.add_argument("--label", default=None)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_add_eye)
    p = with_input("expand", "full expansion to a planar distributive lattice")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_expand)
    p = with_input("decompose", "T, B, I, J decomposition for a maximal pair")
    p.set_defaults(func=cmd_decompose)
    p = with_input("recognize", "grid-minus-corners decomposition")
    p.set_defaults(func=cmd_recognize)
    p = sub.add_parser("corpus", help="build the census corpus on disk")
    p.add_argument("--max", type=int, default=census.MAX_CONSTRUCTIVE)
    p.add_argument("--slack", type=int, default=None)
    p.add_argument("--out", required=True)
    p.add_argument("--verify", action="store_true", help="run the round trip on every entry")
    p.set_defaults(func=cmd_corpus)
    p = sub.add_parser("crosscheck", help="exhaustive enumeration vs corpus")
    p.add_argument("--n", type=int, default=census.MAX_EXHAUSTIVE)
    p.set_defaults(func=cmd_crosscheck)
    p = with_input("export", "DOT drawing")
    p.add_argument("--expand", action="store_true", help="draw the full expansion with its kernel classes")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_export)
    return parser


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code else OK
    if args.seed_order < 0:
        print("--seed-order must be non-negative", file=sys.stderr)
        return BAD_INPUT
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        args.func(args, out)
    except PropertyFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return PROPERTY_FAILED
    except (LemmaViolation, AssertionError) as exc:
        print(f"lemma violation: {exc}", file=sys.stderr)
        return PROPERTY_FAILED
    except LatticeFormatError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except LatticeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    return OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
