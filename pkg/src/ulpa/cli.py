"""Command line interface: ``ulpa <command> FILE ...``.

Exit codes: 0 ok, 1 parse or validation error, 2 undefined or unsupported
operation, 3 nothing found within the search bound, 4 cross-check disagreement.
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import NotFoundWithinDepth, eq, inner_inverse, normalize
from .document import DocumentError, emit_document, emit_dot, load_document
from .expr import ParseError, UnknownName, format_element, format_path, parse_element, parse_path, parse_poly
from .field import Field
from .groupoid import (GroupoidPoint, InvalidPoint, SinkError, factor_positive, pi_G, recompose,
                       require_sink_free, st_eval)
from .algebra import Algebra
from .modules import ChenModule, IrreduciblePoly, UnsupportedModule
from .paths import ShiftedTail
from .skew import build_skew
from .structure import report, report_dict, report_text

EXIT_OK, EXIT_PARSE, EXIT_UNSUPPORTED, EXIT_NOT_FOUND, EXIT_CROSS = 0, 1, 2, 3, 4


class CrossCheckFailed(RuntimeError):
    pass


def _write(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _algebra(args) -> Algebra:
    return Algebra(load_document(args.file), Field.parse(args.field))


def _cross(ok: bool, what: str):
    if not ok:
        raise CrossCheckFailed(f"groupoid model disagrees on {what}")


# -- commands ----------------------------------------------------------------------------

def cmd_analyze(args):
    U = load_document(args.file)
    rep = report(U)
    if args.json:
        _write(json.dumps(report_dict(U, rep), indent=2, sort_keys=True) + "\n", args.out)
    else:
        _write(report_text(U, rep), args.out)


def cmd_reduce(args):
    alg = _algebra(args)
    a = parse_element(alg, args.expr)
    if args.cross_check:
        _cross(pi_G(a) == pi_G(normalize(a)), "the normal form")
    _write(format_element(a) + "\n", None)


def cmd_eq(args):
    alg = _algebra(args)
    a, b = parse_element(alg, args.expr1), parse_element(alg, args.expr2)
    res = eq(a, b)
    if args.cross_check:
        _cross((pi_G(a) == pi_G(b)) == res, "equality")
    _write(("true" if res else "false") + "\n", None)


def cmd_mul(args):
    alg = _algebra(args)
    a, b = parse_element(alg, args.expr1), parse_element(alg, args.expr2)
    ab = a * b
    if args.cross_check:
        _cross(pi_G(ab) == pi_G(a) * pi_G(b), "the product")
    _write(format_element(ab) + "\n", None)


def cmd_skew(args):
    U = load_document(args.file)
    if args.N < 1:
        raise UnsupportedModule("window radius must be at least 1")
    W = build_skew(U, args.N, decreasing=not args.increasing)
    _write(emit_document(W.graph), args.out)


def cmd_dot(args):
    _write(emit_dot(load_document(args.file)), args.out)


def _tail_for(module: ChenModule, q) -> ShiftedTail:
    base = module.base
    if not base.is_periodic or not q.is_periodic:
        raise UnsupportedModule("basis paths must be eventually periodic")
    tail = q.drop(len(q.prefix))
    for m in range(len(base.prefix), len(base.prefix) + len(base.cycle)):
        if base.drop(m) == tail:
            return module.tail(q.prefix, m)
    raise UnsupportedModule("the vector path is not tail equivalent to the base")


def format_vector(module: ChenModule, v) -> str:
    U = module.U
    if not v.terms:
        return "0"
    items = []
    for key, c in v.terms.items():
        st, j = (key, None) if module.twist is None else key
        items.append((st.sort_key(), j, st, c))
    items.sort(key=lambda t: (t[0], t[1] or 0))
    out = []
    for i, (_, j, st, c) in enumerate(items):
        neg = module.field.prime is None and c < 0
        mag = -c if neg else c
        body = "(" + format_path(U, st.realize()) + ")"
        if j is not None:
            body += f" t^{j}"
        if mag != 1:
            body = f"{mag}*{body}"
        out.append((("-" if neg else "") if i == 0 else (" - " if neg else " + ")) + body)
    return "".join(out)


def cmd_module_act(args):
    alg = _algebra(args)
    U = alg.U
    if args.base.strip().startswith("r("):
        raise UnsupportedModule("V_{r(x)} needs an infinite emitter x; finite ultragraphs have none")
    require_sink_free(U)
    base = parse_path(U, args.base)
    twist = IrreduciblePoly.make(parse_poly(args.twist), alg.field) if args.twist else None
    module = ChenModule(U, base, twist, alg.field)
    q = parse_path(U, args.at) if args.at else base
    vec = module.basis(_tail_for(module, q), 0)
    a = parse_element(module.alg, args.expr)
    _write(format_vector(module, module.act_elem(a, vec)) + "\n", None)


def cmd_inner_inverse(args):
    alg = _algebra(args)
    x = parse_element(alg, args.expr)
    if not normalize(x).terms or len(normalize(x).degrees) != 1:
        raise UnsupportedModule("x must be a nonzero homogeneous element")
    y = inner_inverse(x, args.depth)
    _write(format_element(y) + "\n", None)


def _point(U, q: str, k: int, p: str) -> GroupoidPoint:
    require_sink_free(U)
    g = GroupoidPoint(parse_path(U, q), k, parse_path(U, p))
    g.check(U)
    return g


def _fmt_point(U, g: GroupoidPoint) -> str:
    return f"({format_path(U, g.q)}, {g.k}, {format_path(U, g.p)})"


def cmd_factor(args):
    U = load_document(args.file)
    g = _point(U, args.q, args.k, args.p)
    if g.k <= 0:
        raise UnsupportedModule("factor needs a positive degree")
    parts = factor_positive(U, g)
    if recompose(parts) != g:
        raise CrossCheckFailed("factors do not recompose to the input")
    _write("".join(_fmt_point(U, h) + "\n" for h in parts), None)


def cmd_groupoid_eval(args):
    alg = _algebra(args)
    g = _point(alg.U, args.q, args.k, args.p)
    a = parse_element(alg, args.expr)
    _write(f"{st_eval(pi_G(a), g)}\n", None)


# -- parser --------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ulpa", description="Leavitt path algebras of finite ultragraphs")
    ap.add_argument("--field", default="q", help="coefficient field: q (default) or fp:<prime>")
    sub = ap.add_subparsers(dest="command", required=True)

    def cmd(name, fn, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("file", help="ultragraph document (JSON)")
        p.set_defaults(fn=fn)
        return p

    p = cmd("analyze", cmd_analyze, "structure report")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("-o", "--out")
    p = cmd("reduce", cmd_reduce, "print the normal form")
    p.add_argument("expr")
    p.add_argument("--cross-check", action="store_true")
    for name, fn, help in (("eq", cmd_eq, "decide equality"), ("mul", cmd_mul, "multiply")):
        p = cmd(name, fn, help)
        p.add_argument("expr1")
        p.add_argument("expr2")
        p.add_argument("--cross-check", action="store_true")
    p = cmd("skew", cmd_skew, "skew-product window as a document")
    p.add_argument("N", type=int)
    p.add_argument("--increasing", action="store_true", help="edges raise the level instead")
    p.add_argument("-o", "--out")
    p = cmd("dot", cmd_dot, "Graphviz export")
    p.add_argument("-o", "--out")
    p = cmd("module-act", cmd_module_act, "act on a Chen module basis vector")
    p.add_argument("base", help="base path prefix|cycle")
    p.add_argument("expr")
    p.add_argument("--twist", help="irreducible polynomial in t, e.g. t^2-t-1")
    p.add_argument("--at", help="basis vector path (default: the base)")
    p = cmd("inner-inverse", cmd_inner_inverse, "find y with xyx = x")
    p.add_argument("expr")
    p.add_argument("--depth", type=int, default=4)
    p = cmd("factor", cmd_factor, "factor an arrow into degree-1 arrows")
    p.add_argument("q")
    p.add_argument("k", type=int)
    p.add_argument("p")
    p = cmd("groupoid-eval", cmd_groupoid_eval, "evaluate the groupoid image at an arrow")
    p.add_argument("expr")
    p.add_argument("q")
    p.add_argument("k", type=int)
    p.add_argument("p")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.fn(args)
    except DocumentError as exc:
        for d in exc.diagnostics:
            print(f"error: {d}", file=sys.stderr)
        return EXIT_PARSE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UnknownName as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except NotFoundWithinDepth as exc:
        print(f"not found: {exc}", file=sys.stderr)
        return EXIT_NOT_FOUND
    except CrossCheckFailed as exc:
        print(f"cross-check failed: {exc}", file=sys.stderr)
        return EXIT_CROSS
    except (SinkError, UnsupportedModule, InvalidPoint) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
