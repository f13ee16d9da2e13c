"""Command-line front end.

Exit codes: 0 computed (or positive verdict), 1 negative or obstructed
verdict, 2 usage error, 3 undecided because a search budget ran out.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import lisca
from .abelian import FiniteAbelianGroup
from .expr import ExprSyntaxError, parse
from .floer import (VSequence, casson_walker_lens, d_lens, d_surgery,
                    label_correspondence)
from .lattice import find_embedding, spec_of
from .lens import LensSum, format_sum, h1
from .lisca import UndecidedError, class_order, cobordant, reduced_form
from .obstruct import (OBSTRUCTED, SurgeryDescription, bounding_report,
                       determinant_min, finite_order_check, homology_obstruction,
                       lens_subgroup_check, metabolizer_report, nonsplit_check)
from .qarith import format_rational

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_UNDECIDED = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _sum(text: str) -> LensSum:
    e = parse(text)
    if not e.is_lens_sum:
        raise UsageError("expected a sum of lens spaces, got %s" % e)
    return e.lens_sum()


def _emit(args, text: str, payload: dict) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _verdict_code(verdict: str) -> int:
    return EXIT_NEGATIVE if verdict == OBSTRUCTED else EXIT_OK


def cmd_reduce(args) -> int:
    X = _sum(args.expr)
    R, trace = reduced_form(X)
    text = format_sum(R, empty="∅ (bounds a Q-homology ball)")
    if args.trace:
        text += "".join("\n  %s: %s -> %s" % (s.rule, " # ".join(map(str, s.consumed)),
                                               " # ".join(map(str, s.produced)) or "∅")
                        for s in trace.steps)
    payload = {"input": str(X), "reduced": format_sum(R, empty="S3"), "bounds": not R}
    if args.trace:
        payload["trace"] = trace.to_json()
    _emit(args, text, payload)
    return EXIT_OK


def cmd_bounds(args) -> int:
    rep = bounding_report(_sum(args.expr))
    R = rep.witness["reduced"]
    text = ("bounds a Q-homology ball" if not rep.obstructed
            else "does not bound a Q-homology ball (reduced form %s)" % R)
    _emit(args, text, rep.to_json())
    return _verdict_code(rep.verdict)


def cmd_cobordant(args) -> int:
    X, Y = _sum(args.expr), _sum(args.other)
    same = cobordant(X, Y)
    RX, RY = reduced_form(X)[0], reduced_form(Y)[0]
    text = ("Q-homology cobordant" if same else
            "not Q-homology cobordant (reduced forms %s and %s)" % (RX, RY))
    _emit(args, text, {"cobordant": same, "reduced": [str(RX), str(RY)]})
    return EXIT_OK if same else EXIT_NEGATIVE


def cmd_order(args) -> int:
    X = _sum(args.expr)
    o = class_order(X)
    _emit(args, str(o), {"order": o, "reduced": str(reduced_form(X)[0])})
    return EXIT_OK


def cmd_h1(args) -> int:
    X = _sum(args.expr)
    G = h1(reduced_form(X)[0]) if args.reduced else h1(X)
    _emit(args, str(G), G.to_json())
    return EXIT_OK


def cmd_embed(args) -> int:
    X = _sum(args.expr)
    spec = spec_of(X)
    res = find_embedding(spec, rank=args.rank, node_budget=args.node_budget, jobs=args.jobs)
    text = res.status
    if args.trace and res.witness is not None:
        text += "".join("\n  " + " ".join("%d" % x for x in v) for v in res.witness.vectors)
    payload = res.to_json()
    payload["chains"] = [list(c) for c in spec.chains]
    payload["rank"] = spec.rank if args.rank is None else args.rank
    _emit(args, text, payload)
    return {"found": EXIT_OK, "absent": EXIT_NEGATIVE, "undecided": EXIT_UNDECIDED}[res.status]


def cmd_cw(args) -> int:
    v = casson_walker_lens(args.p, args.q)
    _emit(args, format_rational(v), {"p": args.p, "q": args.q, "lambda": format_rational(v)})
    return EXIT_OK


def cmd_dinv(args) -> int:
    p, q = args.p, args.q
    if args.surgery:
        V = VSequence(_ints(args.v)) if args.v else VSequence.zero()
        vals = [d_surgery(p, q, V, l) for l in range(p)]
    else:
        vals = [d_lens(p, q, i) for i in range(p)]
    lines = ["%d: %s" % (i, format_rational(x)) for i, x in enumerate(vals)]
    payload = {"p": p, "q": q, "surgery": args.surgery,
               "d": [format_rational(x) for x in vals]}
    if args.surgery and args.trace and p > 1:
        a, b = label_correspondence(p, q)
        lines.append("labels: l -> %d*l + %d (mod %d) in L(%d,%d)" % (a, b, p, p, (-q) % p))
        payload["label_map"] = {"a": a, "b": b}
    _emit(args, "\n".join(lines), payload)
    return EXIT_OK


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError("expected comma-separated integers, got %r" % text)


def cmd_obstruct(args) -> int:
    kind = args.kind
    if kind == "surgery":
        S = SurgeryDescription(args.p, args.q, VSequence(_ints(args.v)), args.g4,
                               True if args.nu_plus else None)
        test = args.test
        if test == "auto":
            test = ("lens-subgroup" if S.q == 1 and S.g4 is not None and args.nu_plus
                    else "finite-order")
        rep = lens_subgroup_check(S) if test == "lens-subgroup" else finite_order_check(S)
    elif kind == "homology":
        rep = homology_obstruction(FiniteAbelianGroup.from_cyclic(_ints(args.h1)), _sum(args.expr))
    elif kind == "nonsplit":
        X = _sum(args.expr)
        if len(X) != 1:
            raise UsageError("obstruct nonsplit needs a single lens space")
        rep = nonsplit_check(args.a, args.b, X.summands[0])
    else:
        e = parse(args.expr)
        rep = metabolizer_report(e.summands())
        if rep.witness["status"] == "undecided":
            _emit(args, "undecided (metabolizer search bound exceeded)", rep.to_json())
            return EXIT_UNDECIDED
    text = "%s (rule: %s)" % (rep.verdict, rep.rule)
    if rep.obstructed and "violated" in rep.witness:
        text += "; violated: %s" % rep.witness["violated"]
    _emit(args, text, rep.to_json())
    return _verdict_code(rep.verdict)


def cmd_detmin(args) -> int:
    X = _sum(args.expr)
    R, det = determinant_min([(L.p, L.q) for L in X.summands])
    knots = " # ".join(("%d*" % n if n > 1 else "") + "K(%d,%d)" % (L.p, L.q)
                       for L, n in sorted(R.counts().items())) or "unknot"
    _emit(args, "%s; det = %d" % (knots, det), {"reduced": str(R), "determinant": det})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for lattice search")
    common.add_argument("--node-budget", type=int, default=None,
                        help="search node budget; exhausting it gives exit code 3")
    common.add_argument("--trace", action="store_true",
                        help="show rewrite steps, embedding witnesses or label maps")

    ap = argparse.ArgumentParser(prog="lenscob", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, helptext, expr=True):
        p = sub.add_parser(name, parents=[common], help=helptext)
        if expr:
            p.add_argument("expr", help='connected sum, e.g. "L(8,5) # -L(2,1)"')
        p.set_defaults(fn=fn)
        return p

    add("reduce", cmd_reduce, "reduced representative of the cobordism class")
    add("bounds", cmd_bounds, "does the sum bound a rational homology ball")
    add("cobordant", cmd_cobordant, "are two sums rationally cobordant").add_argument("other")
    add("order", cmd_order, "order of the class: 1, 2 or infinite")
    add("h1", cmd_h1, "first homology").add_argument(
        "--reduced", action="store_true", help="of the reduced form instead")
    add("embed", cmd_embed, "embed the plumbing lattice in the standard lattice").add_argument(
        "--rank", type=int, default=None, help="target rank (default: lattice rank)")
    for name, fn, h in (("cw", cmd_cw, "Casson-Walker invariant of L(p,q)"),
                        ("dinv", cmd_dinv, "correction terms of L(p,q) or of p/q surgery")):
        p = add(name, fn, h, expr=False)
        p.add_argument("p", type=int)
        p.add_argument("q", type=int)
        if name == "dinv":
            p.add_argument("--surgery", action="store_true",
                           help="p/q surgery on a knot instead of L(p,q)")
            p.add_argument("--v", default=None, help="V-sequence, e.g. 1,0")
    ob = sub.add_parser("obstruct", help="obstruction checks").add_subparsers(
        dest="kind", required=True)

    def add_ob(kind, helptext, expr=True):
        p = ob.add_parser(kind, parents=[common], help=helptext)
        if expr:
            p.add_argument("expr")
        p.set_defaults(fn=cmd_obstruct)
        return p

    p = add_ob("surgery", "V_0 and g_4 bounds for p/q surgery on a knot", expr=False)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, default=1)
    p.add_argument("--v", default="0", help="V-sequence, e.g. 1,0")
    p.add_argument("--g4", type=int, default=None)
    p.add_argument("--nu-plus", action="store_true", help="nu+ is nonzero")
    p.add_argument("--test", choices=["auto", "finite-order", "lens-subgroup"], default="auto",
                   help="auto picks lens-subgroup when q = 1 and --g4, --nu-plus are given")
    add_ob("homology", "H_1 embedding obstruction").add_argument(
        "--h1", required=True, help="cyclic orders of H_1(Y), e.g. 3,3")
    p = add_ob("nonsplit", "splitting of a reduced L(ab,q) as Y_1 # Y_2")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    add_ob("metabolizer", "metabolizer search for lens and surgery sums")
    add("detmin", cmd_detmin, "minimal determinant in the concordance class of 2-bridge sums")
    return ap


_NEG_TERM = re.compile(r"^-\s*(\d+\s*\*\s*)?[LS]\s*\(")


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    # "-L(7,2)" would otherwise be taken for an option
    argv = [" " + a if _NEG_TERM.match(a) else a for a in argv]
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    lisca.R_NODE_BUDGET = args.node_budget
    try:
        return args.fn(args)
    except ExprSyntaxError as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_USAGE
    except UndecidedError as e:
        print("undecided: %s" % e, file=sys.stderr)
        return EXIT_UNDECIDED
    except (UsageError, ValueError) as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_USAGE
    finally:
        lisca.R_NODE_BUDGET = None


if __name__ == "__main__":
    sys.exit(main())
