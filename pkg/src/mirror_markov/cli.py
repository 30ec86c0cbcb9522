"""Command line interface: ``mirror-markov <command> ...``."""

from __future__ import annotations

import argparse
import json
import sys

from . import branches, gmscf, harness, mirrortree, specialize, squaredtree
from .errors import Inconsistent, MirrorMarkovError, Rejected
from .farey import parse_rational
from .polyring import from_json, parse_poly, to_json


def _emit(obj, out: str | None = None):
    text = json.dumps(obj, indent=1)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_tree(args) -> int:
    if args.out or args.format == "json":
        doc = harness.dump_tree(args.kind, args.depth)
        _emit(doc, args.out)
        return 0
    if args.kind == "squared":
        for level in squaredtree.iter_levels(args.depth):
            for n in level:
                print(f"{n.path or '.'}: " + " | ".join(map(str, n.entries)))
    else:
        for level in mirrortree.iter_levels(args.depth):
            for n in level:
                tag = f" [{n.color}]" if args.colors else ""
                print(f"{n.path or '.'}{tag}: " + " | ".join(map(str, n.entries)))
    return 0


def _read_triple(path: str):
    with open(path) as fh:
        data = json.load(fh)
    if isinstance(data, dict):
        data = data["triple"]
    if len(data) != 3:
        raise ValueError("a triple needs exactly three entries")
    return tuple(parse_poly(p) if isinstance(p, str) else from_json(p) for p in data)


def cmd_member(args) -> int:
    triple = _read_triple(args.triple)
    try:
        path = squaredtree.descend(*triple)
    except Rejected as exc:
        print(f"rejected: {exc.reason.value}" + (f" ({exc.detail})" if exc.detail else ""))
        return 1
    print(f"accepted: path {path!r}")
    return 0


def cmd_node(args) -> int:
    if args.kind == "mirror":
        node = mirrortree.node_at(args.path)
        if args.format == "json":
            _emit(mirrortree.node_to_json(node))
        else:
            print(f"path {node.path or '.'} ({node.color})")
            for p in node.entries:
                print(f"  {p}")
    else:
        node = squaredtree.node_at(args.path)
        if args.format == "json":
            _emit({"path": node.path, "triple": [to_json(p) for p in node.entries]})
        else:
            print(f"path {node.path or '.'}")
            for p in node.entries:
                print(f"  {p}")
    return 0


def cmd_verify(args) -> int:
    rep = harness.run_check(args.check, args.depth)
    if args.format == "json":
        _emit(rep.to_json())
    else:
        print(rep)
    return 0 if rep.ok else 1


def cmd_branch(args) -> int:
    b = branches.branch(args.kind, args.n)
    for k, p in enumerate(b.terms):
        print(f"{k}: {p}")
    if not args.verify:
        return 0
    ok = True
    for n in range(1, args.n + 1):
        try:
            (branches.qmarkov_fib if args.kind == branches.FIBONACCI else branches.qmarkov_pell)(n)
        except MirrorMarkovError as exc:
            print(f"q-Markov constant fails at n={n}: {exc}")
            ok = False
        ok &= branches.mirror_identities(n).ok and branches.verify_ratio_cf(args.kind, n)
    print("verified" if ok else "FAILED")
    return 0 if ok else 1


def cmd_cf(args) -> int:
    t = parse_rational(args.t)
    cf = gmscf.gms_cf(t)
    print(cf)
    if args.eval:
        num, den = gmscf.cf_eval(cf)
        _emit({"numerator": to_json(num), "denominator": to_json(den)})
    return 0


def cmd_specialize(args) -> int:
    point = specialize.parse_spec(args.at)
    node = squaredtree.node_at(args.path)
    try:
        vals = specialize.apply(point, node.entries)
    except MirrorMarkovError as exc:
        print(f"{point}: {exc}")
        return 1
    if isinstance(vals, float):
        print(f"{point}: relative residual {vals:.3g}")
    else:
        print(f"{point}: (" + ", ".join(map(str, vals)) + ")")
    return 0


def cmd_search_a(args) -> int:
    try:
        a = harness.search_a_ell(args.ell_path, args.color, args.n_max)
    except Inconsistent as exc:
        print(f"inconsistent at n={exc.n}: got {exc.got}, expected {exc.expected}")
        return 1
    print(f"a = {a}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mirror-markov", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tree", help="print or save a tree")
    p.add_argument("kind", choices=["squared", "mirror"])
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--out")
    p.add_argument("--format", choices=["json", "text"], default="text")
    p.add_argument("--colors", action="store_true", help="show edge colours (mirror tree)")
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser("member", help="decide membership in the squared tree")
    p.add_argument("kind", choices=["squared"])
    p.add_argument("--triple", required=True, help="JSON file with three polynomials")
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("node", help="show the node at a tree path")
    p.add_argument("--path", required=True)
    p.add_argument("--kind", choices=["mirror", "squared"], default="mirror")
    p.add_argument("--format", choices=["json", "text"], default="text")
    p.set_defaults(func=cmd_node)

    p = sub.add_parser("verify", help="run a verification sweep")
    p.add_argument("check", choices=sorted(harness.CHECKS))
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--format", choices=["json", "text"], default="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("branch", help="Fibonacci or Pell branch terms")
    p.add_argument("kind", choices=["fib", "pell"])
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_branch)

    p = sub.add_parser("cf", help="continued fraction for a rational in (0, 1)")
    p.add_argument("--t", required=True)
    p.add_argument("--eval", action="store_true")
    p.set_defaults(func=cmd_cf)

    p = sub.add_parser("specialize", help="evaluate a squared node at a special point")
    p.add_argument("--path", required=True)
    p.add_argument("--at", required=True, help="k=N, q=1, q=i, super or cos:P")
    p.set_defaults(func=cmd_specialize)

    p = sub.add_parser("search-a", help="search for the constant along a fixed-maximum branch")
    p.add_argument("--ell-path", required=True)
    p.add_argument("--color", choices=["blue", "red"], required=True)
    p.add_argument("--n-max", type=int, default=8)
    p.set_defaults(func=cmd_search_a)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "kind", None) in ("fib", "pell"):
        args.kind = branches.FIBONACCI if args.kind == "fib" else branches.PELL
    try:
        return args.func(args)
    except (MirrorMarkovError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
