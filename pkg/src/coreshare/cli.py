"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 unsupported
structure (a tree was required).  All numeric output is exact (integers or
p/q rationals); runs are deterministic byte for byte.
"""

from __future__ import annotations

import argparse
import sys

from .cores import (
    is_maximal_weighting,
    max_core_bruteforce,
    maximalize_weights,
    sigma_of_tree,
    tree_core_sizes,
)
from .entropy import MAX_ENTROPY_VERTICES, build_entropy_lp, solve_entropy_lp
from .graphs import Graph, GraphParseError, is_tree, load_graph, root_at
from .scheme import (
    SharesBundle,
    build_scheme,
    deal,
    emit_matrices,
    random_vector,
    reconstruct,
    scheme_from_json,
    scheme_to_json,
    shares_from_json,
    shares_to_json,
    verify_exhaustive,
    verify_linear,
)
from .stars import extract_stars, orient_edges, star_cover_rate_lp, verify_packing

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_INPUT = 2
EXIT_NOT_TREE = 3


class InputError(Exception):
    pass


class NotATreeError(Exception):
    pass


def _rat(q) -> str:
    return str(q)


def _load(path: str) -> Graph:
    try:
        return load_graph(path)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror or e}") from e
    except GraphParseError as e:
        raise InputError(str(e)) from e


def _parse_weights_file(path: str, g: Graph) -> dict[str, int]:
    weights: dict[str, int] = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                parts = line.split()
                if len(parts) != 2:
                    raise InputError(f"{path} line {lineno}: expected '<vertex> <weight>'")
                v, ktext = parts
                if not g.has_vertex(v):
                    raise InputError(f"{path} line {lineno}: unknown vertex {v!r}")
                try:
                    k = int(ktext)
                except ValueError:
                    raise InputError(f"{path} line {lineno}: bad weight {ktext!r}") from None
                if k < 1:
                    raise InputError(f"{path} line {lineno}: non-positive weight {k}")
                weights[v] = k
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror or e}") from e
    return {v: weights.get(v, 1) for v in g.vertices}


def _parse_int_list(text: str, what: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok != ""]
    except ValueError:
        raise InputError(f"bad {what}: {text!r} (expected comma-separated integers)") from None


def cmd_analyze(args) -> int:
    g = _load(args.graph)
    tree = is_tree(g)
    if tree and g.n >= 2:
        c = tree_core_sizes(root_at(g)).global_c
    else:
        if g.n > args.brute_max:
            raise InputError(
                f"graph has {g.n} vertices, above --brute-max {args.brute_max}"
            )
        c, _ = max_core_bruteforce(g, size_cap=args.brute_max)
        if c == 0:
            raise InputError("graph has no cores (no edges)")
    lower = sigma_of_tree(c)
    s = star_cover_rate_lp(g).value
    parts = [
        f"tree={'true' if tree else 'false'}",
        f"c={c}",
        f"lower={_rat(lower)}",
        f"s={_rat(s)}",
    ]
    if args.entropy:
        if g.n > MAX_ENTROPY_VERTICES:
            raise InputError(
                f"graph has {g.n} vertices, above the entropy cap {MAX_ENTROPY_VERTICES}"
            )
        bound, _ = solve_entropy_lp(build_entropy_lp(g))
        parts.append(f"entropy={_rat(bound)}")
    if tree:
        parts.append(f"sigma={_rat(lower)}")
        parts.append(f"rho={_rat(1 / lower)}")
    print(" ".join(parts))
    return EXIT_OK


def cmd_pack(args) -> int:
    g = _load(args.graph)
    if not is_tree(g) or g.n < 2:
        raise NotATreeError(f"{args.graph} is not a tree with at least 2 vertices")
    c = tree_core_sizes(root_at(g)).global_c
    if args.weights:
        w = _parse_weights_file(args.weights, g)
        if not is_maximal_weighting(g, w, c):
            raise InputError(
                f"weights from {args.weights} are not maximal for c={c}"
            )
    else:
        w = {v: g.weight(v) for v in g.vertices}
        if not is_maximal_weighting(g, w, c):
            if any(k != 1 for k in w.values()):
                raise InputError(
                    f"weights embedded in {args.graph} are not maximal for c={c}"
                )
            w = maximalize_weights(g, c)
    try:
        t = root_at(g, args.root)
    except KeyError as e:
        raise InputError(str(e)) from None
    try:
        orientation = orient_edges(t, w, c)
    except ValueError as e:
        raise InputError(str(e)) from None
    for u, v in g.edges:
        print(f"out {u} {v} {orientation.outgoing(u, v)}")
        print(f"out {v} {u} {orientation.outgoing(v, u)}")
    packing = extract_stars(t, orientation)
    report = verify_packing(g, packing, c)
    print(report)
    return EXIT_OK if report.ok else EXIT_VERIFY_FAIL


def _load_scheme(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return scheme_from_json(fh.read())
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror or e}") from e
    except (ValueError, KeyError) as e:
        raise InputError(f"bad scheme file {path}: {e}") from e


def _load_shares(path: str, sch) -> SharesBundle:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return shares_from_json(fh.read(), sch)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror or e}") from e
    except (ValueError, KeyError) as e:
        raise InputError(f"bad shares file {path}: {e}") from e


def cmd_scheme_build(args) -> int:
    g = _load(args.graph)
    if not is_tree(g) or g.n < 2:
        raise NotATreeError(f"{args.graph} is not a tree with at least 2 vertices")
    try:
        sch = build_scheme(g, field_override=args.field, root_override=args.root)
    except (ValueError, KeyError) as e:
        raise InputError(str(e)) from None
    text = scheme_to_json(sch)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(f"c={sch.c} m={sch.m} p={sch.p} max_share={sch.max_share_length}")
    return EXIT_OK


def cmd_scheme_deal(args) -> int:
    sch = _load_scheme(args.scheme)
    secret = _parse_int_list(args.secret, "--secret")
    if args.random is not None:
        randomness = _parse_int_list(args.random, "--random")
    else:
        randomness = list(random_vector(sch.m, sch.p, args.seed))
    try:
        bundle = deal(sch, secret, randomness)
    except ValueError as e:
        raise InputError(str(e)) from None
    text = shares_to_json(sch, bundle)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_scheme_reconstruct(args) -> int:
    sch = _load_scheme(args.scheme)
    bundle = _load_shares(args.shares, sch)
    pair = args.edge.split(",")
    if len(pair) != 2:
        raise InputError(f"--edge wants 'u,v', got {args.edge!r}")
    u, v = pair
    if u not in bundle.shares or v not in bundle.shares:
        raise InputError(f"shares file lacks {u!r} or {v!r}")
    try:
        secret = reconstruct(sch, (u, v), bundle.shares[u], bundle.shares[v])
    except ValueError as e:
        raise InputError(str(e)) from None
    print(",".join(str(x) for x in secret))
    return EXIT_OK


def cmd_scheme_verify(args) -> int:
    sch = _load_scheme(args.scheme)
    report = verify_linear(sch)
    print(report)
    ok = report.ok
    if args.exhaustive:
        try:
            report2 = verify_exhaustive(sch, limit=args.limit)
        except ValueError as e:
            raise InputError(str(e)) from None
        print(report2)
        ok = ok and report2.ok
    return EXIT_OK if ok else EXIT_VERIFY_FAIL


def cmd_scheme_matrices(args) -> int:
    sch = _load_scheme(args.scheme)
    mats = emit_matrices(sch)
    for v in sch.tree.vertices:
        m = mats[v]
        print(f"matrix {v} {m.nrows} {m.ncols}")
        for row in m.rows:
            print(" ".join(str(x) for x in row))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coreshare",
        description="Secret-sharing information-complexity bounds for graphs "
                    "and optimal linear schemes on trees.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_an = sub.add_parser("analyze", help="core bound, star cover rate, entropy bound")
    p_an.add_argument("graph")
    p_an.add_argument("--brute-max", type=int, default=16,
                      help="vertex cap for the brute-force core search (default 16)")
    p_an.add_argument("--entropy", action="store_true",
                      help="also solve the entropy-method LP (n <= 12)")
    p_an.set_defaults(func=cmd_analyze)

    p_pk = sub.add_parser("pack", help="orient a tree and verify its star packing")
    p_pk.add_argument("graph")
    p_pk.add_argument("--weights", help="weights file (vertex weight pairs)")
    p_pk.add_argument("--root", help="root vertex (default: first non-leaf)")
    p_pk.set_defaults(func=cmd_pack)

    p_sc = sub.add_parser("scheme", help="build / use a linear scheme on a tree")
    scsub = p_sc.add_subparsers(dest="scheme_command", required=True)

    p_b = scsub.add_parser("build")
    p_b.add_argument("graph")
    p_b.add_argument("--field", type=int, help="prime field override (>= star count)")
    p_b.add_argument("--root", help="root vertex override")
    p_b.add_argument("-o", "--output", help="scheme file to write (default: stdout)")
    p_b.set_defaults(func=cmd_scheme_build)

    p_d = scsub.add_parser("deal")
    p_d.add_argument("--scheme", required=True)
    p_d.add_argument("--secret", required=True,
                     help="comma-separated secret vector (length c, mod p)")
    group = p_d.add_mutually_exclusive_group(required=True)
    group.add_argument("--random", help="comma-separated randomness (length m)")
    group.add_argument("--seed", type=int,
                       help="seed for the documented deterministic generator")
    p_d.add_argument("-o", "--output", help="shares file to write (default: stdout)")
    p_d.set_defaults(func=cmd_scheme_deal)

    p_r = scsub.add_parser("reconstruct")
    p_r.add_argument("--scheme", required=True)
    p_r.add_argument("--shares", required=True)
    p_r.add_argument("--edge", required=True, help="edge 'u,v' to reconstruct from")
    p_r.set_defaults(func=cmd_scheme_reconstruct)

    p_v = scsub.add_parser("verify")
    p_v.add_argument("--scheme", required=True)
    p_v.add_argument("--exhaustive", action="store_true",
                     help="also enumerate all dealer states (small schemes)")
    p_v.add_argument("--limit", type=int, default=1 << 22,
                     help="cap on p^(c+m) for --exhaustive (default 2^22)")
    p_v.set_defaults(func=cmd_scheme_verify)

    p_m = scsub.add_parser("matrices")
    p_m.add_argument("--scheme", required=True)
    p_m.set_defaults(func=cmd_scheme_matrices)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except NotATreeError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NOT_TREE


if __name__ == "__main__":
    sys.exit(main())
