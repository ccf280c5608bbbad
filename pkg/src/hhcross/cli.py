"""Command line front end.

    hhcross group-info PROBLEM.toml
    hhcross hh-basis PROBLEM.toml --degree Q [--poly-degree D]
    hhcross multiply PROBLEM.toml A.json B.json [--oracle] [-o OUT.json]
    hhcross invariant-project PROBLEM.toml A.json [-o OUT.json]
    hhcross verify PROBLEM.toml [--property NAME ...] [--trials N] [--seed S]
    hhcross suggest-prime PROBLEM.toml [--min-char K]

Exit status: 0 on success, 1 when a verification property fails, 2 on
bad input (unreadable files, mismatched contexts, invalid arguments).
All output is deterministic for fixed inputs and seed.
"""

from __future__ import annotations

import argparse
import sys
from math import comb

from .errors import AlgebraError
from .groups import suggest_prime
from .hhalgebra import (
    ProductStats,
    invariant_project,
    product,
    random_class,
    subsets_of_size,
)
from .io import build_group, class_to_dict, dumps, group_fingerprint, load_class, load_problem
from .multilinear import bits_of
from .oracle import OracleStats, count_monomials, oracle_product
from .polyring import poly_str
from .symplectic import make_symplectic_ctx
from .verify import PROPERTIES, run_properties


def _load(args):
    spec = load_problem(args.problem)
    group = build_group(spec)
    sctx = None
    if spec.omega is not None:
        sctx = make_symplectic_ctx(group, [list(r) for r in spec.omega])
    return spec, group, sctx


def cmd_group_info(args) -> int:
    spec, group, sctx = _load(args)
    print(f"problem  {spec.name}")
    print(f"p        {group.p}")
    print(f"dim      {group.n}")
    print(f"order    {group.size}")
    print(f"exponent {group.exponent}")
    print(f"id       {group_fingerprint(group)}")
    print(f"form     {'yes' if sctx is not None else 'no'}")
    print("elements (index: order, fixed dim, moving dim, eigenvalues):")
    for g in range(group.size):
        fr = group.frames[g]
        eig = ",".join(str(int(v)) for v in fr.eigenvalues)
        print(
            f"  {g:3d}: order {group.orders[g]}, fixed {group.m(g)}, "
            f"moving {group.d(g)}, eigenvalues ({eig})"
        )
    supported = sum(
        1
        for g in range(group.size)
        for h in range(group.size)
        if group.supported[g][h]
    )
    print(f"supported pairs: {supported} of {group.size * group.size}")
    return 0


def cmd_hh_basis(args) -> int:
    spec, group, sctx = _load(args)
    q = args.degree
    if not 0 <= q <= group.n:
        print(f"degree must lie in [0, {group.n}]", file=sys.stderr)
        return 2
    print(f"problem {spec.name}: graded piece in degree {q}")
    total = 0
    for g in range(group.size):
        m_g, d_g = group.m(g), group.d(g)
        if not 0 <= q - d_g <= m_g:
            print(f"  element {g:3d}: empty (moving dim {d_g})")
            continue
        tangent_count = comb(m_g, q - d_g)
        if args.poly_degree is None:
            print(
                f"  element {g:3d}: {tangent_count} tangent subset(s) "
                f"x polynomials on a {m_g}-dim fixed space"
            )
            total += tangent_count
        else:
            dim = tangent_count * count_monomials(args.poly_degree, m_g)
            print(
                f"  element {g:3d}: dimension {dim} at coefficient degree {args.poly_degree}"
            )
            total += dim
    if args.poly_degree is None:
        print(f"total tangent subsets: {total}")
    else:
        print(f"total dimension before averaging: {total}")
        inv = _invariant_dimension(group, q, args.poly_degree)
        print(f"invariant dimension: {inv}")
    return 0


def _invariant_dimension(group, q: int, d_poly: int) -> int:
    """Rank of the averaging projector on the graded piece (q, D)."""
    from .linalg import rank
    from .oracle import monomials
    import numpy as np
    from .polyring import poly
    from .hhalgebra import HHClass

    basis = []
    for g in range(group.size):
        m_g, d_g = group.m(g), group.d(g)
        if not 0 <= q - d_g <= m_g:
            continue
        for s in subsets_of_size(m_g, q - d_g):
            for e in monomials(m_g, d_poly):
                basis.append((g, s, e))
    if not basis:
        return 0
    index = {key: k for k, key in enumerate(basis)}
    rows = []
    for g, s, e in basis:
        cls = HHClass(q, {g: {s: poly(group.m(g), {e: 1}, group.p)}})
        pr = invariant_project(group, cls)
        row = [0] * len(basis)
        for g2, sd in pr.terms.items():
            for s2, f in sd.items():
                for e2, c in f.terms.items():
                    row[index[(g2, s2, e2)]] = c
        rows.append(row)
    return rank(np.array(rows, dtype=np.int64), group.p)


def _print_class(group, a) -> None:
    print(f"degree {a.degree}, {sum(len(sd) for sd in a.terms.values())} term(s)")
    for g in sorted(a.terms):
        for mask in sorted(a.terms[g]):
            tangent = ",".join(str(b) for b in bits_of(mask)) or "-"
            print(f"  element {g}, tangent [{tangent}]: {poly_str(a.terms[g][mask])}")


def cmd_multiply(args) -> int:
    spec, group, sctx = _load(args)
    a = load_class(group, args.a)
    b = load_class(group, args.b)
    if args.oracle:
        stats = OracleStats()
        result = oracle_product(group, a, b, stats)
        route = "cochain route"
    else:
        stats = ProductStats()
        result = product(group, a, b, stats)
        route = "closed form"
    print(f"{route}: degree {a.degree} x degree {b.degree}")
    _print_class(group, result)
    for key, val in sorted(stats.as_dict().items()):
        print(f"  {key}: {val}")
    if args.out:
        from .io import save_class

        save_class(group, result, args.out)
        print(f"wrote {args.out}")
    return 0


def cmd_invariant_project(args) -> int:
    spec, group, sctx = _load(args)
    a = load_class(group, args.a)
    result = invariant_project(group, a)
    _print_class(group, result)
    if args.out:
        from .io import save_class

        save_class(group, result, args.out)
        print(f"wrote {args.out}")
    return 0


def cmd_verify(args) -> int:
    spec, group, sctx = _load(args)
    names = args.properties or None
    reports = run_properties(group, sctx, names, trials=args.trials, seed=args.seed)
    print(f"problem {spec.name}  (p={group.p}, dim={group.n}, order={group.size})")
    print(f"trials per property: {args.trials}, seed: {args.seed}")
    for rep in reports:
        print(rep.line())
    hard_failures = [r for r in reports if r.status == "failed" and not r.informational]
    passed = sum(1 for r in reports if r.status == "passed")
    skipped = sum(1 for r in reports if r.status == "skipped")
    print(
        f"summary: {passed} passed, {len(hard_failures)} failed, {skipped} skipped, "
        f"{len(reports)} total"
    )
    return 1 if hard_failures else 0


def cmd_suggest_prime(args) -> int:
    spec = load_problem(args.problem)
    p = suggest_prime(
        [list(map(list, g)) for g in spec.generators], spec.dim, min_char=args.min_char
    )
    print(f"problem {spec.name}: smallest usable characteristic >= {args.min_char}: {p}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hhcross",
        description="exact product engine for group-crossed polynomial cohomology",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("group-info", help="summarize the group a problem file defines")
    sp.add_argument("problem")
    sp.set_defaults(fn=cmd_group_info)

    sp = sub.add_parser("hh-basis", help="graded dimensions in one degree")
    sp.add_argument("problem")
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--poly-degree", type=int, default=None)
    sp.set_defaults(fn=cmd_hh_basis)

    sp = sub.add_parser("multiply", help="multiply two class files")
    sp.add_argument("problem")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("--oracle", action="store_true", help="use the cochain route")
    sp.add_argument("-o", "--out", default=None, help="write the product to a class file")
    sp.set_defaults(fn=cmd_multiply)

    sp = sub.add_parser("invariant-project", help="average a class file over the group")
    sp.add_argument("problem")
    sp.add_argument("a")
    sp.add_argument("-o", "--out", default=None)
    sp.set_defaults(fn=cmd_invariant_project)

    sp = sub.add_parser("verify", help="run property checks against a problem")
    sp.add_argument("problem")
    sp.add_argument(
        "--property",
        dest="properties",
        action="append",
        choices=sorted(PROPERTIES),
        help="run one property (repeatable); default is all",
    )
    sp.add_argument("--trials", type=int, default=25)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("suggest-prime", help="smallest characteristic the model allows")
    sp.add_argument("problem")
    sp.add_argument("--min-char", type=int, default=2)
    sp.set_defaults(fn=cmd_suggest_prime)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except AlgebraError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
