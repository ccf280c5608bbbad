"""End-to-end walkthrough on the coordinate-swap action.

Builds the group, multiplies the two sample degree-1 classes both ways,
checks the closed form against the cochain route, and averages a class
over the group.  Run from the repository root:

    python scripts/demo.py
"""

from pathlib import Path
import random
import sys

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from hhcross.groups import generate_group
from hhcross.hhalgebra import (
    HHTerm,
    ProductStats,
    invariant_project,
    make_class,
    product,
    random_class,
)
from hhcross.multilinear import bits_of, mv, mv_scalar
from hhcross.oracle import OracleStats, oracle_product
from hhcross.polyring import poly_const, poly_str


def show(group, label, a):
    print(f"{label}: degree {a.degree}")
    if a.is_zero():
        print("   0")
        return
    for g in sorted(a.terms):
        for mask in sorted(a.terms[g]):
            tangent = ",".join(str(b) for b in bits_of(mask)) or "-"
            print(f"   element {g}, tangent [{tangent}], coeff {poly_str(a.terms[g][mask])}")


def main() -> None:
    p = 7
    group = generate_group([[[0, 1], [1, 0]]], p)
    e, s = 0, 1
    print(f"group of order {group.size} at p={p}; reflection frame:")
    print(f"   rows {group.frames[s].basis.tolist()} eigenvalues {group.frames[s].eigenvalues}")

    reflection = make_class(group, 1, [
        HHTerm(g=s, tangent=mv_scalar(1, 1, p), normal=mv(1, 1, {1: 1}, p),
               coeff=poly_const(1, 1, p)),
    ])
    vector = make_class(group, 1, [
        HHTerm(g=e, tangent=mv(2, 1, {0b01: 1}, p), normal=mv_scalar(0, 1, p),
               coeff=poly_const(2, 1, p)),
    ])
    show(group, "reflection class", reflection)
    show(group, "vector class", vector)

    st = ProductStats()
    both = product(group, reflection, vector, st)
    show(group, "reflection * vector (closed form)", both)
    print(f"   stats: {st.as_dict()}")

    ost = OracleStats()
    check = oracle_product(group, reflection, vector, ost)
    show(group, "reflection * vector (cochain route)", check)
    print(f"   stats: {ost.as_dict()}")
    print(f"   routes agree: {both == check}")

    show(group, "vector * reflection", product(group, vector, reflection))

    rng = random.Random(0)
    c = random_class(group, 1, rng)
    show(group, "random degree-1 class", c)
    show(group, "its group average", invariant_project(group, c))


if __name__ == "__main__":
    main()
