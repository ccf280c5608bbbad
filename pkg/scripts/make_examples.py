"""Regenerate the sample class files next to the problem files.

Writes, for the swap problem:

* swap_reflection.json -- the degree-1 class carried by the reflection
  (trivial tangent, the moving line as normal, coefficient 1)
* swap_vector.json     -- the degree-1 class at the identity given by the
  first coordinate vector field

Their two products in either order are the worked example the test suite
freezes: they differ by the sign the degrees dictate, and the shared
value is half the invariant vector field on the fixed line.
"""

from pathlib import Path
import sys

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from hhcross.hhalgebra import HHTerm, make_class, product
from hhcross.io import build_group, load_problem, save_class
from hhcross.multilinear import mv, mv_scalar
from hhcross.polyring import poly_const

HERE = Path(__file__).resolve().parent.parent


def main() -> None:
    problems = HERE / "problems"
    spec = load_problem(problems / "swap.toml")
    group = build_group(spec)
    p = group.p
    e, s = 0, 1
    assert group.matrix(s).tolist() == [[0, 1], [1, 0]]

    reflection = make_class(group, 1, [
        HHTerm(
            g=s,
            tangent=mv_scalar(group.m(s), 1, p),
            normal=mv(group.d(s), group.d(s), {1: 1}, p),
            coeff=poly_const(group.m(s), 1, p),
        )
    ])
    vector = make_class(group, 1, [
        HHTerm(
            g=e,
            tangent=mv(group.n, 1, {0b01: 1}, p),
            normal=mv_scalar(0, 1, p),
            coeff=poly_const(group.n, 1, p),
        )
    ])

    save_class(group, reflection, problems / "swap_reflection.json")
    save_class(group, vector, problems / "swap_vector.json")
    save_class(group, product(group, reflection, vector), problems / "swap_product.json")
    for name in ("swap_reflection.json", "swap_vector.json", "swap_product.json"):
        print(f"wrote problems/{name}")


if __name__ == "__main__":
    main()
