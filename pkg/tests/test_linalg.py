import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hhcross.errors import NonDiagonalizable, NotInvertible, OrderMismatch
from hhcross.linalg import (
    as_mat,
    eigenframe,
    fixed_space,
    identity,
    intersection_condition,
    kernel,
    mat_inv,
    mat_mul,
    mat_pow,
    matrix_order,
    rank,
    rref,
    semiinvariant_space,
    subspace_from_rows,
    subspace_intersection,
    symmetrizer,
)
from hhcross.scalars import make_field_ctx

P = 7


def rand_mat(rng, n, p=P):
    return np.array([[rng.randrange(p) for _ in range(n)] for _ in range(n)], dtype=np.int64)


def test_rref_canonical():
    rows, pivots = rref(as_mat([[2, 4], [1, 2]], P), P)
    assert rows.tolist() == [[1, 2]]
    assert pivots == [0]


def test_rank_and_kernel_dimensions():
    m = as_mat([[1, 2, 3], [2, 4, 6], [0, 1, 1]], P)
    r = rank(m, P)
    k = kernel(m, P)
    assert r + len(k) == 3
    for row in k:
        assert not ((m @ row) % P).any()


@given(st.integers(min_value=0, max_value=10_000))
def test_kernel_rows_are_killed(seed):
    import random

    rng = random.Random(seed)
    n = rng.choice([1, 2, 3, 4])
    m = rand_mat(rng, n)
    k = kernel(m, P)
    assert rank(m, P) + len(k) == n
    for row in k:
        assert not ((m @ row) % P).any()


def test_mat_inv_round_trip():
    m = as_mat([[0, 1], [1, 0]], P)
    assert mat_mul(m, mat_inv(m, P), P).tolist() == identity(2).tolist()
    with pytest.raises(NotInvertible):
        mat_inv(as_mat([[1, 1], [1, 1]], P), P)


def test_matrix_order():
    assert matrix_order(as_mat([[0, 1], [1, 0]], P), P) == 2
    assert matrix_order(as_mat([[2, 0], [0, 4]], P), P) == 3
    assert matrix_order(identity(3), P) == 1


def test_mat_pow_matches_iteration():
    m = as_mat([[2, 0], [0, 4]], P)
    acc = identity(2)
    for k in range(6):
        assert mat_pow(m, k, P).tolist() == acc.tolist()
        acc = mat_mul(acc, m, P)


def test_symmetrizer_projects():
    g = as_mat([[0, 1], [1, 0]], P)
    pi = symmetrizer(g, 2, P)
    assert mat_mul(pi, pi, P).tolist() == pi.tolist()
    assert mat_mul(g, pi, P).tolist() == pi.tolist()
    with pytest.raises(OrderMismatch):
        symmetrizer(g, 3, P)


def test_fixed_and_semiinvariant_complement():
    g = as_mat([[0, 1], [1, 0]], P)
    fixed = fixed_space(g, P)
    moving = semiinvariant_space(g, 2, P)
    assert fixed.dim == 1 and moving.dim == 1
    # they meet trivially and fill the plane
    meet = subspace_intersection(fixed, moving, P)
    assert meet.dim == 0


def test_subspace_canonical_equality():
    a = subspace_from_rows([[1, 1], [2, 2]], P, ambient_dim=2)
    b = subspace_from_rows([[3, 3]], P, ambient_dim=2)
    assert a == b
    assert a.dim == 1


def test_eigenframe_swap():
    ctx = make_field_ctx(P, 2)
    fr = eigenframe(as_mat([[0, 1], [1, 0]], P), ctx)
    assert fr.basis.tolist() == [[1, 1], [1, 6]]
    assert fr.eigenvalues == (1, 6)
    assert fr.fixed_dim == 1
    # dual rows evaluate frame vectors to delta
    prods = (fr.dual @ fr.basis.T) % P
    assert prods.tolist() == identity(2).tolist()


def test_eigenframe_fixed_block_first():
    ctx = make_field_ctx(P, 3)
    fr = eigenframe(as_mat([[2, 0], [0, 4]], P), ctx)
    assert fr.fixed_dim == 0
    assert sorted(int(v) for v in fr.eigenvalues) == [2, 4]


def test_eigenframe_rejects_nondiagonalizable():
    ctx = make_field_ctx(P, 6)
    # a unipotent block has all eigenvalues 1 but is not semisimple
    with pytest.raises(NonDiagonalizable):
        eigenframe(as_mat([[1, 1], [0, 1]], P), ctx)


def test_intersection_condition_matches_dims():
    g = as_mat([[0, 1], [1, 0]], P)
    m = as_mat([[-1, 0], [0, -1]], P)
    sg = semiinvariant_space(g, 2, P)
    sm = semiinvariant_space(m, 2, P)
    se = semiinvariant_space(identity(2), 1, P)
    assert intersection_condition(sg, se, P)
    assert intersection_condition(sg, sg, P) is False
    assert intersection_condition(sm, sm, P) is False
    assert intersection_condition(se, sm, P)
