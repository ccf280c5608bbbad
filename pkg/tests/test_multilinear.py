import random

import pytest
from hypothesis import given, settings, strategies as st

from hhcross.errors import DegreeInhomogeneous, NotInSpan, OutOfRange
from hhcross.linalg import as_mat
from hhcross.multilinear import (
    Multivector,
    bits_of,
    frame_extension,
    map_components,
    mask_of,
    merge_sign,
    mv,
    mv_add,
    mv_scalar,
    mv_scale,
    mv_vector,
    mv_zero,
    popcount,
    reframe,
    wedge,
    wedge_vectors,
)

P = 7


def test_bit_helpers():
    assert popcount(0b1011) == 3
    assert bits_of(0b1010) == [1, 3]
    assert mask_of([0, 2]) == 0b101
    assert mask_of([]) == 0


def test_merge_sign_cases():
    assert merge_sign(0b001, 0b010) == 1  # e0 ^ e1 in order
    assert merge_sign(0b010, 0b001) == -1  # e1  ^ e0 swaps once
    assert merge_sign(0b001, 0b001) == 0  # overlap kills
    assert merge_sign(0, 0b111) == 1
    assert merge_sign(0b101, 0b010) == -1  # e0e2 ^ e1: one transposition


def test_mv_validation():
    with pytest.raises(DegreeInhomogeneous):
        mv(3, 1, {0b11: 1}, P)
    with pytest.raises(OutOfRange):
        mv(2, 1, {0b100: 1}, P)
    assert mv(2, 1, {0b01: 7}, P).is_zero()  # coefficients normalize mod p


def test_wedge_anticommutes_vectors():
    a = mv_vector([1, 2, 0], P)
    b = mv_vector([0, 1, 5], P)
    ab = wedge(a, b, P)
    ba = wedge(b, a, P)
    assert ab == mv_scale(ba, P - 1, P)
    assert wedge(a, a, P).is_zero()


def rand_mv(rng, n, degree):
    terms = {}
    for mask in range(1 << n):
        if popcount(mask) == degree and rng.random() < 0.5:
            terms[mask] = rng.randrange(P)
    return mv(n, degree, terms, P)


@given(st.integers(min_value=0, max_value=10_000))
@settings(max_examples=60)
def test_wedge_associative_and_graded(seed):
    rng = random.Random(seed)
    n = 4
    da, db, dc = rng.choice([0, 1, 2]), rng.choice([0, 1, 2]), rng.choice([0, 1])
    a, b, c = rand_mv(rng, n, da), rand_mv(rng, n, db), rand_mv(rng, n, dc)
    lhs = wedge(wedge(a, b, P), c, P)
    rhs = wedge(a, wedge(b, c, P), P)
    assert lhs == rhs
    ab = wedge(a, b, P)
    ba = wedge(b, a, P)
    sign = P - 1 if (da * db) % 2 else 1
    assert ab == mv_scale(ba, sign, P)


def test_wedge_vectors_matches_explicit():
    rows = as_mat([[1, 0, 0], [0, 1, 0]], P)
    w = wedge_vectors(rows, P)
    assert w == mv(3, 2, {0b011: 1}, P)
    w2 = wedge_vectors(as_mat([[0, 1, 0], [1, 0, 0]], P), P)
    assert w2 == mv(3, 2, {0b011: P - 1}, P)


def test_map_components_functorial():
    rng = random.Random(5)
    m1 = as_mat([[1, 2], [0, 1]], P)
    m2 = as_mat([[3, 1], [1, 0]], P)
    for deg in (0, 1, 2):
        a = rand_mv(rng, 2, deg)
        lhs = map_components(m1, map_components(m2, a, P), P)
        rhs = map_components((m1 @ m2) % P, a, P)
        assert lhs == rhs


def test_map_components_rectangular():
    # embed a 1-dim space into 3 dims
    emb = as_mat([[1], [2], [3]], P)
    a = mv(1, 1, {1: 1}, P)
    img = map_components(emb, a, P)
    assert img == mv_vector([1, 2, 3], P)


def test_map_components_determinant_on_top_degree():
    m = as_mat([[2, 1], [1, 1]], P)
    top = mv(2, 2, {0b11: 1}, P)
    img = map_components(m, top, P)
    det = (2 * 1 - 1 * 1) % P
    assert img == mv(2, 2, {0b11: det}, P)


def test_frame_extension_completes():
    rows = as_mat([[1, 1, 0]], P)
    ext = frame_extension(rows, P)
    assert ext.shape == (3, 3)
    from hhcross.linalg import rank

    assert rank(ext, P) == 3
    assert ext[0].tolist() == [1, 1, 0]


def test_reframe_into_subspace():
    # (4,4) lies in the span of (1,1); its coordinate there is 4
    old = as_mat([[1, 0], [0, 1]], P)
    new = as_mat([[1, 1]], P)
    a = mv_vector([4, 4], P)
    out = reframe(a, old, new, P)
    assert out == mv(1, 1, {1: 4}, P)


def test_reframe_rejects_outside_span():
    old = as_mat([[1, 0], [0, 1]], P)
    new = as_mat([[1, 1]], P)
    with pytest.raises(NotInSpan):
        reframe(mv_vector([1, 0], P), old, new, P)


def test_add_and_scale():
    a = mv(2, 1, {0b01: 3}, P)
    b = mv(2, 1, {0b01: 4, 0b10: 1}, P)
    s = mv_add(a, b, P)
    assert s == mv(2, 1, {0b10: 1}, P)  # 3+4 = 0 mod 7 drops
    assert mv_scale(b, 0, P).is_zero()
    assert mv_zero(2, 1).is_zero()
    assert mv_scalar(3, 2, P).terms == {0: 2}
