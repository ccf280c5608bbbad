import numpy as np
import pytest

from hhcross.errors import BoundExceeded, CharacteristicTooSmall, NotInvertible
from hhcross.groups import generate_group, suggest_prime

P = 7


def test_swap_group_tables(swap):
    assert swap.size == 2
    assert swap.exponent == 2
    assert swap.matrix(0).tolist() == [[1, 0], [0, 1]]
    assert swap.mult[1][1] == 0
    assert swap.inverse[1] == 1
    assert swap.orders == (1, 2)


def test_s3_structure(s3):
    assert s3.size == 6
    assert s3.exponent == 6
    assert sorted(s3.orders) == [1, 2, 2, 2, 3, 3]
    # closure of two generators reproduces every permutation matrix
    mats = {s3.matrix(g).tobytes() for g in range(6)}
    assert len(mats) == 6
    # group laws hold in the table
    for g in range(6):
        for h in range(6):
            prod = (s3.matrix(g) @ s3.matrix(h)) % P
            assert s3.matrix(s3.mult[g][h]).tolist() == prod.tolist()
        assert s3.mult[g][s3.inverse[g]] == 0


def test_conjugate_index(s3):
    for h in range(6):
        for g in range(6):
            u = s3.conjugate(h, g)
            want = (s3.matrix(h) @ s3.matrix(g) @ s3.matrix(s3.inverse[h])) % P
            assert s3.matrix(u).tolist() == want.tolist()


def test_identity_first_and_frames(z3):
    assert z3.size == 3
    assert z3.d(0) == 0 and z3.m(0) == 2
    for g in (1, 2):
        assert z3.d(g) == 2 and z3.m(g) == 0


def test_supported_table(swap, minus_id, s3):
    # identity pairs with everything
    for grp in (swap, minus_id, s3):
        for g in range(grp.size):
            assert grp.supported[0][g] and grp.supported[g][0]
    # an element with a moving space never pairs with itself
    assert not swap.supported[1][1]
    assert not minus_id.supported[1][1]
    # distinct transpositions in s3 do pair
    transpositions = [g for g in range(6) if s3.orders[g] == 2]
    t1, t2 = transpositions[0], transpositions[1]
    assert s3.supported[t1][t2]
    assert not s3.supported[t1][t1]


def test_projector_is_group_average(s3):
    for g in range(s3.size):
        pi = s3.projectors[g]
        # pi fixes exactly the fixed space and kills the moving space
        assert ((s3.matrix(g) @ pi) % P).tolist() == pi.tolist()
        assert ((pi @ pi) % P).tolist() == pi.tolist()


def test_characteristic_guards():
    with pytest.raises(CharacteristicTooSmall):
        generate_group([[[0, 1], [1, 0]]], 2)  # p divides the group order
    with pytest.raises(CharacteristicTooSmall):
        generate_group(
            [[[0, 1, 0], [1, 0, 0], [0, 0, 1]], [[0, 0, 1], [1, 0, 0], [0, 1, 0]]], 5
        )  # p < |S3|
    with pytest.raises(NotInvertible):
        generate_group([[[1, 1], [1, 1]]], 7)


def test_closure_bound():
    with pytest.raises(BoundExceeded):
        generate_group(
            [[[0, 1, 0], [1, 0, 0], [0, 0, 1]], [[0, 0, 1], [1, 0, 0], [0, 1, 0]]],
            7,
            bound=3,
        )


def test_closure_is_deterministic():
    a = generate_group([[[0, 1], [1, 0]]], P)
    b = generate_group([[[0, 1], [1, 0]]], P)
    assert [a.matrix(g).tolist() for g in range(a.size)] == [
        b.matrix(g).tolist() for g in range(b.size)
    ]


def test_suggest_prime_examples():
    assert suggest_prime([[[-1, 0], [0, -1]]], 2) == 3
    assert suggest_prime([[[0, 1], [1, 0]]], 2) == 3
    assert (
        suggest_prime(
            [[[0, 1, 0], [1, 0, 0], [0, 0, 1]], [[0, 0, 1], [1, 0, 0], [0, 1, 0]]], 3
        )
        == 7
    )
    assert suggest_prime([[[-1, 0], [0, -1]]], 2, min_char=7) == 7


def test_trivial_group_needs_dim():
    triv = generate_group([np.eye(2, dtype=np.int64).tolist()], P, dim=2)
    assert triv.size == 1
    assert triv.m(0) == 2
