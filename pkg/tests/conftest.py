import numpy as np
import pytest

from hhcross.groups import generate_group
from hhcross.symplectic import make_symplectic_ctx

P = 7

MINUS_ID_GENS = [[[-1, 0], [0, -1]]]
SWAP_GENS = [[[0, 1], [1, 0]]]
Z3_GENS = [[[2, 0], [0, 4]]]
S3_GENS = [
    [[0, 1, 0], [1, 0, 0], [0, 0, 1]],
    [[0, 0, 1], [1, 0, 0], [0, 1, 0]],
]
KLEIN_GENS = [
    [[-1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, 1]],
    [[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]],
]
OMEGA2 = [[0, 1], [-1, 0]]
OMEGA4 = [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]]


@pytest.fixture(scope="session")
def minus_id():
    return generate_group(MINUS_ID_GENS, P)


@pytest.fixture(scope="session")
def swap():
    return generate_group(SWAP_GENS, P)


@pytest.fixture(scope="session")
def z3():
    return generate_group(Z3_GENS, P)


@pytest.fixture(scope="session")
def s3():
    return generate_group(S3_GENS, P)


@pytest.fixture(scope="session")
def klein():
    return generate_group(KLEIN_GENS, P)


@pytest.fixture(scope="session")
def trivial3():
    return generate_group([np.eye(3, dtype=np.int64).tolist()], P, dim=3)


@pytest.fixture(scope="session")
def standard_groups(minus_id, swap, z3, s3):
    return [("minus-id", minus_id), ("swap", swap), ("z3", z3), ("s3", s3)]


@pytest.fixture(scope="session")
def sympl_minus_id(minus_id):
    return make_symplectic_ctx(minus_id, OMEGA2)


@pytest.fixture(scope="session")
def sympl_z3(z3):
    return make_symplectic_ctx(z3, OMEGA2)


@pytest.fixture(scope="session")
def sympl_klein(klein):
    return make_symplectic_ctx(klein, OMEGA4)
