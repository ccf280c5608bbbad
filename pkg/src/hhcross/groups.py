"""Finite matrix group closure over F_p with cached per-element frame data.

generate_group runs a breadth-first closure from the generators, assigns
every element a stable index (identity first, then discovery layers, each
layer sorted by flattened entries), and precomputes the multiplication and
inverse tables, element orders, the field context for the group exponent,
eigenframes, symmetrizers, and the pairwise support condition table.

GroupData is treated as immutable after generation; all product and oracle
code reads it concurrently without locking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    BoundExceeded,
    CharacteristicTooSmall,
    DimensionMismatch,
    NotInvertible,
    NotPrime,
    OutOfRange,
    RootUnavailable,
)
from .linalg import (
    EigenFrame,
    Subspace,
    as_mat,
    eigenframe,
    fixed_space,
    identity,
    intersection_condition,
    mat_inv,
    matrix_order,
    rank,
    semiinvariant_space,
    symmetrizer,
)
from .scalars import FieldCtx, is_prime, make_field_ctx


@dataclass(frozen=True)
class GroupData:
    """A finite matrix group with every derived table the algebra needs."""

    p: int
    n: int  # dim V
    field: FieldCtx
    elements: tuple[np.ndarray, ...]  # index -> matrix, identity at 0
    mult: tuple[tuple[int, ...], ...]  # mult[i][j] = index of elements[i] @ elements[j]
    inverse: tuple[int, ...]
    orders: tuple[int, ...]
    exponent: int  # lcm of element orders = field.N
    frames: tuple[EigenFrame, ...]
    fixed: tuple[Subspace, ...]
    semi: tuple[Subspace, ...]  # moving subspaces (V^g)^v
    projectors: tuple[np.ndarray, ...]  # symmetrizers pi^g
    supported: tuple[tuple[bool, ...], ...]  # pairwise support condition

    @property
    def size(self) -> int:
        return len(self.elements)

    def matrix(self, i: int) -> np.ndarray:
        return self.elements[i]

    def d(self, i: int) -> int:
        """Codimension of the fixed space of element i."""
        return self.semi[i].dim

    def m(self, i: int) -> int:
        """Dimension of the fixed space of element i."""
        return self.fixed[i].dim

    def conjugate(self, h: int, g: int) -> int:
        """Index of h g h^-1."""
        return self.mult[self.mult[h][g]][self.inverse[h]]


def _closure(generators: list[np.ndarray], p: int, n: int, bound: int) -> list[np.ndarray]:
    """BFS closure; identity first, then layers sorted by entry tuples."""
    eye = identity(n)
    seen = {eye.tobytes(): eye}
    order: list[np.ndarray] = [eye]
    frontier = [eye]
    while frontier:
        found: dict[bytes, np.ndarray] = {}
        for m in frontier:
            for g in generators:
                prod = (m @ g) % p
                key = prod.tobytes()
                if key not in seen and key not in found:
                    found[key] = prod
        fresh = sorted(found.values(), key=lambda a: tuple(a.ravel().tolist()))
        for m in fresh:
            seen[m.tobytes()] = m
            order.append(m)
            if len(order) > bound:
                raise BoundExceeded(f"group closure exceeded bound {bound}")
        frontier = fresh
    return order


def generate_group(
    generators,
    p: int,
    *,
    dim: int | None = None,
    bound: int = 256,
) -> GroupData:
    """Generate the full group data from integer generator matrices mod p.

    `dim` is only required when the generator list is empty (trivial group).
    Raises CharacteristicTooSmall unless p > dim V and p > |G|.
    """
    mats = [as_mat(g, p) for g in generators]
    if mats:
        n = mats[0].shape[0]
        for g in mats:
            if g.shape != (n, n):
                raise DimensionMismatch(f"generator shapes differ: {g.shape} vs ({n}, {n})")
    else:
        if dim is None:
            raise DimensionMismatch("dim is required when no generators are given")
        n = dim
    if n < 1:
        raise OutOfRange("dim V must be >= 1")
    if not is_prime(p):
        raise NotPrime(f"p = {p} is not prime")
    for g in mats:
        try:
            mat_inv(g, p)
        except NotInvertible:
            raise NotInvertible("generator is singular mod p") from None

    elements = _closure(mats, p, n, bound)
    size = len(elements)
    if p <= n or p <= size:
        raise CharacteristicTooSmall(
            f"need p > dim V = {n} and p > |G| = {size}, got p = {p}"
        )

    index = {m.tobytes(): i for i, m in enumerate(elements)}
    mult = tuple(
        tuple(index[((a @ b) % p).tobytes()] for b in elements) for a in elements
    )
    inverse = []
    for i in range(size):
        inv_m = mat_inv(elements[i], p)
        inverse.append(index[inv_m.tobytes()])
    orders = tuple(matrix_order(m, p, cap=size + 1) for m in elements)
    exponent = math.lcm(*orders)
    ctx = make_field_ctx(p, exponent)

    frames = tuple(eigenframe(m, ctx) for m in elements)
    fixed = tuple(fixed_space(m, p) for m in elements)
    semi = tuple(semiinvariant_space(m, k, p) for m, k in zip(elements, orders))
    projectors = tuple(symmetrizer(m, k, p) for m, k in zip(elements, orders))
    supported = tuple(
        tuple(intersection_condition(semi[i], semi[j], p) for j in range(size))
        for i in range(size)
    )

    # Frame layout must agree with the projector kernels.
    for f, fx, sm in zip(frames, fixed, semi):
        assert f.fixed_dim == fx.dim and f.moving_dim == sm.dim

    return GroupData(
        p=p,
        n=n,
        field=ctx,
        elements=tuple(elements),
        mult=mult,
        inverse=tuple(inverse),
        orders=orders,
        exponent=exponent,
        frames=frames,
        fixed=fixed,
        semi=semi,
        projectors=projectors,
        supported=supported,
    )


def suggest_prime(
    generators,
    dim: int,
    *,
    bound: int = 256,
    min_char: int = 2,
) -> int:
    """Smallest prime p >= min_char admitting the group: p > max(dim, |G|)
    and exponent | p-1.

    The group is regenerated per candidate because its closure lives mod p;
    candidates where a generator degenerates are skipped.
    """
    p = max(min_char, dim + 1, 2)
    while True:
        while not is_prime(p):
            p += 1
        try:
            generate_group(generators, p, dim=dim, bound=bound)
            return p
        except (CharacteristicTooSmall, NotInvertible, RootUnavailable):
            # too small, or a degenerate reduction; try the next prime
            p += 1
