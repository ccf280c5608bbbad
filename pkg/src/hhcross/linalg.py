"""Exact linear algebra over F_p on numpy int64 arrays.

Matrices act on column vectors (v -> M @ v).  Subspaces are stored as row
bases in reduced row echelon form, which makes equality of subspaces plain
array equality and keeps every derived object (kernels, eigenframes)
canonical: same input, same bytes.

Entries stay in [0, p); p is passed explicitly to every operation.  int64
is safe here because p is desk-scale (p^2 * n fits comfortably).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    NonDiagonalizable,
    NotInvertible,
    OrderMismatch,
)
from .scalars import FieldCtx, scalar_inverse


def as_mat(rows, p: int) -> np.ndarray:
    """Normalize nested-list or array input to an int64 array mod p."""
    m = np.asarray(rows, dtype=np.int64) % p
    return m


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def mat_mul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return (a @ b) % p


def mat_pow(a: np.ndarray, k: int, p: int) -> np.ndarray:
    out = identity(a.shape[0])
    base = a % p
    while k:
        if k & 1:
            out = (out @ base) % p
        base = (base @ base) % p
        k >>= 1
    return out


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; returns (rows-without-zero-rows, pivot columns)."""
    m = (np.array(a, dtype=np.int64) % p).reshape(a.shape if a.ndim == 2 else (1, -1))
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        sel = None
        for i in range(r, rows):
            if m[i, c] % p != 0:
                sel = i
                break
        if sel is None:
            continue
        if sel != r:
            m[[r, sel]] = m[[sel, r]]
        m[r] = m[r] * scalar_inverse(int(m[r, c]), p) % p
        for i in range(rows):
            if i != r and m[i, c] % p != 0:
                m[i] = (m[i] - m[i, c] * m[r]) % p
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m[: len(pivots)].copy(), pivots


def rank(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def kernel(a: np.ndarray, p: int) -> np.ndarray:
    """Canonical (RREF) row basis of the right null space {x : a @ x = 0}."""
    rows, cols = a.shape
    red, pivots = rref(a, p)
    free = [c for c in range(cols) if c not in pivots]
    if not free:
        return np.zeros((0, cols), dtype=np.int64)
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for r, pc in enumerate(pivots):
            basis[k, pc] = (-red[r, fc]) % p
    red2, _ = rref(basis, p)
    return red2


def mat_inv(a: np.ndarray, p: int) -> np.ndarray:
    n = a.shape[0]
    if a.shape != (n, n):
        raise DimensionMismatch(f"square matrix required, got {a.shape}")
    aug = np.concatenate([a % p, identity(n)], axis=1)
    red, pivots = rref(aug, p)
    if pivots[:n] != list(range(n)):
        raise NotInvertible("matrix is singular mod p")
    return red[:, n:].copy()


def matrix_order(a: np.ndarray, p: int, cap: int = 10_000) -> int:
    """Smallest k >= 1 with a^k = I, or OrderMismatch past the cap."""
    n = a.shape[0]
    acc = a % p
    eye = identity(n)
    for k in range(1, cap + 1):
        if np.array_equal(acc, eye):
            return k
        acc = (acc @ a) % p
    raise OrderMismatch(f"no order found below {cap}")


@dataclass(frozen=True)
class Subspace:
    """Subspace of F_p^n held as a canonical RREF row basis."""

    ambient_dim: int
    basis: np.ndarray  # shape (dim, ambient_dim), RREF, no zero rows

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis.shape == other.basis.shape
            and np.array_equal(self.basis, other.basis)
        )

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis.tobytes()))


def subspace_from_rows(rows, p: int, ambient_dim: int | None = None) -> Subspace:
    m = np.asarray(rows, dtype=np.int64)
    if m.size == 0:
        if ambient_dim is None:
            raise DimensionMismatch("ambient_dim required for an empty row list")
        return Subspace(ambient_dim, np.zeros((0, ambient_dim), dtype=np.int64))
    m = m % p
    red, _ = rref(m, p)
    return Subspace(m.shape[1], red)


def subspace_intersection(u: Subspace, w: Subspace, p: int) -> Subspace:
    """Intersection of two subspaces, canonical basis."""
    if u.ambient_dim != w.ambient_dim:
        raise DimensionMismatch("ambient dimensions differ")
    n = u.ambient_dim
    if u.dim == 0 or w.dim == 0:
        return subspace_from_rows(np.zeros((0, n), dtype=np.int64), p, n)
    # Solve x^T u.basis = y^T w.basis: kernel of [u.basis^T | -w.basis^T].
    sys = np.concatenate([u.basis.T % p, (-w.basis.T) % p], axis=1)
    ker = kernel(sys, p)
    vecs = (ker[:, : u.dim] @ u.basis) % p
    return subspace_from_rows(vecs, p, n)


def symmetrizer(g: np.ndarray, k: int, p: int) -> np.ndarray:
    """(1/k) * sum_{i=1..k} g^i, the projector onto the g-fixed subspace.

    Requires g^k = I; the sum includes g^k = I itself.
    """
    n = g.shape[0]
    acc = np.zeros((n, n), dtype=np.int64)
    cur = identity(n)
    for _ in range(k):
        cur = (cur @ g) % p
        acc = (acc + cur) % p
    if not np.array_equal(cur, identity(n)):
        raise OrderMismatch(f"g^{k} != identity")
    return acc * scalar_inverse(k % p, p) % p


def fixed_space(g: np.ndarray, p: int) -> Subspace:
    """ker(g - I): the fixed vectors of g."""
    n = g.shape[0]
    ker = kernel((g - identity(n)) % p, p)
    return Subspace(n, ker)


def semiinvariant_space(g: np.ndarray, k: int, p: int) -> Subspace:
    """ker of the symmetrizer: the sum of eigenspaces with eigenvalue != 1."""
    n = g.shape[0]
    ker = kernel(symmetrizer(g, k, p), p)
    return Subspace(n, ker)


@dataclass(frozen=True)
class EigenFrame:
    """Deterministic eigenbasis of one group element.

    Rows of `basis` are the frame vectors: first the fixed space V^g in
    echelon order, then for j = 1..N-1 the zeta^j eigenvectors, each
    eigenspace in echelon order.  `dual` rows are the coordinate
    functionals (dual basis), so coords(x) = dual @ x.
    """

    basis: np.ndarray  # (n, n), rows are frame vectors
    dual: np.ndarray  # (n, n) = (basis^T)^{-1}
    eigenvalues: tuple[int, ...]  # eigenvalue of each frame row
    fixed_dim: int  # m_g = dim V^g

    @property
    def n(self) -> int:
        return self.basis.shape[0]

    @property
    def moving_dim(self) -> int:
        """d_g = codimension of the fixed space."""
        return self.n - self.fixed_dim

    def tangent_rows(self) -> np.ndarray:
        return self.basis[: self.fixed_dim]

    def normal_rows(self) -> np.ndarray:
        return self.basis[self.fixed_dim :]

    def tangent_dual(self) -> np.ndarray:
        return self.dual[: self.fixed_dim]


def eigenframe(g: np.ndarray, ctx: FieldCtx, p: int | None = None) -> EigenFrame:
    """Diagonalizing frame of g, deterministic given ctx.

    Eigenvalues of g are N-th roots of unity because g's order divides N
    and N | p-1; the eigenspace list is scanned in the fixed order
    zeta^0, zeta^1, ..., zeta^(N-1).
    """
    p = ctx.p if p is None else p
    n = g.shape[0]
    rows = []
    eigs: list[int] = []
    for j in range(ctx.N):
        lam = ctx.root_power(j)
        ker = kernel((g - lam * identity(n)) % p, p)
        for r in ker:
            rows.append(r)
            eigs.append(lam)
        if j == 0:
            fixed_dim = ker.shape[0]
    if len(rows) != n:
        raise NonDiagonalizable(
            f"eigenspaces span dimension {len(rows)} < {n}; "
            "the element order must divide the context root order"
        )
    basis = np.array(rows, dtype=np.int64) % p
    dual = mat_inv(basis.T % p, p)
    return EigenFrame(
        basis=basis, dual=dual, eigenvalues=tuple(int(e) for e in eigs), fixed_dim=fixed_dim
    )


def intersection_condition(
    semi_g: Subspace, semi_h: Subspace, p: int
) -> bool:
    """True when the moving subspaces of g and h meet only in 0.

    This is the support condition for the product: term pairs failing it
    contribute nothing.
    """
    if semi_g.ambient_dim != semi_h.ambient_dim:
        raise DimensionMismatch("ambient dimensions differ")
    stacked = np.concatenate([semi_g.basis, semi_h.basis], axis=0)
    return rank(stacked, p) == semi_g.dim + semi_h.dim
