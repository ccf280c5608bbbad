"""Sparse exterior algebra over F_p.

A Multivector is homogeneous: a degree k element of Lambda^k(F_p^n) stored
as {bitmask -> coefficient} over strictly increasing basis index subsets
(bit i set = basis vector i present).  Degree 0 elements are scalars with
the single key 0.  Wedge signs come from inversion counting on the merged
subsets; no dense tensors anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegreeInhomogeneous, DimensionMismatch, NotInSpan, OutOfRange
from .linalg import rref


def popcount(x: int) -> int:
    return bin(x).count("1")


def bits_of(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_of(indices) -> int:
    m = 0
    for i in indices:
        if m >> i & 1:
            raise OutOfRange(f"repeated index {i} in subset")
        m |= 1 << i
    return m


def merge_sign(a: int, b: int) -> int:
    """Sign of sorting the concatenation of disjoint index sets a, b.

    Counts, for each bit of b, the bits of a above it; parity gives the sign.
    Returns 0 when the sets overlap.
    """
    if a & b:
        return 0
    inversions = 0
    for i in bits_of(b):
        inversions += popcount(a >> (i + 1))
    return -1 if inversions & 1 else 1


@dataclass(frozen=True)
class Multivector:
    """Homogeneous element of Lambda^degree(F_p^ambient_dim)."""

    ambient_dim: int
    degree: int
    terms: dict  # bitmask -> coefficient in [1, p)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Multivector)
            and self.ambient_dim == other.ambient_dim
            and self.degree == other.degree
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.degree, tuple(sorted(self.terms.items()))))


def mv(n: int, degree: int, terms: dict, p: int) -> Multivector:
    """Normalized constructor: reduces coefficients, validates subsets."""
    clean = {}
    for mask, c in terms.items():
        if popcount(mask) != degree:
            raise DegreeInhomogeneous(
                f"subset {bits_of(mask)} has size {popcount(mask)}, expected {degree}"
            )
        if mask >> n:
            raise OutOfRange(f"subset {bits_of(mask)} exceeds ambient dim {n}")
        c %= p
        if c:
            clean[mask] = c
    return Multivector(n, degree, clean)


def mv_zero(n: int, degree: int) -> Multivector:
    return Multivector(n, degree, {})


def mv_scalar(n: int, c: int, p: int) -> Multivector:
    return mv(n, 0, {0: c}, p)


def mv_vector(coords, p: int) -> Multivector:
    v = np.asarray(coords, dtype=np.int64) % p
    return mv(len(v), 1, {1 << i: int(c) for i, c in enumerate(v) if c % p}, p)


def mv_add(a: Multivector, b: Multivector, p: int) -> Multivector:
    if a.ambient_dim != b.ambient_dim or a.degree != b.degree:
        raise DegreeInhomogeneous("can only add multivectors of equal shape")
    terms = dict(a.terms)
    for mask, c in b.terms.items():
        nc = (terms.get(mask, 0) + c) % p
        if nc:
            terms[mask] = nc
        else:
            terms.pop(mask, None)
    return Multivector(a.ambient_dim, a.degree, terms)


def mv_scale(a: Multivector, c: int, p: int) -> Multivector:
    c %= p
    if c == 0:
        return mv_zero(a.ambient_dim, a.degree)
    return Multivector(
        a.ambient_dim, a.degree, {m: v * c % p for m, v in a.terms.items()}
    )


def wedge(a: Multivector, b: Multivector, p: int) -> Multivector:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch("wedge factors live in different ambient spaces")
    n = a.ambient_dim
    deg = a.degree + b.degree
    if deg > n:
        return mv_zero(n, deg)
    terms: dict = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            s = merge_sign(ma, mb)
            if s == 0:
                continue
            mask = ma | mb
            nc = (terms.get(mask, 0) + s * ca * cb) % p
            if nc:
                terms[mask] = nc
            else:
                terms.pop(mask, None)
    return Multivector(n, deg, terms)


def wedge_vectors(rows, p: int) -> Multivector:
    """Wedge of the given coordinate vectors, left to right."""
    rows = np.asarray(rows, dtype=np.int64)
    if rows.ndim == 1:
        rows = rows.reshape(1, -1)
    n = rows.shape[1]
    acc = mv_scalar(n, 1, p)
    for r in rows:
        acc = wedge(acc, mv_vector(r, p), p)
    return acc


def map_components(m: np.ndarray, a: Multivector, p: int) -> Multivector:
    """Apply Lambda^k of the linear map m (n_out x n_in) to a.

    Basis subsets map to wedges of the corresponding columns of m; degree 0
    is untouched (Lambda^0 of anything is the identity on scalars).
    """
    n_out, n_in = m.shape
    if n_in != a.ambient_dim:
        raise DimensionMismatch(
            f"map expects ambient dim {n_in}, multivector has {a.ambient_dim}"
        )
    if a.degree == 0:
        return Multivector(n_out, 0, dict(a.terms))
    out = mv_zero(n_out, a.degree)
    for mask, c in a.terms.items():
        cols = bits_of(mask)
        img = wedge_vectors(m[:, cols].T % p, p)
        out = mv_add(out, mv_scale(img, c, p), p)
    return out


def frame_extension(frame_rows: np.ndarray, p: int) -> np.ndarray:
    """Extend the rows of `frame_rows` to a basis of the ambient space.

    Completion uses standard basis vectors at the non-pivot columns of the
    row space, keeping the result deterministic.
    """
    k, n = frame_rows.shape
    if k == 0:
        return np.eye(n, dtype=np.int64)
    red, pivots = rref(frame_rows, p)
    if len(pivots) != k:
        raise NotInSpan("frame rows are linearly dependent")
    rows = [frame_rows % p]
    extra = [j for j in range(n) if j not in pivots]
    if extra:
        comp = np.zeros((len(extra), n), dtype=np.int64)
        for i, j in enumerate(extra):
            comp[i, j] = 1
        rows.append(comp)
    return np.concatenate(rows, axis=0)


def reframe(
    a: Multivector, old_frame: np.ndarray, new_frame: np.ndarray, p: int
) -> Multivector:
    """Re-express a from coordinates in old_frame to coordinates in new_frame.

    Frames are row matrices of basis vectors of subspaces of a common
    ambient space.  Raises NotInSpan if the pushed-forward multivector has
    support outside the span of new_frame.
    """
    from .linalg import mat_inv

    old = np.asarray(old_frame, dtype=np.int64) % p
    new = np.asarray(new_frame, dtype=np.int64) % p
    if old.ndim != 2 or new.ndim != 2 or old.shape[1] != new.shape[1]:
        raise DimensionMismatch("frames must be row matrices over one ambient space")
    if old.shape[0] != a.ambient_dim:
        raise DimensionMismatch("old frame size does not match multivector ambient dim")
    ambient = map_components(old.T, a, p)
    ext = frame_extension(new, p)
    dual = mat_inv(ext.T % p, p)
    in_ext = map_components(dual, ambient, p)
    k = new.shape[0]
    high = ((1 << ext.shape[0]) - 1) ^ ((1 << k) - 1)
    for mask in in_ext.terms:
        if mask & high:
            raise NotInSpan("multivector has support outside the target frame")
    return Multivector(k, a.degree, dict(in_ext.terms))
