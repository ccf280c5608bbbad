"""Sparse multivariate polynomials over F_p.

A Polynomial in m variables maps exponent tuples (length m) to nonzero
coefficients in [1, p).  The zero polynomial has an empty term dict.
Canonical printing uses descending graded lexicographic order with
variables x1..xm.

The group action on coordinates enters through linear_substitute: composing
f with a linear map.  substitute_linear(f, M) is precomposition with the
matrix M (x -> M x inside f), the convention every eigenvalue bookkeeping
formula in this package is written against.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ArityMismatch, DimensionMismatch, OutOfRange


@dataclass(frozen=True)
class Polynomial:
    num_vars: int
    terms: dict  # exponent tuple -> coefficient in [1, p)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.num_vars == other.num_vars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.num_vars, tuple(sorted(self.terms.items()))))


def poly(m: int, terms: dict, p: int) -> Polynomial:
    clean = {}
    for e, c in terms.items():
        e = tuple(int(x) for x in e)
        if len(e) != m:
            raise ArityMismatch(f"exponent tuple {e} has length {len(e)}, expected {m}")
        if any(x < 0 for x in e):
            raise OutOfRange(f"negative exponent in {e}")
        nc = (clean.get(e, 0) + c) % p
        if nc:
            clean[e] = nc
        else:
            clean.pop(e, None)
    return Polynomial(m, clean)


def poly_zero(m: int) -> Polynomial:
    return Polynomial(m, {})


def poly_const(m: int, c: int, p: int) -> Polynomial:
    c %= p
    return Polynomial(m, {(0,) * m: c} if c else {})


def poly_var(m: int, i: int, p: int) -> Polynomial:
    if not 0 <= i < m:
        raise OutOfRange(f"variable index {i} out of range for {m} variables")
    e = tuple(1 if j == i else 0 for j in range(m))
    return Polynomial(m, {e: 1 % p})


def poly_add(a: Polynomial, b: Polynomial, p: int) -> Polynomial:
    if a.num_vars != b.num_vars:
        raise ArityMismatch("variable counts differ")
    terms = dict(a.terms)
    for e, c in b.terms.items():
        nc = (terms.get(e, 0) + c) % p
        if nc:
            terms[e] = nc
        else:
            terms.pop(e, None)
    return Polynomial(a.num_vars, terms)


def poly_scale(a: Polynomial, c: int, p: int) -> Polynomial:
    c %= p
    if c == 0:
        return poly_zero(a.num_vars)
    return Polynomial(a.num_vars, {e: v * c % p for e, v in a.terms.items()})


def poly_mul(a: Polynomial, b: Polynomial, p: int) -> Polynomial:
    if a.num_vars != b.num_vars:
        raise ArityMismatch("variable counts differ")
    terms: dict = {}
    for ea, ca in a.terms.items():
        for eb, cb in b.terms.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            nc = (terms.get(e, 0) + ca * cb) % p
            if nc:
                terms[e] = nc
            else:
                terms.pop(e, None)
    return Polynomial(a.num_vars, terms)


def poly_pow(a: Polynomial, k: int, p: int) -> Polynomial:
    if k < 0:
        raise OutOfRange("negative power")
    out = poly_const(a.num_vars, 1, p)
    for _ in range(k):
        out = poly_mul(out, a, p)
    return out


def poly_eval(a: Polynomial, point, p: int) -> int:
    pt = [int(x) % p for x in point]
    if len(pt) != a.num_vars:
        raise ArityMismatch("point length differs from variable count")
    total = 0
    for e, c in a.terms.items():
        v = c
        for x, k in zip(pt, e):
            if k:
                v = v * pow(x, k, p) % p
        total = (total + v) % p
    return total


def linear_substitute(f: Polynomial, m: np.ndarray, p: int) -> Polynomial:
    """Compose f with the linear map given by m: result(y) = f(m @ y).

    m has shape (f.num_vars, new_vars); the result lives in new_vars
    variables.  Ring homomorphism in f for fixed m.
    """
    m = np.asarray(m, dtype=np.int64) % p
    if m.ndim != 2 or m.shape[0] != f.num_vars:
        raise DimensionMismatch(
            f"substitution matrix needs {f.num_vars} rows, got shape {m.shape}"
        )
    new_vars = m.shape[1]
    lin = [
        Polynomial(
            new_vars,
            {
                tuple(1 if j == c else 0 for j in range(new_vars)): int(m[i, c])
                for c in range(new_vars)
                if m[i, c]
            },
        )
        for i in range(f.num_vars)
    ]
    pow_cache: dict[tuple[int, int], Polynomial] = {}

    def lin_pow(i: int, k: int) -> Polynomial:
        key = (i, k)
        if key not in pow_cache:
            pow_cache[key] = poly_pow(lin[i], k, p)
        return pow_cache[key]

    out = poly_zero(new_vars)
    for e, c in f.terms.items():
        term = poly_const(new_vars, c, p)
        for i, k in enumerate(e):
            if k:
                term = poly_mul(term, lin_pow(i, k), p)
        out = poly_add(out, term, p)
    return out


def substitute_linear(f: Polynomial, m: np.ndarray, p: int) -> Polynomial:
    """Precompose f with a square matrix: the coordinate action f^M = f o M."""
    m = np.asarray(m, dtype=np.int64)
    if m.shape != (f.num_vars, f.num_vars):
        raise DimensionMismatch("square matrix of size num_vars required")
    return linear_substitute(f, m, p)


def restrict_to_subspace(f: Polynomial, basis_rows: np.ndarray, p: int) -> Polynomial:
    """Restrict f along the parametrization x = sum_c s_c * basis_rows[c].

    The result is a polynomial in dim-of-subspace variables.
    """
    b = np.asarray(basis_rows, dtype=np.int64) % p
    if b.ndim != 2 or b.shape[1] != f.num_vars:
        raise DimensionMismatch("basis rows must have num_vars columns")
    return linear_substitute(f, b.T % p, p)


def poly_str(f: Polynomial) -> str:
    """Render in descending graded-lex order: '3*x1^2*x2 + 5'."""
    if f.is_zero():
        return "0"
    def key(e):
        return (-sum(e), tuple(-x for x in e))
    parts = []
    for e in sorted(f.terms, key=key):
        c = f.terms[e]
        factors = []
        for i, k in enumerate(e):
            if k == 1:
                factors.append(f"x{i + 1}")
            elif k > 1:
                factors.append(f"x{i + 1}^{k}")
        if not factors:
            parts.append(str(c))
        elif c == 1:
            parts.append("*".join(factors))
        else:
            parts.append(f"{c}*" + "*".join(factors))
    return " + ".join(parts)
