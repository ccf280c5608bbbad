"""Independent cochain-level check of the closed-form product.

Two ingredients, both standard and both deliberately computed the slow way:

1. A twisted Koszul complex per group element, used to audit the graded
   dimensions the fixed-point model predicts.  In the eigenframe of g the
   differential inserts one moving frame direction at a time:

       d(e_S (x) x^E) = sum over moving i not in S of
                        sign(S, i) (1 - lambda_i) e_{S + i} (x) x^(E + delta_i)

   so cohomology in exterior degree q and polynomial degree D should have
   dimension C(m_g, q - d_g) * #{monomials of degree D in m_g variables}.

2. A cup-product pipeline on multilinear cochains.  A class at g maps to
   the cochain

       psi(y_1, ..., y_i) = (1/i!) <xi, y_1 ^ ... ^ y_i> f

   tabulated on tuples of coordinate functionals (xi the ambient wedge of
   the tangent and normal frames, f the ambient lift of the coefficient).
   Cochains multiply by concatenation with the twist of the left factor
   acting on the right value:

       mu(psi1, psi2)(y_1..y_{i+j}) = psi1(y_1..y_i) . (psi2(y_{i+1}..) o M_g)

   and a cochain at u is read back off by evaluating on tuples of u-frame
   functionals, antisymmetrizing over all permutations WITHOUT dividing,
   and restricting the value to V^u.  The plain signed sum is what makes
   the read-off a section of the (1/i!)-normalized inclusion: their
   composite is the identity on classes, which is property-tested.

The product route never looks at the intersection condition that powers
the closed form; pairs that the closed form skips are computed honestly
here and must come out zero on their own.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations, product as iproduct
from math import comb

import numpy as np

from .errors import ContextMismatch, FactorialNotInvertible, IncompleteTable
from .groups import GroupData
from .hhalgebra import (
    HHClass,
    hh_add,
    hh_zero,
    lift_coeff,
    normal_ambient,
    subsets_of_size,
    tangent_ambient,
)
from .linalg import identity, mat_inv, rank
from .multilinear import bits_of, mask_of, merge_sign, wedge
from .polyring import (
    Polynomial,
    linear_substitute,
    poly_add,
    poly_mul,
    poly_scale,
    poly_zero,
    substitute_linear,
)
from .scalars import factorial_inverse


# -- twisted Koszul complex: dimension audit ---------------------------------


def monomials(num_vars: int, degree: int) -> list[tuple]:
    """All exponent tuples of the exact total degree, lexicographic."""
    if num_vars == 0:
        return [()] if degree == 0 else []
    out = []
    for head in range(degree, -1, -1):
        out.extend((head,) + tail for tail in monomials(num_vars - 1, degree - head))
    return sorted(out, reverse=True)


def count_monomials(degree: int, num_vars: int) -> int:
    """Number of monomials of the exact total degree."""
    if num_vars == 0:
        return 1 if degree == 0 else 0
    return comb(degree + num_vars - 1, num_vars - 1)


def koszul_differential(group: GroupData, g: int, q: int, d_poly: int) -> np.ndarray:
    """Matrix of the Koszul differential C^(q, D) -> C^(q+1, D+1) at g.

    Bases are indexed by (frame subset, exponent tuple) pairs, subsets as
    ascending bitmasks, exponents lexicographic.
    """
    n = group.n
    p = group.p
    lams = group.frames[g].eigenvalues
    dom_sets = subsets_of_size(n, q)
    dom_mons = monomials(n, d_poly)
    cod_sets = subsets_of_size(n, q + 1)
    cod_mons = monomials(n, d_poly + 1)
    cod_index = {
        (s, e): k for k, (s, e) in enumerate((s, e) for s in cod_sets for e in cod_mons)
    }
    mat = np.zeros((len(cod_sets) * len(cod_mons), len(dom_sets) * len(dom_mons)), dtype=np.int64)
    col = 0
    for s in dom_sets:
        for e in dom_mons:
            for i in range(n):
                lam = int(lams[i])
                if lam == 1 or (s >> i) & 1:
                    continue
                sign = merge_sign(s, 1 << i)
                e2 = list(e)
                e2[i] += 1
                row = cod_index[(s | (1 << i), tuple(e2))]
                mat[row, col] = (sign * (1 - lam)) % p
            col += 1
    return mat


def koszul_cohomology_dim(group: GroupData, g: int, q: int, d_poly: int) -> int:
    """dim H^(q, D) of the twisted Koszul complex at g, by rank counting."""
    n = group.n
    if not 0 <= q <= n:
        return 0
    d_out = koszul_differential(group, g, q, d_poly)
    dim_domain = d_out.shape[1]
    rank_out = rank(d_out, group.p)
    rank_in = 0
    if q >= 1 and d_poly >= 1:
        rank_in = rank(koszul_differential(group, g, q - 1, d_poly - 1), group.p)
    return dim_domain - rank_out - rank_in


def expected_graded_dim(group: GroupData, g: int, q: int, d_poly: int) -> int:
    """Dimension the fixed-point model predicts for H^(q, D) at g."""
    m_g, d_g = group.m(g), group.d(g)
    if not 0 <= q - d_g <= m_g:
        return 0
    return comb(m_g, q - d_g) * count_monomials(d_poly, m_g)


# -- multilinear cochains -----------------------------------------------------


@dataclass(eq=False)
class Cochain:
    """A multilinear cochain tabulated on tuples of linear forms.

    `frame` rows are the linear forms (coordinates in the x-basis) the
    table keys index into; `table` maps index tuples of length `arity` to
    ambient polynomial values; `g` records the twist.
    """

    arity: int
    g: int
    frame: np.ndarray
    table: dict

    def value(self, key: tuple) -> Polynomial:
        try:
            return self.table[key]
        except KeyError:
            raise IncompleteTable(f"cochain table lacks entry {key}") from None


def _tuple_sign(key: tuple) -> int:
    """Sign of the permutation sorting the tuple; 0 when entries repeat."""
    if len(set(key)) != len(key):
        return 0
    inv = sum(1 for a, b in combinations(key, 2) if a > b)
    return -1 if inv % 2 else 1


def hkr_cochain(group: GroupData, a: HHClass, g: int) -> Cochain:
    """The (1/i!)-normalized multilinear cochain of the part of a class at g.

    Tabulated on tuples of coordinate functionals x_1..x_n.
    """
    i = a.degree
    p = group.p
    n = group.n
    if i >= p:
        raise FactorialNotInvertible(f"arity {i} needs {i}! invertible mod {p}")
    inv_fact = factorial_inverse(i, p)
    norm = normal_ambient(group, g)
    by_mask: dict[int, Polynomial] = {}
    for mask, f in a.terms.get(g, {}).items():
        xi = wedge(tangent_ambient(group, g, mask), norm, p)
        f_amb = lift_coeff(group, g, f)
        for s_mask, c in xi.terms.items():
            cur = by_mask.get(s_mask)
            add = poly_scale(f_amb, c, p)
            by_mask[s_mask] = poly_add(cur, add, p) if cur is not None else add
    zero = poly_zero(n)
    table = {}
    for key in iproduct(range(n), repeat=i):
        sign = _tuple_sign(key)
        if sign == 0:
            table[key] = zero
            continue
        comp = by_mask.get(mask_of(key))
        if comp is None:
            table[key] = zero
        else:
            table[key] = poly_scale(comp, sign * inv_fact, p)
    return Cochain(i, g, identity(n), table)


def mu_product(group: GroupData, c1: Cochain, c2: Cochain) -> Cochain:
    """Cup product of cochains: concatenate arguments, twist the right value."""
    if not np.array_equal(c1.frame, c2.frame):
        raise ContextMismatch("cochain factors tabulated in different frames")
    p = group.p
    mat_g = group.matrix(c1.g)
    twisted = {k: substitute_linear(v, mat_g, p) for k, v in c2.table.items()}
    table = {}
    for k1, v1 in c1.table.items():
        for k2, v2 in twisted.items():
            table[k1 + k2] = poly_mul(v1, v2, p)
    return Cochain(c1.arity + c2.arity, group.mult[c1.g][c2.g], c1.frame, table)


def retabulate(cochain: Cochain, new_frame: np.ndarray, p: int) -> Cochain:
    """Re-express a cochain table on a new collection of linear forms.

    One argument slot at a time, by multilinearity.
    """
    old = cochain.frame
    if np.array_equal(old, new_frame):
        return cochain
    change = (new_frame @ mat_inv(old, p)) % p
    n_new = new_frame.shape[0]
    n_old = old.shape[0]
    table = cochain.table
    for slot in range(cochain.arity):
        nxt: dict = {}
        for key, val in table.items():
            if val.is_zero():
                continue
            for a in range(n_new):
                c = int(change[a, key[slot]])
                if not c:
                    continue
                k2 = key[:slot] + (a,) + key[slot + 1 :]
                cur = nxt.get(k2)
                add = poly_scale(val, c, p)
                nxt[k2] = poly_add(cur, add, p) if cur is not None else add
        table = nxt
    zero = poly_zero(new_frame.shape[1])
    full = {
        key: table.get(key, zero) for key in iproduct(range(n_new), repeat=cochain.arity)
    }
    return Cochain(cochain.arity, cochain.g, np.array(new_frame) % p, full)


def read_off(group: GroupData, u: int, cochain: Cochain) -> HHClass:
    """Read a class at u off a cocycle tabulated on the u-frame functionals.

    For each tangent subset S the coefficient is the plain signed sum of
    table values over all permutations of (S, full moving block), then the
    value is restricted to V^u.  Coboundaries die here: every boundary
    component carries a moving coordinate as a factor.
    """
    fr = group.frames[u]
    if not np.array_equal(cochain.frame, fr.dual):
        raise ContextMismatch("read-off needs the cochain tabulated on the frame of u")
    p = group.p
    n = group.n
    arity = cochain.arity
    d_u, m_u = group.d(u), group.m(u)
    q_t = arity - d_u
    if not 0 <= q_t <= m_u:
        return hh_zero(arity)
    terms: dict = {}
    for s_mask in subsets_of_size(m_u, q_t):
        base = tuple(bits_of(s_mask)) + tuple(range(m_u, n))
        acc = None
        for sigma in permutations(range(arity)):
            key = tuple(base[t] for t in sigma)
            sign = _tuple_sign(key)
            val = cochain.value(key)
            if val.is_zero():
                continue
            add = poly_scale(val, sign, p)
            acc = poly_add(acc, add, p) if acc is not None else add
        if acc is None or acc.is_zero():
            continue
        restricted = linear_substitute(acc, (fr.tangent_rows().T) % p, p)
        if not restricted.is_zero():
            terms.setdefault(u, {})[s_mask] = restricted
    return HHClass(arity, terms)


# -- the oracle product -------------------------------------------------------


@dataclass
class OracleStats:
    """Counters for the cochain-route product."""

    cochain_pairs_total: int = 0
    cochain_pairs_computed: int = 0
    cochain_pairs_vacuous_degree: int = 0

    def as_dict(self) -> dict:
        return {
            "cochain_pairs_total": self.cochain_pairs_total,
            "cochain_pairs_computed": self.cochain_pairs_computed,
            "cochain_pairs_vacuous_degree": self.cochain_pairs_vacuous_degree,
        }


def oracle_product(
    group: GroupData, a: HHClass, b: HHClass, stats: OracleStats | None = None
) -> HHClass:
    """Product computed the long way round, term pair by term pair.

    Every pair of group elements present in the factors is pushed through
    the cochain pipeline, whether or not the closed form would skip it;
    the only pairs not computed are those whose total degree admits no
    tangent subset at the target element, which vanish for size reasons
    alone.
    """
    p = group.p
    i, j = a.degree, b.degree
    if i + j >= p:
        raise FactorialNotInvertible(
            f"oracle needs characteristic above the total degree {i + j}, got {p}"
        )
    out = hh_zero(i + j)
    right_cochains = {h: hkr_cochain(group, b, h) for h in b.terms}
    for g in a.terms:
        psi1 = hkr_cochain(group, a, g)
        for h, psi2 in right_cochains.items():
            if stats:
                stats.cochain_pairs_total += 1
            u = group.mult[g][h]
            if not 0 <= i + j - group.d(u) <= group.m(u):
                if stats:
                    stats.cochain_pairs_vacuous_degree += 1
                continue
            if stats:
                stats.cochain_pairs_computed += 1
            mu = mu_product(group, psi1, psi2)
            mu_u = retabulate(mu, group.frames[u].dual, p)
            out = hh_add(out, read_off(group, u, mu_u), p)
    return out
