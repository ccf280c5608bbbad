"""The cohomology ring on fixed-point data.

A class of degree i is a sum over group elements g of terms

    tangent (in Lambda^(i-d_g) of the fixed space V^g, coordinates in the
    deterministic eigenframe of g)
  x normal  (the one-dimensional top exterior power of the moving space
    (V^g)^v, again in frame coordinates)
  x coeff   (a polynomial on V^g).

Internally a class stores, per g, a map {tangent bitmask -> polynomial}
with the normal factor normalized to the full frame subset and its scalar
folded into the polynomial.  That makes equality of classes plain dict
equality.

The product of a term at g and a term at h lands at u = gh and vanishes
unless the moving spaces of g and h intersect trivially; otherwise it is

    sign . (pi^u tangent_g ^ pi^u tangent_h) x (normal_g ^ normal_h)
         x (coeff_g . coeff_h restricted to V^u)

with sign = (-1)^(d_g (j - d_h)) for j the degree of the second class,
pi^u the symmetrizer of u, and all wedges taken in the ambient space then
re-expressed in the frames of u.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import DegreeInhomogeneous, DimensionMismatch, NotInSpan, OutOfRange
from .groups import GroupData
from .multilinear import (
    Multivector,
    bits_of,
    map_components,
    mask_of,
    mv,
    mv_scalar,
    wedge,
    wedge_vectors,
)
from .polyring import (
    Polynomial,
    linear_substitute,
    poly,
    poly_add,
    poly_const,
    poly_mul,
    poly_scale,
)
from .scalars import scalar_inverse


@dataclass(frozen=True)
class HHTerm:
    """One basis-aligned term of a class: (g, tangent, normal, coeff)."""

    g: int
    tangent: Multivector
    normal: Multivector
    coeff: Polynomial


@dataclass(frozen=True)
class HHClass:
    degree: int
    terms: dict  # g -> {tangent bitmask -> Polynomial in m_g variables}

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> list[int]:
        return sorted(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, HHClass)
            and self.degree == other.degree
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash(
            (
                self.degree,
                tuple(
                    (g, tuple(sorted((s, tuple(sorted(f.terms.items()))) for s, f in sd.items())))
                    for g, sd in sorted(self.terms.items())
                ),
            )
        )


def hh_zero(degree: int) -> HHClass:
    return HHClass(degree, {})


def _put(terms: dict, g: int, mask: int, f: Polynomial, p: int) -> None:
    sd = terms.setdefault(g, {})
    cur = sd.get(mask)
    new = poly_add(cur, f, p) if cur is not None else f
    if new.is_zero():
        sd.pop(mask, None)
        if not sd:
            terms.pop(g, None)
    else:
        sd[mask] = new


def make_class(group: GroupData, degree: int, hh_terms) -> HHClass:
    """Assemble and normalize a class from HHTerm values.

    Validates that every term matches the frames of its group element and
    that all terms share the cohomological degree.
    """
    p = group.p
    out: dict = {}
    for t in hh_terms:
        if not 0 <= t.g < group.size:
            raise OutOfRange(f"group index {t.g} out of range")
        m_g, d_g = group.m(t.g), group.d(t.g)
        if t.tangent.ambient_dim != m_g:
            raise DimensionMismatch(
                f"tangent ambient {t.tangent.ambient_dim} != dim V^g = {m_g}"
            )
        if t.normal.ambient_dim != d_g or t.normal.degree != d_g:
            raise DimensionMismatch("normal factor must be the top power of the moving space")
        if t.coeff.num_vars != m_g:
            raise DimensionMismatch("coefficient polynomial must live on V^g")
        if t.tangent.degree + d_g != degree:
            raise DegreeInhomogeneous(
                f"term at g={t.g} has degree {t.tangent.degree + d_g}, class says {degree}"
            )
        top = (1 << d_g) - 1
        c_norm = t.normal.terms.get(top, 0)
        if not c_norm:
            continue
        for mask, c_tan in t.tangent.terms.items():
            _put(out, t.g, mask, poly_scale(t.coeff, c_tan * c_norm, p), p)
    return HHClass(degree, out)


def class_terms(group: GroupData, a: HHClass) -> list[HHTerm]:
    """Expanded canonical term list: one HHTerm per (g, tangent subset)."""
    out = []
    p = group.p
    for g in sorted(a.terms):
        d_g = group.d(g)
        m_g = group.m(g)
        top = (1 << d_g) - 1
        for mask in sorted(a.terms[g]):
            out.append(
                HHTerm(
                    g=g,
                    tangent=mv(m_g, a.degree - d_g, {mask: 1}, p),
                    normal=mv(d_g, d_g, {top: 1}, p),
                    coeff=a.terms[g][mask],
                )
            )
    return out


def hh_add(a: HHClass, b: HHClass, p: int) -> HHClass:
    if a.degree != b.degree:
        raise DegreeInhomogeneous("classes of distinct degree")
    out = {g: dict(sd) for g, sd in a.terms.items()}
    for g, sd in b.terms.items():
        for mask, f in sd.items():
            _put(out, g, mask, f, p)
    return HHClass(a.degree, out)


def hh_scale(a: HHClass, c: int, p: int) -> HHClass:
    c %= p
    if c == 0:
        return hh_zero(a.degree)
    return HHClass(
        a.degree,
        {g: {m: poly_scale(f, c, p) for m, f in sd.items()} for g, sd in a.terms.items()},
    )


def hh_sub(a: HHClass, b: HHClass, p: int) -> HHClass:
    return hh_add(a, hh_scale(b, p - 1, p), p)


def unit(group: GroupData) -> HHClass:
    """The identity class: degree 0, constant 1 at the identity element."""
    n = group.n
    return HHClass(0, {0: {0: poly_const(n, 1, group.p)}})


# -- frame plumbing ---------------------------------------------------------


def tangent_ambient(group: GroupData, g: int, mask: int) -> Multivector:
    """Push a tangent basis subset of V^g into the ambient exterior algebra."""
    rows = group.frames[g].tangent_rows()
    return wedge_vectors(rows[bits_of(mask)], group.p)


def normal_ambient(group: GroupData, g: int) -> Multivector:
    """Ambient top wedge of the moving-space frame of g."""
    return wedge_vectors(group.frames[g].normal_rows(), group.p)


def ambient_to_frame(group: GroupData, g: int, a: Multivector, part: str) -> Multivector:
    """Contract an ambient multivector into the tangent or normal frame of g.

    Raises NotInSpan when the multivector has support outside that block of
    the eigenframe.
    """
    fr = group.frames[g]
    coords = map_components(fr.dual, a, group.p)
    m_g = fr.fixed_dim
    n = group.n
    if part == "tangent":
        bad = ((1 << n) - 1) ^ ((1 << m_g) - 1)
        shift = 0
        new_dim = m_g
    elif part == "normal":
        bad = (1 << m_g) - 1
        shift = m_g
        new_dim = n - m_g
    else:
        raise ValueError(part)
    terms = {}
    for mask, c in coords.terms.items():
        if mask & bad:
            raise NotInSpan(f"support escapes the {part} block of the frame of g={g}")
        terms[mask >> shift] = c
    return Multivector(new_dim, a.degree, terms)


def lift_coeff(group: GroupData, g: int, f: Polynomial) -> Polynomial:
    """Extend a polynomial on V^g to the ambient space through the frame
    coordinates (constant along the moving directions)."""
    return linear_substitute(f, group.frames[g].tangent_dual(), group.p)


def restrict_coeff(group: GroupData, g: int, f_ambient: Polynomial) -> Polynomial:
    """Restrict an ambient polynomial to V^g, in frame coordinates."""
    rows = group.frames[g].tangent_rows()
    return linear_substitute(f_ambient, rows.T % group.p, group.p)


# -- the product ------------------------------------------------------------


@dataclass
class ProductStats:
    """Counters describing how one or more products were computed."""

    pairs_total: int = 0
    pairs_skipped_support: int = 0
    pairs_computed: int = 0
    pairs_zero_tangent: int = 0

    def as_dict(self) -> dict:
        return {
            "pairs_total": self.pairs_total,
            "pairs_skipped_support": self.pairs_skipped_support,
            "pairs_computed": self.pairs_computed,
            "pairs_zero_tangent": self.pairs_zero_tangent,
        }


def product(
    group: GroupData, a: HHClass, b: HHClass, stats: ProductStats | None = None
) -> HHClass:
    """Closed-form product of two classes."""
    p = group.p
    i, j = a.degree, b.degree
    out: dict = {}
    for g, sd_a in a.terms.items():
        d_g = group.d(g)
        for h, sd_b in b.terms.items():
            d_h = group.d(h)
            npairs = len(sd_a) * len(sd_b)
            if stats:
                stats.pairs_total += npairs
            if not group.supported[g][h]:
                if stats:
                    stats.pairs_skipped_support += npairs
                continue
            u = group.mult[g][h]
            d_u = group.d(u)
            m_u = group.m(u)
            assert d_u == d_g + d_h, "support condition must force additive codimension"
            sign = -1 if (d_g * (j - d_h)) % 2 else 1

            # normal factor: one scalar for the whole (g, h) block
            norm_wedge = wedge(normal_ambient(group, g), normal_ambient(group, h), p)
            norm_u = ambient_to_frame(group, u, norm_wedge, "normal")
            c_norm = norm_u.terms.get((1 << d_u) - 1, 0)
            assert c_norm, "moving frames with trivial intersection must wedge to a volume"

            proj_u = group.projectors[u]
            pushed_a = {
                s: map_components(proj_u, tangent_ambient(group, g, s), p) for s in sd_a
            }
            pushed_b = {
                s: map_components(proj_u, tangent_ambient(group, h, s), p) for s in sd_b
            }
            for s_a, f in sd_a.items():
                f_amb = lift_coeff(group, g, f)
                for s_b, e in sd_b.items():
                    if stats:
                        stats.pairs_computed += 1
                    tang = wedge(pushed_a[s_a], pushed_b[s_b], p)
                    if tang.is_zero():
                        if stats:
                            stats.pairs_zero_tangent += 1
                        continue
                    tang_u = ambient_to_frame(group, u, tang, "tangent")
                    fe = poly_mul(f_amb, lift_coeff(group, h, e), p)
                    fe_u = restrict_coeff(group, u, fe)
                    scalar = sign * c_norm % p
                    for mask, c_t in tang_u.terms.items():
                        _put(out, u, mask, poly_scale(fe_u, scalar * c_t, p), p)
    return HHClass(i + j, out)


# -- group action and invariants --------------------------------------------


def conjugation_action(group: GroupData, h: int, a: HHClass) -> HHClass:
    """Transport a class along b -> h b h^-1.

    A term at g moves to h g h^-1; multivectors map through the matrix of
    h and are re-expressed in the frames of the target; the coefficient is
    carried by the inverse substitution so the map is a left group action.
    """
    p = group.p
    mat_h = group.matrix(h)
    mat_h_inv = group.matrix(group.inverse[h])
    out: dict = {}
    for g, sd in a.terms.items():
        u = group.conjugate(h, g)
        d_u = group.d(u)
        norm_img = map_components(mat_h, normal_ambient(group, g), p)
        c_norm = ambient_to_frame(group, u, norm_img, "normal").terms.get((1 << d_u) - 1, 0)
        for mask, f in sd.items():
            tang_img = map_components(mat_h, tangent_ambient(group, g, mask), p)
            tang_u = ambient_to_frame(group, u, tang_img, "tangent")
            f_moved = restrict_coeff(
                group, u, linear_substitute(lift_coeff(group, g, f), mat_h_inv, p)
            )
            for m2, c_t in tang_u.terms.items():
                _put(out, u, m2, poly_scale(f_moved, c_t * c_norm, p), p)
    return HHClass(a.degree, out)


def invariant_project(group: GroupData, a: HHClass) -> HHClass:
    """Average of the conjugation action over the group."""
    p = group.p
    acc = hh_zero(a.degree)
    for h in range(group.size):
        acc = hh_add(acc, conjugation_action(group, h, a), p)
    return hh_scale(acc, scalar_inverse(group.size % p, p), p)


# -- sampling ----------------------------------------------------------------


def subsets_of_size(m: int, k: int) -> list[int]:
    """All bitmasks of k-subsets of range(m), ascending."""
    if k < 0 or k > m:
        return []
    return sorted(mask_of(c) for c in combinations(range(m), k))


def random_class(
    group: GroupData,
    degree: int,
    rng,
    *,
    max_poly_degree: int = 3,
    term_prob: float = 0.6,
) -> HHClass:
    """Seeded random homogeneous class of the given degree."""
    p = group.p
    if not 0 <= degree <= group.n:
        raise OutOfRange(f"degree must lie in [0, {group.n}]")
    terms = []
    eligible = [g for g in range(group.size) if group.d(g) <= degree <= group.n]
    for g in eligible:
        if rng.random() > term_prob:
            continue
        m_g, d_g = group.m(g), group.d(g)
        masks = subsets_of_size(m_g, degree - d_g)
        if not masks:
            continue
        top = (1 << d_g) - 1
        for mask in rng.sample(masks, k=min(len(masks), rng.choice([1, 1, 2]))):
            poly_terms = {}
            for _ in range(rng.choice([1, 1, 2])):
                exps = [0] * m_g
                for _ in range(rng.randint(0, max_poly_degree)):
                    if m_g:
                        exps[rng.randrange(m_g)] += 1
                poly_terms[tuple(exps)] = rng.randrange(1, p)
            terms.append(
                HHTerm(
                    g=g,
                    tangent=mv(m_g, degree - d_g, {mask: 1}, p),
                    normal=mv(d_g, d_g, {top: 1}, p),
                    coeff=poly(m_g, poly_terms, p),
                )
            )
    if not terms:
        # fall back to a term at the identity, always admissible
        m_e = group.n
        masks = subsets_of_size(m_e, degree)
        mask = rng.choice(masks)
        terms.append(
            HHTerm(
                g=0,
                tangent=mv(m_e, degree, {mask: 1}, p),
                normal=mv_scalar(0, 1, p),
                coeff=poly_const(m_e, rng.randrange(1, p), p),
            )
        )
    return make_class(group, degree, terms)
