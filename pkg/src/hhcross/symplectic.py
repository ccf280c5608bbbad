"""Canonical normal generators in the symplectic case.

When the group preserves a symplectic form, each moving space (V^g)^v is
even-dimensional and the form restricts nondegenerately to it.  That
picks a preferred generator of the normal line: s_g is the top wedge of
the moving space normalized against the divided power

    (omega restricted to the moving space)^(d/2) / (d/2)!

so that the pairing of the two is 1.  The payoff is multiplicativity:
whenever the product of terms at g and h is supported, the ambient wedge
of s_g and s_h IS s_{gh} on the nose, so in the s-normalized presentation
the product needs no normal bookkeeping at all, and the conjugation
action moves s_g to s_{hgh^-1} exactly.  Both facts are property-tested
against the general engine rather than assumed.

Classes in this presentation store, per g, {tangent bitmask -> polynomial}
with the normal factor implicitly s_g.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContextMismatch, NotSymplecticOnComplement
from .groups import GroupData
from .hhalgebra import (
    HHClass,
    ambient_to_frame,
    lift_coeff,
    random_class,
    restrict_coeff,
    tangent_ambient,
)
from .linalg import as_mat, rank
from .multilinear import Multivector, map_components, mv, mv_scalar, wedge
from .polyring import linear_substitute, poly_add, poly_mul, poly_scale
from .scalars import factorial_inverse, scalar_inverse


@dataclass(frozen=True)
class SymplecticCtx:
    """A group together with an invariant symplectic form and the derived
    per-element normal volumes."""

    group: GroupData
    omega: np.ndarray
    volumes: tuple  # per g: Multivector of degree d_g over the normal frame block
    rhos: tuple  # per g: scalar with  (frame top wedge) = rho_g * s_g

    def __eq__(self, other):
        return (
            isinstance(other, SymplecticCtx)
            and self.group is other.group
            and np.array_equal(self.omega, other.omega)
        )

    def __hash__(self):
        return hash((id(self.group), self.omega.tobytes()))


def _moving_form_power(group: GroupData, g: int, omega: np.ndarray):
    """rho_g: the divided (d/2)-th power of omega on the moving space of g,
    expressed on the frame top wedge."""
    p = group.p
    d = group.d(g)
    if d == 0:
        return 1
    if d % 2:
        raise NotSymplecticOnComplement(
            f"moving space of element {g} is odd-dimensional"
        )
    rows = group.frames[g].normal_rows()
    gram = (rows @ omega @ rows.T) % p
    if rank(gram, p) < d:
        raise NotSymplecticOnComplement(
            f"form degenerates on the moving space of element {g}"
        )
    two_form = mv(
        d,
        2,
        {(1 << a) | (1 << b): int(gram[a, b]) for a in range(d) for b in range(a + 1, d)},
        p,
    )
    power = mv_scalar(d, 1, p)
    for _ in range(d // 2):
        power = wedge(power, two_form, p)
    rho = power.terms.get((1 << d) - 1, 0) * factorial_inverse(d // 2, p) % p
    if rho == 0:
        raise NotSymplecticOnComplement(
            f"divided power of the form vanishes on the moving space of element {g}"
        )
    return rho


def make_symplectic_ctx(group: GroupData, omega_rows) -> SymplecticCtx:
    """Validate the form and precompute every s_g."""
    p = group.p
    n = group.n
    omega = as_mat(omega_rows, p)
    if omega.shape != (n, n):
        raise ContextMismatch(f"form must be {n}x{n}")
    if n % 2:
        raise ContextMismatch("symplectic space must be even-dimensional")
    if ((omega + omega.T) % p).any():
        raise ContextMismatch("form must be antisymmetric")
    if rank(omega, p) < n:
        raise ContextMismatch("form must be nondegenerate")
    for g in range(group.size):
        m = group.matrix(g)
        if ((m.T @ omega @ m - omega) % p).any():
            raise ContextMismatch(f"group element {g} does not preserve the form")
    rhos = []
    volumes = []
    for g in range(group.size):
        rho = _moving_form_power(group, g, omega)
        rhos.append(rho)
        d = group.d(g)
        if d == 0:
            volumes.append(mv_scalar(0, 1, p))
        else:
            volumes.append(mv(d, d, {(1 << d) - 1: scalar_inverse(rho, p)}, p))
    return SymplecticCtx(group, omega, tuple(volumes), tuple(rhos))


def normal_volume(ctx: SymplecticCtx, g: int) -> Multivector:
    """s_g in the normal frame block of g."""
    return ctx.volumes[g]


def normal_volume_ambient(ctx: SymplecticCtx, g: int) -> Multivector:
    """s_g pushed into the ambient exterior algebra."""
    group = ctx.group
    rows = group.frames[g].normal_rows()
    return map_components(rows.T % group.p, ctx.volumes[g], group.p)


# -- the s-normalized presentation -------------------------------------------


@dataclass(frozen=True)
class SymplecticHHClass:
    """A class with every normal factor written against s_g."""

    degree: int
    terms: dict  # g -> {tangent bitmask -> Polynomial in m_g variables}

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SymplecticHHClass)
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


def trivialize(ctx: SymplecticCtx, a: HHClass) -> SymplecticHHClass:
    """Rewrite frame-top normal factors against s_g (an isomorphism)."""
    p = ctx.group.p
    return SymplecticHHClass(
        a.degree,
        {
            g: {s: poly_scale(f, ctx.rhos[g], p) for s, f in sd.items()}
            for g, sd in a.terms.items()
        },
    )


def untrivialize(ctx: SymplecticCtx, t: SymplecticHHClass) -> HHClass:
    """Inverse of trivialize."""
    p = ctx.group.p
    return HHClass(
        t.degree,
        {
            g: {s: poly_scale(f, scalar_inverse(ctx.rhos[g], p), p) for s, f in sd.items()}
            for g, sd in t.terms.items()
        },
    )


def _sput(terms: dict, g: int, mask: int, f, p: int) -> None:
    sd = terms.setdefault(g, {})
    cur = sd.get(mask)
    new = poly_add(cur, f, p) if cur is not None else f
    if new.is_zero():
        sd.pop(mask, None)
        if not sd:
            terms.pop(g, None)
    else:
        sd[mask] = new


def sympl_product(
    ctx: SymplecticCtx, a: SymplecticHHClass, b: SymplecticHHClass
) -> SymplecticHHClass:
    """Product in the s-normalized presentation.

    Identical to the general closed form except that the normal factor is
    gone: multiplicativity of the s_g makes it exactly 1.
    """
    group = ctx.group
    p = group.p
    j = b.degree
    out: dict = {}
    for g, sd_a in a.terms.items():
        d_g = group.d(g)
        for h, sd_b in b.terms.items():
            if not group.supported[g][h]:
                continue
            d_h = group.d(h)
            u = group.mult[g][h]
            sign = -1 if (d_g * (j - d_h)) % 2 else 1
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
                    tang = wedge(pushed_a[s_a], pushed_b[s_b], p)
                    if tang.is_zero():
                        continue
                    tang_u = ambient_to_frame(group, u, tang, "tangent")
                    fe_u = restrict_coeff(group, u, poly_mul(f_amb, lift_coeff(group, h, e), p))
                    for mask, c_t in tang_u.terms.items():
                        _sput(out, u, mask, poly_scale(fe_u, sign * c_t % p, p), p)
    return SymplecticHHClass(a.degree + b.degree, out)


def sympl_conjugation(ctx: SymplecticCtx, h: int, t: SymplecticHHClass) -> SymplecticHHClass:
    """Conjugation action in the s-normalized presentation.

    No normal factor: the form is invariant, so transport carries s_g to
    s_{hgh^-1} exactly.
    """
    group = ctx.group
    p = group.p
    mat_h = group.matrix(h)
    mat_h_inv = group.matrix(group.inverse[h])
    out: dict = {}
    for g, sd in t.terms.items():
        u = group.conjugate(h, g)
        for mask, f in sd.items():
            tang_img = map_components(mat_h, tangent_ambient(group, g, mask), p)
            tang_u = ambient_to_frame(group, u, tang_img, "tangent")
            f_moved = restrict_coeff(
                group, u, linear_substitute(lift_coeff(group, g, f), mat_h_inv, p)
            )
            for m2, c_t in tang_u.terms.items():
                _sput(out, u, m2, poly_scale(f_moved, c_t, p), p)
    return SymplecticHHClass(t.degree, out)


def random_symplectic_class(ctx: SymplecticCtx, degree: int, rng, **kw) -> SymplecticHHClass:
    return trivialize(ctx, random_class(ctx.group, degree, rng, **kw))
