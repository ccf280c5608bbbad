"""Runnable property checks.

Each property is a named, seeded check of one structural fact the engine
relies on.  They are meant to be run against any problem file, and their
text output is deterministic for a fixed seed so runs can be diffed.

Properties that need a symplectic form report SKIP when the problem file
carries none.  One property (general-associativity) is informational:
it documents behavior on non-invariant classes without gating the exit
status, since the ring the model describes lives on the invariants.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field

import numpy as np

from .groups import GroupData, generate_group
from .hhalgebra import (
    HHClass,
    conjugation_action,
    hh_scale,
    invariant_project,
    product,
    random_class,
    subsets_of_size,
    unit,
)
from .linalg import subspace_intersection
from .multilinear import mv, wedge
from .oracle import (
    expected_graded_dim,
    hkr_cochain,
    koszul_cohomology_dim,
    koszul_differential,
    oracle_product,
    read_off,
    retabulate,
)
from .polyring import poly, poly_add, poly_mul, poly_scale
from .symplectic import (
    SymplecticCtx,
    normal_volume_ambient,
    sympl_conjugation,
    sympl_product,
    trivialize,
    untrivialize,
)


@dataclass
class PropertyReport:
    name: str
    status: str  # "passed", "failed", "skipped"
    checks: int = 0
    informational: bool = False
    failures: list = field(default_factory=list)
    note: str = ""

    def line(self) -> str:
        tag = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[self.status]
        if self.informational:
            tag = tag + "*"
        out = f"[{tag}] {self.name:32s} checks={self.checks}"
        if self.note:
            out += f"  ({self.note})"
        for f in self.failures[:3]:
            out += f"\n       {f}"
        return out


def _rng_for(seed: int, name: str) -> random.Random:
    digest = hashlib.sha256(f"{seed}:{name}".encode()).hexdigest()
    return random.Random(int(digest[:16], 16))


# -- individual properties ----------------------------------------------------


def check_koszul_dims(group, sctx, trials, seed):
    rep = PropertyReport("koszul-dimensions", "passed")
    for g in range(group.size):
        for q in range(group.n + 1):
            for d_poly in range(4):
                got = koszul_cohomology_dim(group, g, q, d_poly)
                want = expected_graded_dim(group, g, q, d_poly)
                rep.checks += 1
                if got != want:
                    rep.failures.append(
                        f"g={g} q={q} D={d_poly}: complex gives {got}, model gives {want}"
                    )
    if rep.failures:
        rep.status = "failed"
    return rep


def check_koszul_dd(group, sctx, trials, seed):
    rep = PropertyReport("koszul-square-zero", "passed")
    p = group.p
    for g in range(group.size):
        for q in range(group.n):
            for d_poly in range(3):
                d1 = koszul_differential(group, g, q, d_poly)
                d2 = koszul_differential(group, g, q + 1, d_poly + 1)
                rep.checks += 1
                if ((d2 @ d1) % p).any():
                    rep.failures.append(f"g={g} q={q} D={d_poly}: d.d != 0")
    if rep.failures:
        rep.status = "failed"
    return rep


def check_oracle_equivalence(group, sctx, trials, seed):
    rep = PropertyReport("oracle-equivalence", "passed")
    rng = _rng_for(seed, rep.name)
    for k in range(trials):
        # the cochain route divides by (i+j)! so sample inside its domain
        i = rng.randint(0, min(group.n, group.p - 1))
        j = rng.randint(0, min(group.n, group.p - 1 - i))
        a = random_class(group, i, rng)
        b = random_class(group, j, rng)
        rep.checks += 1
        if product(group, a, b) != oracle_product(group, a, b):
            rep.failures.append(f"case {k}: degrees ({i},{j}) disagree")
    if rep.failures:
        rep.status = "failed"
    return rep


def check_unit_law(group, sctx, trials, seed):
    rep = PropertyReport("unit-law", "passed")
    rng = _rng_for(seed, rep.name)
    one = unit(group)
    for k in range(trials):
        a = random_class(group, rng.randint(0, group.n), rng)
        rep.checks += 1
        if product(group, one, a) != a or product(group, a, one) != a:
            rep.failures.append(f"case {k}: unit fails at degree {a.degree}")
    if rep.failures:
        rep.status = "failed"
    return rep


def check_graded_commutativity(group, sctx, trials, seed):
    rep = PropertyReport("graded-commutativity", "passed")
    rng = _rng_for(seed, rep.name)
    p = group.p
    for k in range(trials):
        i, j = rng.randint(0, group.n), rng.randint(0, group.n)
        a = invariant_project(group, random_class(group, i, rng))
        b = invariant_project(group, random_class(group, j, rng))
        sign = p - 1 if (i * j) % 2 else 1
        rep.checks += 1
        if product(group, a, b) != hh_scale(product(group, b, a), sign, p):
            rep.failures.append(f"case {k}: degrees ({i},{j})")
    if rep.failures:
        rep.status = "failed"
    return rep


def check_associativity(group, sctx, trials, seed):
    rep = PropertyReport("associativity-invariant", "passed")
    rng = _rng_for(seed, rep.name)
    for k in range(trials):
        a = invariant_project(group, random_class(group, rng.randint(0, group.n), rng))
        b = invariant_project(group, random_class(group, rng.randint(0, group.n), rng))
        c = invariant_project(group, random_class(group, rng.randint(0, group.n), rng))
        rep.checks += 1
        if product(group, product(group, a, b), c) != product(group, a, product(group, b, c)):
            rep.failures.append(f"case {k}")
    if rep.failures:
        rep.status = "failed"
    return rep


def check_associativity_general(group, sctx, trials, seed):
    rep = PropertyReport("associativity-general", "passed", informational=True)
    rng = _rng_for(seed, rep.name)
    for k in range(trials):
        a = random_class(group, rng.randint(0, group.n), rng)
        b = random_class(group, rng.randint(0, group.n), rng)
        c = random_class(group, rng.randint(0, group.n), rng)
        rep.checks += 1
        if product(group, product(group, a, b), c) != product(group, a, product(group, b, c)):
            rep.failures.append(f"case {k}")
    if rep.failures:
        rep.status = "failed"
        rep.note = "informational: product before averaging"
    return rep


def check_equivariance(group, sctx, trials, seed):
    rep = PropertyReport("action-equivariance", "passed")
    rng = _rng_for(seed, rep.name)
    for k in range(trials):
        a = random_class(group, rng.randint(0, group.n), rng)
        b = random_class(group, rng.randint(0, group.n), rng)
        h = rng.randrange(group.size)
        rep.checks += 1
        lhs = conjugation_action(group, h, product(group, a, b))
        rhs = product(
            group, conjugation_action(group, h, a), conjugation_action(group, h, b)
        )
        if lhs != rhs:
            rep.failures.append(f"case {k}: h={h}")
    if rep.failures:
        rep.status = "failed"
    return rep


def check_action_composition(group, sctx, trials, seed):
    rep = PropertyReport("action-composition", "passed")
    rng = _rng_for(seed, rep.name)
    for k in range(trials):
        a = random_class(group, rng.randint(0, group.n), rng)
        h1 = rng.randrange(group.size)
        h2 = rng.randrange(group.size)
        rep.checks += 1
        lhs = conjugation_action(group, h1, conjugation_action(group, h2, a))
        rhs = conjugation_action(group, group.mult[h1][h2], a)
        if lhs != rhs:
            rep.failures.append(f"case {k}: h1={h1} h2={h2}")
    if rep.failures:
        rep.status = "failed"
    return rep


def check_projection(group, sctx, trials, seed):
    rep = PropertyReport("projection-idempotent", "passed")
    rng = _rng_for(seed, rep.name)
    for k in range(trials):
        a = random_class(group, rng.randint(0, group.n), rng)
        pr = invariant_project(group, a)
        rep.checks += 1
        ok = invariant_project(group, pr) == pr and all(
            conjugation_action(group, h, pr) == pr for h in range(group.size)
        )
        if not ok:
            rep.failures.append(f"case {k}")
    if rep.failures:
        rep.status = "failed"
    return rep


def check_support_geometry(group, sctx, trials, seed):
    rep = PropertyReport("support-geometry", "passed")
    p = group.p
    for g in range(group.size):
        for h in range(group.size):
            if not group.supported[g][h]:
                continue
            u = group.mult[g][h]
            rep.checks += 1
            meet = subspace_intersection(group.fixed[g], group.fixed[h], p)
            if group.fixed[u] != meet:
                rep.failures.append(f"g={g} h={h}: fixed spaces do not intersect onto gh")
            if group.d(u) != group.d(g) + group.d(h):
                rep.failures.append(f"g={g} h={h}: codimensions not additive")
    if rep.failures:
        rep.status = "failed"
    return rep


def check_vanishing_support(group, sctx, trials, seed):
    rep = PropertyReport("vanishing-off-support", "passed")
    rng = _rng_for(seed, rep.name)
    pairs = [
        (g, h)
        for g in range(group.size)
        for h in range(group.size)
        if not group.supported[g][h]
    ]
    if not pairs:
        rep.status = "skipped"
        rep.note = "every pair of elements is supported"
        return rep
    for k in range(trials):
        g, h = pairs[k % len(pairs)]
        a = _random_class_at(group, g, rng)
        b = _random_class_at(group, h, rng)
        if a is None or b is None:
            continue
        rep.checks += 1
        if not product(group, a, b).is_zero():
            rep.failures.append(f"case {k}: closed form nonzero at unsupported ({g},{h})")
        elif a.degree + b.degree < group.p and not oracle_product(group, a, b).is_zero():
            rep.failures.append(f"case {k}: cochain route nonzero at unsupported ({g},{h})")
    if rep.failures:
        rep.status = "failed"
    return rep


def _random_class_at(group, g, rng):
    """A random class concentrated at one element, or None if impossible."""
    m_g, d_g = group.m(g), group.d(g)
    degree = d_g + rng.randint(0, m_g)
    masks = subsets_of_size(m_g, degree - d_g)
    if not masks:
        return None
    mask = rng.choice(masks)
    exps = [0] * m_g
    for _ in range(rng.randint(0, 2)):
        if m_g:
            exps[rng.randrange(m_g)] += 1
    f = poly(m_g, {tuple(exps): rng.randrange(1, group.p)}, group.p)
    return HHClass(degree, {g: {mask: f}})


def check_hkr_roundtrip(group, sctx, trials, seed):
    rep = PropertyReport("hkr-roundtrip", "passed")
    rng = _rng_for(seed, rep.name)
    p = group.p
    for k in range(trials):
        a = random_class(group, rng.randint(0, group.n), rng)
        for g in sorted(a.terms):
            rep.checks += 1
            psi = hkr_cochain(group, a, g)
            back = read_off(group, g, retabulate(psi, group.frames[g].dual, p))
            if back.terms != {g: a.terms[g]}:
                rep.failures.append(f"case {k}: element {g}")
    if rep.failures:
        rep.status = "failed"
    return rep


def check_hkr_antisymmetry(group, sctx, trials, seed):
    rep = PropertyReport("hkr-antisymmetry", "passed")
    rng = _rng_for(seed, rep.name)
    p = group.p
    n = group.n
    for k in range(trials):
        degree = rng.randint(1, group.n)
        a = random_class(group, degree, rng)
        gs = sorted(a.terms)
        if not gs:
            continue
        g = gs[rng.randrange(len(gs))]
        psi = hkr_cochain(group, a, g)
        if psi.arity < 2:
            continue
        key = tuple(rng.randrange(n) for _ in range(psi.arity))
        slot = rng.randrange(psi.arity - 1)
        swapped = list(key)
        swapped[slot], swapped[slot + 1] = swapped[slot + 1], swapped[slot]
        rep.checks += 1
        if psi.value(tuple(swapped)) != poly_scale(psi.value(key), p - 1, p):
            rep.failures.append(f"case {k}: key {key} slot {slot}")
    if rep.failures:
        rep.status = "failed"
    return rep


def check_symplectic_multiplicativity(group, sctx, trials, seed):
    rep = PropertyReport("volume-multiplicativity", "passed")
    if sctx is None:
        rep.status = "skipped"
        rep.note = "problem file carries no form"
        return rep
    p = group.p
    for g in range(group.size):
        for h in range(group.size):
            if not group.supported[g][h]:
                continue
            rep.checks += 1
            u = group.mult[g][h]
            lhs = wedge(
                normal_volume_ambient(sctx, g), normal_volume_ambient(sctx, h), p
            )
            if lhs != normal_volume_ambient(sctx, u):
                rep.failures.append(f"g={g} h={h}: volumes do not multiply")
    if rep.failures:
        rep.status = "failed"
    return rep


def check_symplectic_intertwining(group, sctx, trials, seed):
    rep = PropertyReport("volume-intertwining", "passed")
    if sctx is None:
        rep.status = "skipped"
        rep.note = "problem file carries no form"
        return rep
    rng = _rng_for(seed, rep.name)
    for k in range(trials):
        a = random_class(group, rng.randint(0, group.n), rng)
        b = random_class(group, rng.randint(0, group.n), rng)
        h = rng.randrange(group.size)
        rep.checks += 1
        ok = (
            untrivialize(sctx, trivialize(sctx, a)) == a
            and trivialize(sctx, conjugation_action(group, h, a))
            == sympl_conjugation(sctx, h, trivialize(sctx, a))
            and trivialize(sctx, product(group, a, b))
            == sympl_product(sctx, trivialize(sctx, a), trivialize(sctx, b))
        )
        if not ok:
            rep.failures.append(f"case {k}: h={h}")
    if rep.failures:
        rep.status = "failed"
    return rep


def check_hkr_degeneration(group, sctx, trials, seed):
    """With no group in the picture the product must be the classical one:
    wedge the multivectors, multiply the polynomials."""
    rep = PropertyReport("trivial-group-degeneration", "passed")
    rng = _rng_for(seed, rep.name)
    p = group.p
    n = group.n
    triv = generate_group([np.eye(n, dtype=np.int64).tolist()], p, dim=n)
    for k in range(trials):
        i = rng.randint(0, min(n, p - 1))
        j = rng.randint(0, min(n, p - 1 - i))
        a = random_class(triv, i, rng)
        b = random_class(triv, j, rng)
        got = product(triv, a, b)
        want_terms: dict = {}
        for s_a, f in a.terms.get(0, {}).items():
            for s_b, e in b.terms.get(0, {}).items():
                mvv = wedge(mv(n, i, {s_a: 1}, p), mv(n, j, {s_b: 1}, p), p)
                for mask, c in mvv.terms.items():
                    add = poly_scale(poly_mul(f, e, p), c, p)
                    cur = want_terms.get(mask)
                    new = add if cur is None else poly_add(cur, add, p)
                    if new.is_zero():
                        want_terms.pop(mask, None)
                    else:
                        want_terms[mask] = new
        want = HHClass(i + j, {0: want_terms} if want_terms else {})
        rep.checks += 1
        if got != want or got != oracle_product(triv, a, b):
            rep.failures.append(f"case {k}: degrees ({i},{j})")
    if rep.failures:
        rep.status = "failed"
    return rep


PROPERTIES = {
    "koszul-dimensions": check_koszul_dims,
    "koszul-square-zero": check_koszul_dd,
    "oracle-equivalence": check_oracle_equivalence,
    "unit-law": check_unit_law,
    "graded-commutativity": check_graded_commutativity,
    "associativity-invariant": check_associativity,
    "associativity-general": check_associativity_general,
    "action-equivariance": check_equivariance,
    "action-composition": check_action_composition,
    "projection-idempotent": check_projection,
    "support-geometry": check_support_geometry,
    "vanishing-off-support": check_vanishing_support,
    "hkr-roundtrip": check_hkr_roundtrip,
    "hkr-antisymmetry": check_hkr_antisymmetry,
    "volume-multiplicativity": check_symplectic_multiplicativity,
    "volume-intertwining": check_symplectic_intertwining,
    "trivial-group-degeneration": check_hkr_degeneration,
}


def run_properties(
    group: GroupData,
    sctx: SymplecticCtx | None,
    names=None,
    *,
    trials: int = 25,
    seed: int = 0,
) -> list[PropertyReport]:
    chosen = list(PROPERTIES) if not names else list(names)
    reports = []
    for name in chosen:
        if name not in PROPERTIES:
            raise KeyError(f"unknown property {name!r}")
        reports.append(PROPERTIES[name](group, sctx, trials, seed))
    return reports
