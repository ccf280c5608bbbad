"""Problem files and class files.

A problem file is TOML describing the linear group action:

    name = "swap"
    p = 7
    dim = 2
    generators = [[0, 1, 1, 0]]      # row-major, flat or nested rows
    omega = [0, 1, -1, 0]            # optional invariant symplectic form

`p` may be omitted for tooling that only needs the integer generators
(prime suggestion); everything else requires it.

A class file is JSON.  Terms carry the element index, its matrix, and
both frame blocks redundantly so a reader can audit what the indices
mean without regenerating the group; the loader checks the group
fingerprint and refuses files written against a different group.  All
serialization is key-sorted with a fixed layout so identical data gives
identical bytes.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # pragma: no cover - 3.10 fallback
    import tomli as tomllib

from .errors import ContextMismatch, SpecError
from .groups import GroupData, generate_group
from .hhalgebra import HHClass, HHTerm, make_class
from .multilinear import bits_of, mv
from .polyring import poly


@dataclass(frozen=True)
class ProblemSpec:
    name: str
    p: int | None
    dim: int
    generators: tuple
    omega: tuple | None


def _as_matrix(entry, dim: int, what: str):
    if not isinstance(entry, list) or not entry:
        raise SpecError(f"{what} must be a non-empty list")
    if isinstance(entry[0], list):
        rows = entry
    else:
        if len(entry) != dim * dim:
            raise SpecError(f"flat {what} must have {dim * dim} entries, got {len(entry)}")
        rows = [entry[k * dim : (k + 1) * dim] for k in range(dim)]
    if len(rows) != dim or any(len(r) != dim for r in rows):
        raise SpecError(f"{what} must be {dim}x{dim}")
    if not all(isinstance(x, int) for r in rows for x in r):
        raise SpecError(f"{what} entries must be integers")
    return tuple(tuple(r) for r in rows)


def load_problem(path) -> ProblemSpec:
    path = Path(path)
    with path.open("rb") as fh:
        data = tomllib.load(fh)
    if "dim" not in data:
        raise SpecError("problem file must set dim")
    dim = data["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise SpecError("dim must be a positive integer")
    p = data.get("p")
    if p is not None and (not isinstance(p, int) or p < 2):
        raise SpecError("p must be an integer >= 2 when present")
    gens = data.get("generators")
    if not isinstance(gens, list) or not gens:
        raise SpecError("problem file must list at least one generator")
    generators = tuple(_as_matrix(g, dim, "generator") for g in gens)
    omega = data.get("omega")
    if omega is not None:
        omega = _as_matrix(omega, dim, "omega")
    return ProblemSpec(
        name=str(data.get("name", path.stem)),
        p=p,
        dim=dim,
        generators=generators,
        omega=omega,
    )


def build_group(spec: ProblemSpec, *, bound: int = 256) -> GroupData:
    if spec.p is None:
        raise SpecError("problem file has no p; set one or run prime suggestion")
    return generate_group(list(spec.generators), spec.p, dim=spec.dim, bound=bound)


def group_fingerprint(group: GroupData) -> str:
    h = hashlib.sha256()
    h.update(f"p={group.p};n={group.n};".encode())
    for k in range(group.size):
        h.update(group.matrix(k).tobytes())
    return h.hexdigest()[:16]


# -- class files --------------------------------------------------------------


def class_to_dict(group: GroupData, a: HHClass) -> dict:
    terms = []
    for g in sorted(a.terms):
        fr = group.frames[g]
        for mask in sorted(a.terms[g]):
            f = a.terms[g][mask]
            coeff = sorted(
                ([list(e), c] for e, c in f.terms.items()),
                key=lambda pair: (-sum(pair[0]), [-x for x in pair[0]]),
            )
            terms.append(
                {
                    "element": g,
                    "element_matrix": group.matrix(g).tolist(),
                    "fixed_frame": fr.tangent_rows().tolist(),
                    "moving_frame": fr.normal_rows().tolist(),
                    "tangent": bits_of(mask),
                    "coefficient": coeff,
                }
            )
    return {
        "format": 1,
        "kind": "class",
        "degree": a.degree,
        "group": {"p": group.p, "dim": group.n, "fingerprint": group_fingerprint(group)},
        "terms": terms,
    }


def class_from_dict(group: GroupData, data: dict) -> HHClass:
    if data.get("kind") != "class":
        raise SpecError("not a class file")
    meta = data.get("group", {})
    fp = group_fingerprint(group)
    if meta.get("fingerprint") != fp:
        raise ContextMismatch(
            f"class file written for group {meta.get('fingerprint')}, have {fp}"
        )
    degree = data["degree"]
    p = group.p
    hh_terms = []
    for t in data["terms"]:
        g = t["element"]
        if not 0 <= g < group.size:
            raise SpecError(f"element index {g} out of range")
        if group.matrix(g).tolist() != t["element_matrix"]:
            raise ContextMismatch(f"element {g} matrix differs from the file's copy")
        m_g, d_g = group.m(g), group.d(g)
        mask = 0
        for idx in t["tangent"]:
            if not 0 <= idx < m_g:
                raise SpecError(f"tangent index {idx} out of range at element {g}")
            if mask & (1 << idx):
                raise SpecError(f"repeated tangent index {idx} at element {g}")
            mask |= 1 << idx
        coeff = poly(m_g, {tuple(e): c for e, c in t["coefficient"]}, p)
        hh_terms.append(
            HHTerm(
                g=g,
                tangent=mv(m_g, len(t["tangent"]), {mask: 1}, p),
                normal=mv(d_g, d_g, {(1 << d_g) - 1: 1}, p),
                coeff=coeff,
            )
        )
    return make_class(group, degree, hh_terms)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def save_class(group: GroupData, a: HHClass, path) -> None:
    Path(path).write_text(dumps(class_to_dict(group, a)))


def load_class(group: GroupData, path) -> HHClass:
    with Path(path).open("r") as fh:
        return class_from_dict(group, json.load(fh))
