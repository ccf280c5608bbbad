"""Exact product engine for the cohomology of a finite linear group
acting on polynomials, organized around fixed-point data per group
element and verified against an independent cochain-level route.

The pieces:

* scalars, linalg      -- prime fields, matrices, frames, symmetrizers
* multilinear, polyring -- exterior algebra and polynomial coefficients
* groups               -- closure, tables, per-element frames
* hhalgebra            -- classes, closed-form product, group action
* oracle               -- Koszul dimension audit and the cochain product
* symplectic           -- canonical normal volumes when a form exists
* io, verify, cli      -- files, property checks, command line
"""

from .errors import AlgebraError
from .groups import GroupData, generate_group, suggest_prime
from .hhalgebra import (
    HHClass,
    HHTerm,
    ProductStats,
    conjugation_action,
    hh_add,
    hh_scale,
    hh_sub,
    hh_zero,
    invariant_project,
    make_class,
    product,
    random_class,
    unit,
)
from .oracle import OracleStats, oracle_product
from .scalars import FieldCtx, make_field_ctx
from .symplectic import (
    SymplecticCtx,
    SymplecticHHClass,
    make_symplectic_ctx,
    normal_volume,
    sympl_product,
    trivialize,
    untrivialize,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraError",
    "FieldCtx",
    "GroupData",
    "HHClass",
    "HHTerm",
    "OracleStats",
    "ProductStats",
    "SymplecticCtx",
    "SymplecticHHClass",
    "conjugation_action",
    "generate_group",
    "hh_add",
    "hh_scale",
    "hh_sub",
    "hh_zero",
    "invariant_project",
    "make_class",
    "make_field_ctx",
    "make_symplectic_ctx",
    "normal_volume",
    "oracle_product",
    "product",
    "random_class",
    "suggest_prime",
    "sympl_product",
    "trivialize",
    "unit",
    "untrivialize",
]
