"""Census of regular complete-bipartite dessins of odd prime power order.

For an odd prime power n = p**e the package classifies the quasiplatonic
curves whose regular dessins embed the complete bipartite graph on n
plus n vertices: isomorphism classes, Galois orbits, minimal fields of
definition, automorphism group orders, genus through explicit face
tracing, and explicit affine models where available.  Every structural
fact the engine relies on is backed by a brute-force oracle at desk
scale; run ``knncensus verify`` or the pytest suite to exercise them.
"""

from .arith import PrimePower, mod_inv, mod_pow, p_adic_valuation, unit_group_order
from .classify import (
    Atlas,
    AtlasEntry,
    CurveClass,
    FieldOfDefinition,
    build_atlas,
    canonical_triple,
    enumerate_classes,
    field_of_definition,
    galois_orbit,
    oracle_classify,
)
from .epi import EpiParams, normalize, validate
from .equations import CurveModel, compute_r, full_model, render, weil_quotient
from .group import Elt, GroupAut, GroupParams, group_params
from .hypermap import Dessin, build

__version__ = "0.1.0"

__all__ = [
    "Atlas",
    "AtlasEntry",
    "CurveClass",
    "CurveModel",
    "Dessin",
    "Elt",
    "EpiParams",
    "FieldOfDefinition",
    "GroupAut",
    "GroupParams",
    "PrimePower",
    "build",
    "build_atlas",
    "canonical_triple",
    "compute_r",
    "enumerate_classes",
    "field_of_definition",
    "full_model",
    "galois_orbit",
    "group_params",
    "mod_inv",
    "mod_pow",
    "normalize",
    "oracle_classify",
    "p_adic_valuation",
    "render",
    "unit_group_order",
    "validate",
    "weil_quotient",
    "__version__",
]
