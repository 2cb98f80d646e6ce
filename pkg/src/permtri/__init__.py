"""Permutation trinomials over binary fields and their quadratic extensions."""

from .gf2m import FieldCtx, GuardError, TowerCtx, make_field, make_tower
from .polyfun import SparsePoly, ZieveForm, normalize_exponents, parse_poly, qm_transform, to_zieve_form

__version__ = "0.1.0"

__all__ = [
    "FieldCtx",
    "GuardError",
    "SparsePoly",
    "TowerCtx",
    "ZieveForm",
    "make_field",
    "make_tower",
    "normalize_exponents",
    "parse_poly",
    "qm_transform",
    "to_zieve_form",
]
