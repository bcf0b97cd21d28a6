"""Tamagawa numbers of elliptic curves over the rationals, with exact arithmetic throughout."""

from .arith import factorize, valuation
from .curve import Curve, minimal_model, parse_curve, quadratic_twist
from .families import curve_from_j, load_jmap, load_torsion_family
from .padic import count_padic_roots, splits_completely_at
from .poly import Poly, RationalFunction, resultant
from .tate import conductor, minimal_twist, tamagawa_number, tate_local

__all__ = [
    "Curve",
    "Poly",
    "RationalFunction",
    "conductor",
    "count_padic_roots",
    "curve_from_j",
    "factorize",
    "load_jmap",
    "load_torsion_family",
    "minimal_model",
    "minimal_twist",
    "parse_curve",
    "quadratic_twist",
    "resultant",
    "splits_completely_at",
    "tamagawa_number",
    "tate_local",
    "valuation",
]
