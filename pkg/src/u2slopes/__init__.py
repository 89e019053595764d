"""Exact 2-adic slopes of U_2 on overconvergent forms of level 4 and 8."""

from .classical import cm_form_level4, cm_form_level8, cm_slope_crosscheck, dimension_cuspforms
from .exact import SQRT2, HalfVal, QuadRat, Rat, val2, val2_quad
from .modfunc import identity_suite, z4, z8
from .qseries import CHI, CHI_TAU, TAU, QSeries, WeightChar, eisenstein_star
from .slopes import (
    CertificationError,
    char_poly,
    classical_slopes,
    newton_polygon,
    overconvergent_slopes,
    serre_conditions_check,
)
from .umatrix import build_u_matrix, compressed_matrix, diamond_check, mod2_reduce, realize

__version__ = "0.1.0"

__all__ = [
    "CHI",
    "CHI_TAU",
    "TAU",
    "SQRT2",
    "CertificationError",
    "HalfVal",
    "QSeries",
    "QuadRat",
    "Rat",
    "WeightChar",
    "build_u_matrix",
    "char_poly",
    "classical_slopes",
    "cm_form_level4",
    "cm_form_level8",
    "cm_slope_crosscheck",
    "compressed_matrix",
    "diamond_check",
    "dimension_cuspforms",
    "eisenstein_star",
    "identity_suite",
    "mod2_reduce",
    "newton_polygon",
    "overconvergent_slopes",
    "realize",
    "serre_conditions_check",
    "val2",
    "val2_quad",
    "z4",
    "z8",
]
