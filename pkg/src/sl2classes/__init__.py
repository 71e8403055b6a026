"""Conjugacy classes of SL(2,R) and PSL(2,R): exact class products and a sampling oracle."""
from .class_algebra import EMPTY, G, GPLUS, ClassSet, complement, intersect, invert, member, minus, negate, singleton, union
from .errors import BoundaryAmbiguous, FloatAngleUndecidable, NotUnimodular, ParseError
from .ids import I, NEG_I, P_MM, P_MP, P_PM, P_PP, Elliptic, Hyperbolic, Parabolic, Scalar
from .matrix_core import Mat2, SU11Mat, canonical_rep, classify, phi, sample, wedge
from .notation import format_notation, from_json, parse_notation, to_json
from .product_engine import (
    PslClassSet,
    covering_numbers,
    figure1_contains_identity,
    figure1_grid,
    product_direct,
    product_n,
    product_pair,
    product_set_class,
    psl2_product,
    psl2_project,
    scalar_membership,
)

__version__ = "0.1.0"
