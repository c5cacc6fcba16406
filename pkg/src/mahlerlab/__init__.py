"""Volume product of planar convex bodies under projective deformations."""

from .convex2d import Polygon, make_polygon, polar, volume_product
from .functional import eval_F, hessian_analytic, jacobian_analytic
from .pentagon import PentagonParams, solve_b

__all__ = [
    "Polygon",
    "PentagonParams",
    "eval_F",
    "hessian_analytic",
    "jacobian_analytic",
    "make_polygon",
    "polar",
    "solve_b",
    "volume_product",
]

__version__ = "0.1.0"
