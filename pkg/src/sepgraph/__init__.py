"""Separating curve graphs on finite-type surfaces, computed with normal coordinates."""

__version__ = "0.1.0"

from .surface import SurfaceError, SurfaceSig, TopoType, Triangulation, build_surface
from .normal import (
    Multicurve,
    ValidityError,
    cut_along,
    enumerate_multicurves,
    intersection_number,
    is_separating,
    normalize,
    parse_multicurve,
)

__all__ = [
    "Multicurve",
    "SurfaceError",
    "SurfaceSig",
    "TopoType",
    "Triangulation",
    "ValidityError",
    "build_surface",
    "cut_along",
    "enumerate_multicurves",
    "intersection_number",
    "is_separating",
    "normalize",
    "parse_multicurve",
]
