"""Numerical comparison geometry on model surfaces and discretized domains."""

__version__ = "0.1.0"

from .errors import (
    DegenerateAngleError,
    GeometryError,
    InvalidTriangleError,
    InverseRangeError,
    ResolutionError,
    TrigDomainError,
    UndefinedModelAngleError,
    UnreachableError,
)
from .trig import (
    TriangleSides,
    angle_from_sides,
    cs,
    f,
    f_inverse,
    md,
    md_inverse,
    model_angle,
    model_side,
    sn,
    taylor_side_expansion,
)

__all__ = [
    "__version__",
    "GeometryError",
    "TrigDomainError",
    "InvalidTriangleError",
    "DegenerateAngleError",
    "UndefinedModelAngleError",
    "InverseRangeError",
    "UnreachableError",
    "ResolutionError",
    "TriangleSides",
    "sn",
    "cs",
    "md",
    "md_inverse",
    "f",
    "f_inverse",
    "model_side",
    "model_angle",
    "angle_from_sides",
    "taylor_side_expansion",
]
