"""Combinatorial toolkit for simple drawings of complete graphs: gons, holes and empty cycles."""

__version__ = "0.1.0"

from .drawing import Drawing, DrawingError, validate  # noqa: E402
from .generators import convex_gon, dn_family, twisted, twisted_prime  # noqa: E402
from .geometry import from_points, random_convex_instance  # noqa: E402

__all__ = [
    "Drawing",
    "DrawingError",
    "validate",
    "convex_gon",
    "twisted",
    "twisted_prime",
    "dn_family",
    "from_points",
    "random_convex_instance",
    "__version__",
]
