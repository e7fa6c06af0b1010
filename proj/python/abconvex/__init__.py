"""Finite abstract convexity.

Functions take plain Python lists: couplings and distance matrices are lists
of rows, +inf is ``float("inf")``, and mapping graphs are lists of
``(source, target)`` index pairs.
"""

from ._core import (
    DEFAULT_EPSILON,
    AbconvexError,
    alpha,
    c_convexify,
    c_subdifferential,
    c_transform,
    c_transform_back,
    extend_max,
    extend_min,
    fitzpatrick,
    gamma,
    is_c_convex,
    is_cyclically_monotone,
    is_n_monotone,
    lipschitz_characterize,
    rockafellar,
    run,
)

__version__ = "1.0.0"

__all__ = [
    "DEFAULT_EPSILON",
    "AbconvexError",
    "alpha",
    "c_convexify",
    "c_subdifferential",
    "c_transform",
    "c_transform_back",
    "extend_max",
    "extend_min",
    "fitzpatrick",
    "gamma",
    "is_c_convex",
    "is_cyclically_monotone",
    "is_n_monotone",
    "lipschitz_characterize",
    "rockafellar",
    "run",
]
