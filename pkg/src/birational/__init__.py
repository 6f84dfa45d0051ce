"""Exact construction and certification of rational and birational maps
between hypersurfaces over Q and prime fields."""

__version__ = "0.1.0"

from .errors import BirationalError
from .fields import GF, QQ, FieldSpec
from .poly import Polynomial
from .gcd import gcd, gcd_list
from .geom import (
    AFFINE,
    PROJECTIVE,
    AmbientSpace,
    Chart,
    Hypersurface,
    LinearSubspace,
    Point,
    contains_subspace,
    is_smooth_at,
    point_on,
    random_point_on,
    singular_locus_equations,
    subspaces_disjoint,
    tangent_hyperplane,
)
from .ratmap import (
    RationalFunction,
    RationalMap,
    Undefined,
    compose,
    indeterminacy_equations,
    normalize,
    restricts_to,
    verify_birational,
)
from .parse import parse_polynomial

__all__ = [
    "__version__",
    "BirationalError",
    "FieldSpec",
    "QQ",
    "GF",
    "Polynomial",
    "gcd",
    "gcd_list",
    "AFFINE",
    "PROJECTIVE",
    "Chart",
    "Point",
    "Hypersurface",
    "AmbientSpace",
    "LinearSubspace",
    "point_on",
    "singular_locus_equations",
    "is_smooth_at",
    "tangent_hyperplane",
    "contains_subspace",
    "subspaces_disjoint",
    "random_point_on",
    "RationalFunction",
    "RationalMap",
    "Undefined",
    "normalize",
    "compose",
    "restricts_to",
    "verify_birational",
    "indeterminacy_equations",
    "parse_polynomial",
]
