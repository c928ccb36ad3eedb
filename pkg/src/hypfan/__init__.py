"""Secondary fans and secondary polyhedra of punctured hyperbolic surfaces."""

from .cones import DecompositionLabel, SecondaryCone, cone_equal, delaunay_decomposition, secondary_cone
from .develop import GkzVector, enumerate_developed, gkz_vector
from .errors import HypfanError
from .euclid import (
    configuration,
    euclid_gkz_vector,
    euclid_secondary_cone,
    euclid_secondary_polytope,
    regular_subdivision,
)
from .fan import SecondaryFan, common_coarsening, enumerate_fan, f_vector, validate_fan, wall_cross
from .io import load_example, load_surface, parse_surface
from .penner import (
    DecoratedSurface,
    cusp_weight,
    decorate,
    delaunay_margin,
    h_length,
    is_delaunay,
    make_delaunay,
    ptolemy_flip,
)
from .polyhedron import SecondaryPolyhedron, check_normal_fan, lifting_check, secondary_polyhedron
from .surface import CombinatorialSurface, build_surface

__all__ = [
    "build_surface",
    "check_normal_fan",
    "CombinatorialSurface",
    "common_coarsening",
    "cone_equal",
    "configuration",
    "cusp_weight",
    "DecompositionLabel",
    "decorate",
    "DecoratedSurface",
    "delaunay_decomposition",
    "delaunay_margin",
    "enumerate_developed",
    "enumerate_fan",
    "euclid_gkz_vector",
    "euclid_secondary_cone",
    "euclid_secondary_polytope",
    "f_vector",
    "gkz_vector",
    "GkzVector",
    "h_length",
    "HypfanError",
    "is_delaunay",
    "lifting_check",
    "load_example",
    "load_surface",
    "make_delaunay",
    "parse_surface",
    "ptolemy_flip",
    "regular_subdivision",
    "secondary_cone",
    "secondary_polyhedron",
    "SecondaryCone",
    "SecondaryFan",
    "SecondaryPolyhedron",
    "validate_fan",
    "wall_cross",
]
__version__ = "0.1.0"
