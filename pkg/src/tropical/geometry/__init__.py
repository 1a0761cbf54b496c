"""Exact polyhedral geometry for lattice point configurations."""

from .polytope import facets, interior_lattice_points, lattice_points, normalized_volume, volume
from .subdivision import (
    GeometryError,
    PointConfiguration,
    Subdivision,
    cayley,
    is_unimodular,
    newton_polytope,
    regular_subdivision,
)
