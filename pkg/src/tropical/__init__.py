"""Exact tropical geometry: max-plus algebra, tropical varieties and their combinatorics."""

from .polynomial import TropicalPolynomial, TropicalRoot, parse
from .semiring import NEG_INF, TropicalError, TropicalMatrix, TropicalNumber

__version__ = "0.1.0"
