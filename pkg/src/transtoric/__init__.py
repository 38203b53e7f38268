"""Combinatorics of complex manifolds with maximal torus actions, in exact arithmetic."""

from .fan import DEFAULT_SEED, Fan, validate_fan
from .markedfan import MarkedFan, are_isomorphic, validate_marked_fan, verify_isomorphism
from .lift import C2Triple, check_principal, quotient, realize, validate_triple
from .polytope import build_polytope, polytopality, check_certificate
from .cohomology import betti_by_elimination, betti_by_hvector, betti_by_morse, hodge_diamond
from .gallery import example, example_triple

__version__ = "0.1.0"
