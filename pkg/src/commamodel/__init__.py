"""Model structures on comma categories M↓U, computed over finite-dimensional chain complexes."""

from .adjunction import HomTensorAdjunction, IdentityAdjunction, make_adjunction
from .chain import ChainComplex, ChainMap, FactorKind, disk, sphere
from .comma import CommaCategory, CommaMorphism, CommaObject, StructureId
from .factor import LiftingProblem, factorize_comma, lift_comma

__version__ = "0.1.0"

__all__ = ["ChainComplex", "ChainMap", "FactorKind", "disk", "sphere", "CommaCategory", "CommaObject",
           "CommaMorphism", "StructureId", "IdentityAdjunction", "HomTensorAdjunction", "make_adjunction",
           "LiftingProblem", "factorize_comma", "lift_comma"]
