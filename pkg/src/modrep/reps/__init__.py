"""Matrix representations, chopping, Brauer characters and homological tools."""

from .brauer import BrauerCharacter, SimpleModules, brauer_character, simples, splitting_degree, splitting_field
from .homs import (
    end_ring,
    ext_dimensions,
    hom_dimension,
    hom_space,
    projective_cover,
    stable_end,
    syzygy,
)
from .matrep import MatRep, coset_module, permutation_module, regular_module, trivial_module
from .meataxe import chop, composition_factors, is_irreducible

__all__ = [
    "BrauerCharacter",
    "MatRep",
    "SimpleModules",
    "brauer_character",
    "chop",
    "composition_factors",
    "coset_module",
    "end_ring",
    "ext_dimensions",
    "hom_dimension",
    "hom_space",
    "is_irreducible",
    "permutation_module",
    "projective_cover",
    "regular_module",
    "simples",
    "splitting_degree",
    "splitting_field",
    "stable_end",
    "syzygy",
    "trivial_module",
]
