"""
Fuzzy Horn Engine - universal Horn theories over MTL-algebras
Pattern: semi-naive hyperresolution + union-find congruence closure, exact rational truth values
"""

from .algebra import MtlAlgebra, check_residuation, get_algebra
from .errors import HornEngineError
from .herbrand import h_structure_of_model, least_h_model
from .loader import TheoryLoader
from .morphisms import AlgebraMap, StructureMap, canonical_free_map, check_homomorphism
from .parser import parse_formula, parse_theory
from .saturation import SaturationConfig, build_term_structure, saturate
from .semantics import FuzzyStructure, eval_formula, is_model
from .syntax import Signature, classify_horn, format_formula

__all__ = [
    "MtlAlgebra",
    "check_residuation",
    "get_algebra",
    "HornEngineError",
    "h_structure_of_model",
    "least_h_model",
    "TheoryLoader",
    "AlgebraMap",
    "StructureMap",
    "canonical_free_map",
    "check_homomorphism",
    "parse_formula",
    "parse_theory",
    "SaturationConfig",
    "build_term_structure",
    "saturate",
    "FuzzyStructure",
    "eval_formula",
    "is_model",
    "Signature",
    "classify_horn",
    "format_formula",
]
