"""Rational homotopy of B aut₁(X) from a Sullivan minimal model of X."""

from .dercomplex import DerComplex, Derivation, bracket, der_basis, differential_D, extend, matrix_of_D
from .dsl import ParseError, format_model, parse_model
from .extensions import KSExtensionError, KSExtensionSpec, build_ks_total, prop23_check
from .gca import GradedAlgebra, Polynomial
from .homology import gottlieb, homology, top_degree_law
from .model import InvalidModelError, MinimalModel, validate
from .weights import Infeasible, WeightSystem, check_weight_system, find_positive_weights, lemma44_verify

__version__ = "0.1.0"

__all__ = [
    "DerComplex", "Derivation", "GradedAlgebra", "Infeasible", "InvalidModelError", "KSExtensionError",
    "KSExtensionSpec", "MinimalModel", "ParseError", "Polynomial", "WeightSystem", "bracket",
    "build_ks_total", "check_weight_system", "der_basis", "differential_D", "extend",
    "find_positive_weights", "format_model", "gottlieb", "homology", "lemma44_verify", "matrix_of_D",
    "parse_model", "prop23_check", "top_degree_law", "validate",
]
