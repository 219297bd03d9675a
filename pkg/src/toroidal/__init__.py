"""Exact computations for toroidal Lie algebras and their module categories."""
from .exact import LaurentPoly, expand_inverse, poly_roots_multiplicity_free, strip_monomial_factor
from .lie import G, K0, Ki, SimpleLieData, Toroidal, ToroidalElement, get_algebra, sl2, sl3
from .linear import Vec
from .modules import (EvalModule, EvalPoint, FiniteIrrep, InducedModule, RestrictedEvalModule,
                      RestrictedEvalPoint, TensorModule)
from .witness import CategoryWitness

__all__ = ["LaurentPoly", "expand_inverse", "poly_roots_multiplicity_free", "strip_monomial_factor", "G", "K0",
           "Ki", "SimpleLieData", "Toroidal", "ToroidalElement", "get_algebra", "sl2", "sl3", "Vec",
           "EvalModule", "EvalPoint", "FiniteIrrep", "InducedModule", "RestrictedEvalModule",
           "RestrictedEvalPoint", "TensorModule", "CategoryWitness"]

__version__ = "0.1.0"
