"""Cartan matrices of hyperbolic Lie algebras and almost affine Lie superalgebras."""

from .classify import Kind, TypeVerdict, classify_super, trichotomy, trichotomy_oracle, type_of
from .equivalence import Permutation, are_equivalent, canonical_form
from .geometry import billiard_compare, gram_data, lorentz_embedding
from .matrix_core import (
    CartanError,
    CartanMatrix,
    Parity,
    components,
    is_indecomposable,
    main_submatrix,
    principal_submatrix,
    symmetrize,
    symmetrizer,
    validate,
)
from .supermap import desuperize, find_superizations, verify_pair

__version__ = "0.1.0"
