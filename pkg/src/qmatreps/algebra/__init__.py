"""Exact symbolic layer: Laurent scalars, noncommutative polynomials, rewriting, Fock modules."""

from .fock import FockVector, fock_basis, gram_matrix, gram_matrix_direct, is_positive_definite_exact
from .laurent import LaurentScalar
from .ncpoly import MAT2, SYM2, Gen, NCPoly, gen, generators
from .parser import ParseError, parse_expression, parse_scalar
from .presentations import presentation, relation_polys, relations
from .rewriting import check_identity, normal_form

__all__ = [
    "FockVector", "fock_basis", "gram_matrix", "gram_matrix_direct", "is_positive_definite_exact",
    "LaurentScalar", "MAT2", "SYM2", "Gen", "NCPoly", "gen", "generators",
    "ParseError", "parse_expression", "parse_scalar",
    "presentation", "relation_polys", "relations", "check_identity", "normal_form",
]
