"""Finite-dimensional algebras by structure constants and their extensions."""
from .algebra import (AlgebraError, AlgElement, StructAlgebra, direct_sum, field_algebra,
                      make_structure_algebra, matrix_algebra, monomial_quotient, subalgebra,
                      upper_triangular)
from .extension import Extension, poly_extension
from .membership import Expression, NotFoundUpTo, Yes, subalgebra_membership
from .structure import (DEFAULT_CI_CAP, AnsatzResult, Quotient, RadicalCertificate, center_algebra,
                        center_basis, center_vectors, central_idempotents, certify_radical,
                        ci_polynomial_ansatz, is_central, is_idempotent, jacobson_radical,
                        jacobson_radical_vectors, lift_idempotent, primitive_central_idempotents,
                        quotient_algebra, trace_form)
from .units import UnitResult, is_unit, regular_matrix


def multiply(a: AlgElement, b: AlgElement) -> AlgElement:
    return a * b


__all__ = [n for n in dir() if not n.startswith("_")]
