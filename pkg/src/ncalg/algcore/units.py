"""Unit detection in A[t1..tn] through the left regular representation."""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

from ..exactnum import Poly
from ..exactnum.linalg import poly_det
from .algebra import AlgElement


@dataclass
class UnitResult:
    is_unit: bool
    determinant: Poly
    inverse: Optional[AlgElement] = None

    def __bool__(self):
        return self.is_unit


def regular_matrix(a: AlgElement) -> List[List[Poly]]:
    """Matrix of x -> a x over k[t..]; column j is a * b_j."""
    A = a.algebra
    cols = [(a * b).coords for b in A.basis(a.ext)]
    return [[cols[j][k] for j in range(A.dim)] for k in range(A.dim)]


def is_unit(a: AlgElement) -> UnitResult:
    """Decide invertibility in A[t..]; the inverse is found by Cramer's rule
    and checked on both sides before it is returned."""
    A = a.algebra
    M = regular_matrix(a)
    d = poly_det(M)
    if d.is_zero() or not d.is_constant():
        return UnitResult(False, d)
    dinv = A.field.one() / d.constant_value()
    one = A.one(a.ext).coords
    coords = []
    for k in range(A.dim):
        Mk = [row[:k] + [one[r]] + row[k + 1:] for r, row in enumerate(M)]
        coords.append(poly_det(Mk) * dinv)
    inv = AlgElement(A, coords, a.ext)
    if not (a * inv == A.one() and inv * a == A.one()):
        raise ArithmeticError(f"Cramer inverse of {a} failed verification")
    return UnitResult(True, d, inv)
