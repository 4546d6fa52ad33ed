"""Polynomial extensions A[t1..tn] as a lightweight context."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from ..exactnum import Poly
from ..exactnum.linalg import nullspace
from .algebra import AlgebraError, AlgElement, StructAlgebra
from .structure import center_vectors


@dataclass(frozen=True)
class Extension:
    algebra: StructAlgebra
    vars: Tuple[str, ...]

    @property
    def n(self) -> int:
        return len(self.vars)

    def t(self, i: int) -> AlgElement:
        return self.algebra.ext_var(self.vars[i]).with_ext(self.vars)

    def element(self, text: str) -> AlgElement:
        return self.algebra.parse_element(text, self.vars)

    def lift(self, a: AlgElement) -> AlgElement:
        return a.with_ext(self.vars)

    def basis(self) -> List[AlgElement]:
        return self.algebra.basis(self.vars)

    def monomials(self, max_degree: int) -> List[Tuple[int, ...]]:
        out = [e for d in range(max_degree + 1)
               for e in itertools.product(range(d + 1), repeat=self.n) if sum(e) == d]
        return sorted(set(out), key=lambda e: (sum(e), tuple(-x for x in e)))

    def center_upto(self, max_degree: int) -> List[AlgElement]:
        """Basis of the central elements of t-degree <= max_degree.

        Unknowns are one A-vector per monomial; the commutator with each b_i
        is solved as one linear system.  Commutation with the t's is automatic.
        """
        A, m = self.algebra, self.algebra.dim
        monos = self.monomials(max_degree)
        N = m * len(monos)
        rows = []
        for i in range(m):
            for mi, _ in enumerate(monos):
                for k in range(m):
                    row = [A.field.zero()] * N
                    for j in range(m):
                        row[mi * m + j] = A.table[j][i][k] - A.table[i][j][k]
                    rows.append(row)
        out = []
        for v in nullspace(rows, N, A.field):
            coords = [Poly.zero(A.field, self.vars) for _ in range(m)]
            for mi, e in enumerate(monos):
                mono = Poly(A.field, self.vars, {e: 1})
                for j in range(m):
                    c = v[mi * m + j]
                    if c != 0:
                        coords[j] = coords[j] + mono * c
            out.append(AlgElement(A, coords, self.vars))
        return out

    def center_generators(self) -> List[AlgElement]:
        """Z(A) basis, which generates Z(A[t..]) as a k[t..]-module."""
        return [self.algebra.element(v, self.vars) for v in center_vectors(self.algebra)]


def poly_extension(A: StructAlgebra, n: int, names: Sequence[str] | None = None) -> Extension:
    if n < 0:
        raise AlgebraError("number of variables must be nonnegative")
    if names is None:
        names = ["t"] if n == 1 else [f"t{i + 1}" for i in range(n)]
    names = tuple(names)
    if len(names) != n:
        raise AlgebraError("one name per variable")
    clash = set(names) & set(A.labels)
    if clash:
        raise AlgebraError(f"variable names clash with basis labels: {sorted(clash)}")
    return Extension(A, names)
