"""Exact dense linear algebra over a :class:`FieldDesc`.

Matrices are lists of row lists of field elements.  All echelon forms are
reduced and pivot on the leftmost column, so bases returned from here are
canonical for a given column order.
"""
from __future__ import annotations

from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from .fields import FieldDesc
from .poly import Poly


def zeros(field: FieldDesc, r: int, c: int):
    z = field.zero()
    return [[z] * c for _ in range(r)]


def identity(field: FieldDesc, n: int):
    m = zeros(field, n, n)
    for i in range(n):
        m[i][i] = field.one()
    return m


def mat_mul(a, b, field: FieldDesc):
    k, m = len(b), len(b[0]) if b else 0
    z = field.zero()
    out = []
    for row in a:
        out_row = []
        for j in range(m):
            s = z
            for t in range(k):
                if row[t] != 0:
                    s = s + row[t] * b[t][j]
            out_row.append(s)
        out.append(out_row)
    return out


def mat_vec(a, v, field: FieldDesc):
    z = field.zero()
    out = []
    for row in a:
        s = z
        for x, y in zip(row, v):
            if x != 0:
                s = s + x * y
        out.append(s)
    return out


def is_zero_matrix(a) -> bool:
    return all(x == 0 for row in a for x in row)


def rref(rows: Sequence[Sequence], field: FieldDesc) -> Tuple[List[List], List[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [[field(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = field.one() / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, field: FieldDesc) -> int:
    return len(rref(rows, field)[1])


def nullspace(rows: Sequence[Sequence], ncols: int, field: FieldDesc) -> List[List]:
    """Basis of {v : rows . v = 0}, returned in reduced echelon form."""
    red, piv = rref(rows, field) if rows else ([], [])
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [field.zero()] * ncols
        v[f] = field.one()
        for row, pc in zip(red, piv):
            v[pc] = -row[f]
        basis.append(v)
    return echelon(basis, field)


def echelon(vectors: Sequence[Sequence], field: FieldDesc) -> List[List]:
    """Canonical basis of the span of ``vectors``."""
    if not vectors:
        return []
    return rref(vectors, field)[0]


def solve(a: Sequence[Sequence], b: Sequence, field: FieldDesc) -> Optional[List]:
    """One solution x of a.x = b, or None if inconsistent."""
    n = len(a[0]) if a else 0
    aug = [list(r) + [y] for r, y in zip(a, b)]
    red, piv = rref(aug, field) if aug else ([], [])
    if n in piv:
        return None
    x = [field.zero()] * n
    for row, pc in zip(red, piv):
        x[pc] = row[n]
    return x


def det(a: Sequence[Sequence], field: FieldDesc):
    m = [[field(x) for x in r] for r in a]
    n = len(m)
    d = field.one()
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return field.zero()
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d = d * m[c][c]
        inv = field.one() / m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return d


def inverse(a, field: FieldDesc):
    n = len(a)
    aug = [list(r) + e for r, e in zip(a, identity(field, n))]
    red, piv = rref(aug, field)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


def poly_det(a: Sequence[Sequence[Poly]]) -> Poly:
    """Determinant of a square matrix of polynomials (fraction-free Bareiss)."""
    n = len(a)
    if n == 0:
        raise ValueError("empty matrix")
    m = [list(r) for r in a]
    field = m[0][0].field
    sign = 1
    prev = Poly.const(field, 1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            p = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if p is None:
                return Poly.zero(field, m[0][0].vars, m[0][0].laurent)
            m[k], m[p] = m[p], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).exquo(prev)
        prev = m[k][k]
    d = m[n - 1][n - 1]
    return d if sign == 1 else -d


class SparseSpan:
    """Incrementally maintained echelon basis of sparse vectors.

    Vectors are dicts from hashable coordinate keys to nonzero field
    elements.  Each stored vector carries a *tag*: a dict from labels to
    coefficients recording how it was formed from the inserted vectors, so
    membership queries can return an explicit linear combination.
    """

    def __init__(self, field: FieldDesc, order=None):
        self.field = field
        self._order = order or (lambda k: k)
        self.rows: Dict[Hashable, Tuple[dict, dict]] = {}
        self.last_pivot: Hashable = None

    def __len__(self):
        return len(self.rows)

    def _pivot(self, vec):
        return min(vec, key=self._order)

    def reduce(self, vec: dict, tag: dict):
        vec, tag = dict(vec), dict(tag)
        while vec:
            found = None
            for k in sorted(vec, key=self._order):
                if k in self.rows:
                    found = k
                    break
            if found is None:
                break
            rv, rt = self.rows[found]
            f = vec[found]
            for k, c in rv.items():
                s = vec.get(k, self.field.zero()) - f * c
                if s == 0:
                    vec.pop(k, None)
                else:
                    vec[k] = s
            for k, c in rt.items():
                s = tag.get(k, self.field.zero()) - f * c
                if s == 0:
                    tag.pop(k, None)
                else:
                    tag[k] = s
        return vec, tag

    def add(self, vec: dict, tag: dict) -> bool:
        """Insert a vector; returns True if the span grew."""
        vec, tag = self.reduce(vec, tag)
        if not vec:
            return False
        piv = self._pivot(vec)
        inv = self.field.one() / vec[piv]
        vec = {k: c * inv for k, c in vec.items()}
        tag = {k: c * inv for k, c in tag.items()}
        self.rows[piv] = (vec, tag)
        self.last_pivot = piv
        return True

    def express(self, vec: dict) -> Optional[dict]:
        """Coefficients (over inserted tags) expressing ``vec``, or None."""
        rem, tag = self.reduce(vec, {})
        if rem:
            return None
        return {k: -c for k, c in tag.items()}
