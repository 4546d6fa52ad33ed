"""Finite-dimensional algebras given by structure constants, and elements
of their polynomial extensions A[t1..tn]."""
from __future__ import annotations

import itertools
import re
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from ..exactnum import QQ, FieldDesc, ModP, Poly
from ..exactnum.linalg import rref
from ..exactnum.parse import ParseError, evaluate, parse_expr

_SCALARS = (int, Fraction, ModP)


class AlgebraError(ValueError):
    pass


class StructAlgebra:
    """Algebra with basis b_1..b_m and products b_i b_j = sum_k c_ijk b_k.

    Construction verifies associativity on all basis triples and that the
    declared identity is a two-sided unit, so every instance is a unital
    associative algebra.
    """

    def __init__(self, field: FieldDesc, labels: Sequence[str], constants, identity: Sequence,
                 name: str = "", check: bool = True):
        self.field = field
        self.labels = tuple(labels)
        self.name = name
        m = len(self.labels)
        if m == 0:
            raise AlgebraError("an algebra needs at least one basis element")
        if len(set(self.labels)) != m:
            raise AlgebraError("duplicate basis label")
        z = field.zero()
        table = [[[z] * m for _ in range(m)] for _ in range(m)]
        if isinstance(constants, Mapping):
            for (i, j), prod in constants.items():
                for k, c in prod.items():
                    table[i][j][k] = table[i][j][k] + field(c)
        else:
            for i in range(m):
                for j in range(m):
                    if len(constants[i][j]) != m:
                        raise AlgebraError("structure constants are not m x m x m")
                    table[i][j] = [field(c) for c in constants[i][j]]
        self.table = table
        self.sparse = [[[(k, c) for k, c in enumerate(table[i][j]) if c != 0] for j in range(m)]
                       for i in range(m)]
        if len(identity) != m:
            raise AlgebraError("identity has the wrong number of coordinates")
        self.identity = [field(c) for c in identity]
        if check:
            self._verify()

    # -- validation ---------------------------------------------------
    def _verify(self):
        m = self.dim
        for i, j, k in itertools.product(range(m), repeat=3):
            left = self.mul_vec(self.table[i][j], self.basis_vec(k))
            right = self.mul_vec(self.basis_vec(i), self.table[j][k])
            if left != right:
                raise AlgebraError(
                    f"associativity fails on basis triple ({i + 1},{j + 1},{k + 1}) = "
                    f"({self.labels[i]},{self.labels[j]},{self.labels[k]})")
        for i in range(m):
            b = self.basis_vec(i)
            if self.mul_vec(self.identity, b) != b or self.mul_vec(b, self.identity) != b:
                raise AlgebraError(f"identity is not a two-sided unit on {self.labels[i]}")

    # -- basic data ---------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise AlgebraError(f"unknown basis label {label!r}") from None

    def basis_vec(self, i: int) -> List:
        v = [self.field.zero()] * self.dim
        v[i] = self.field.one()
        return v

    def zero_vec(self) -> List:
        return [self.field.zero()] * self.dim

    def mul_vec(self, u: Sequence, v: Sequence) -> List:
        out = self.zero_vec()
        for i, a in enumerate(u):
            if a == 0:
                continue
            row = self.sparse[i]
            for j, b in enumerate(v):
                if b == 0:
                    continue
                ab = a * b
                for k, c in row[j]:
                    out[k] = out[k] + ab * c
        return out

    def left_matrix(self, u: Sequence) -> List[List]:
        """Matrix of x -> u x; column j holds u b_j."""
        cols = [self.mul_vec(u, self.basis_vec(j)) for j in range(self.dim)]
        return [[cols[j][k] for j in range(self.dim)] for k in range(self.dim)]

    def right_matrix(self, u: Sequence) -> List[List]:
        cols = [self.mul_vec(self.basis_vec(j), u) for j in range(self.dim)]
        return [[cols[j][k] for j in range(self.dim)] for k in range(self.dim)]

    def trace_left(self, u: Sequence):
        t = self.field.zero()
        for i, a in enumerate(u):
            if a != 0:
                for j in range(self.dim):
                    t = t + a * self.table[i][j][j]
        return t

    def is_commutative(self) -> bool:
        return all(self.table[i][j] == self.table[j][i]
                   for i in range(self.dim) for j in range(i + 1, self.dim))

    def __eq__(self, other):
        return (isinstance(other, StructAlgebra) and self.field == other.field
                and self.labels == other.labels and self.table == other.table
                and self.identity == other.identity)

    def __hash__(self):
        return hash((self.field, self.labels))

    def __repr__(self):
        nm = self.name or "StructAlgebra"
        return f"<{nm} over {self.field.tag}, basis {', '.join(self.labels)}>"

    # -- elements -----------------------------------------------------
    def element(self, coords: Sequence, ext: Sequence[str] = ()) -> "AlgElement":
        return AlgElement(self, [c if isinstance(c, Poly) else Poly.const(self.field, c) for c in coords],
                          ext)

    def vec_element(self, v: Sequence) -> "AlgElement":
        return self.element(v)

    def basis_element(self, label_or_index, ext: Sequence[str] = ()) -> "AlgElement":
        i = label_or_index if isinstance(label_or_index, int) else self.index(label_or_index)
        return self.element(self.basis_vec(i), ext)

    def one(self, ext: Sequence[str] = ()) -> "AlgElement":
        return self.element(self.identity, ext)

    def zero(self, ext: Sequence[str] = ()) -> "AlgElement":
        return self.element(self.zero_vec(), ext)

    def basis(self, ext: Sequence[str] = ()) -> List["AlgElement"]:
        return [self.basis_element(i, ext) for i in range(self.dim)]

    def ext_var(self, name: str) -> "AlgElement":
        """The central variable ``name`` of A[name] as an element."""
        t = Poly.var(self.field, name)
        return AlgElement(self, [t * c for c in self.identity], (name,))

    def parse_element(self, text: str, ext: Sequence[str] = ()) -> "AlgElement":
        """Parse an expression in basis labels and extension variables.

        Names resolve to basis labels first, then to variables in ``ext``;
        numbers mean scalar multiples of the identity.
        """
        ext = tuple(ext)
        try:
            node = parse_expr(text)
        except ParseError as exc:
            raise AlgebraError(str(exc)) from None

        def name(v):
            if v in self.labels:
                return self.basis_element(v, ext)
            if v in ext:
                return self.ext_var(v).with_ext(ext)
            raise AlgebraError(f"unknown name {v!r} in {text!r}")

        def number(q):
            return self.one(ext) * self.field(q)

        out = evaluate(node, name, number)
        return out.with_ext(ext)


class AlgElement:
    """Element of A[t1..tn]: one polynomial coordinate per basis element."""

    __slots__ = ("algebra", "coords", "ext")

    def __init__(self, algebra: StructAlgebra, coords: Sequence[Poly], ext: Sequence[str] = ()):
        if len(coords) != algebra.dim:
            raise AlgebraError("coordinate count does not match the basis")
        ext = tuple(ext)
        for c in coords:
            for v in c.used_vars():
                if v not in ext:
                    ext = ext + (v,)
        self.algebra = algebra
        self.ext = ext
        self.coords = tuple(c.extend(ext) if c.vars != ext else c for c in coords)

    def with_ext(self, ext: Sequence[str]) -> "AlgElement":
        ext = tuple(ext) + tuple(v for v in self.ext if v not in ext)
        return AlgElement(self.algebra, self.coords, ext)

    # -- arithmetic ---------------------------------------------------
    def _check(self, other):
        if not isinstance(other, AlgElement):
            raise TypeError("expected an AlgElement")
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise AlgebraError("elements of different algebras")

    def __add__(self, other):
        if isinstance(other, _SCALARS):
            other = self.algebra.one(self.ext) * other
        self._check(other)
        return AlgElement(self.algebra, [a + b for a, b in zip(self.coords, other.coords)],
                          self.ext + tuple(v for v in other.ext if v not in self.ext))

    __radd__ = __add__

    def __neg__(self):
        return AlgElement(self.algebra, [-a for a in self.coords], self.ext)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (*_SCALARS, Poly)):
            return AlgElement(self.algebra, [a * other for a in self.coords], self.ext)
        self._check(other)
        A = self.algebra
        ext = self.ext + tuple(v for v in other.ext if v not in self.ext)
        out = [Poly.zero(A.field, ext) for _ in range(A.dim)]
        for i, a in enumerate(self.coords):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coords):
                if b.is_zero():
                    continue
                entries = A.sparse[i][j]
                if not entries:
                    continue
                ab = a * b
                for k, c in entries:
                    out[k] = out[k] + ab * c
        return AlgElement(A, out, ext)

    def __rmul__(self, other):
        if isinstance(other, (*_SCALARS, Poly)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, _SCALARS):
            return self * (self.algebra.field.one() / self.algebra.field(other))
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise AlgebraError("negative powers are not defined; use is_unit")
        out = self.algebra.one(self.ext)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, _SCALARS):
            other = self.algebra.one() * other
        if not isinstance(other, AlgElement):
            return NotImplemented
        return self.algebra == other.algebra and all(a == b for a, b in zip(self.coords, other.coords))

    def __hash__(self):
        return hash(self.coords)

    # -- inspection ---------------------------------------------------
    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    def degree(self, var: str | None = None) -> int:
        """Degree in the extension variables (total, or in ``var``); -1 for 0."""
        return max((c.degree(var) for c in self.coords), default=-1)

    def is_constant(self) -> bool:
        return all(c.is_constant() for c in self.coords)

    def to_vec(self) -> List:
        """Field coordinates of an element with no extension-variable terms."""
        if not self.is_constant():
            raise AlgebraError(f"{self} involves extension variables")
        return [c.constant_value() for c in self.coords]

    def subs(self, assignment: Mapping[str, object]) -> "AlgElement":
        """Substitute scalars or polynomials for extension variables."""
        ext = tuple(v for v in self.ext if v not in assignment)
        return AlgElement(self.algebra, [c.subs(assignment) for c in self.coords], ext)

    def flatten(self) -> Dict[Tuple, object]:
        """Sparse k-coordinates keyed by (basis index, monomial)."""
        out = {}
        for i, c in enumerate(self.coords):
            for e, v in c._key():
                out[(i, e)] = v
        return out

    def commutes_with(self, other: "AlgElement") -> bool:
        return self * other == other * self

    def __str__(self):
        parts = []
        for lab, c in zip(self.algebra.labels, self.coords):
            if c.is_zero():
                continue
            cs = str(c)
            if lab == "1":
                parts.append(cs if len(c.terms) == 1 else f"({cs})")
            elif c == 1:
                parts.append(lab)
            elif c == -1:
                parts.append(f"-{lab}")
            elif len(c.terms) == 1:
                parts.append(f"{cs}*{lab}")
            else:
                parts.append(f"({cs})*{lab}")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self):
        return f"AlgElement({self})"


# -- constructors ---------------------------------------------------------

def make_structure_algebra(field: FieldDesc, labels: Sequence[str], constants, identity,
                           name: str = "") -> StructAlgebra:
    return StructAlgebra(field, labels, constants, identity, name)


def matrix_labels(n: int) -> List[str]:
    sep = "" if n < 10 else "_"
    return [f"e{i}{sep}{j}" for i in range(1, n + 1) for j in range(1, n + 1)]


def matrix_algebra(n: int, field: FieldDesc = QQ) -> StructAlgebra:
    """M_n(k) on the matrix units e_ij (row-major)."""
    labels = matrix_labels(n)
    consts = {}
    for i, j, k in itertools.product(range(n), repeat=3):
        consts[(i * n + j, j * n + k)] = {i * n + k: 1}
    ident = [1 if i == j else 0 for i in range(n) for j in range(n)]
    return StructAlgebra(field, labels, consts, ident, name=f"M_{n}")


def upper_triangular(n: int, field: FieldDesc = QQ) -> StructAlgebra:
    idx = [(i, j) for i in range(n) for j in range(i, n)]
    pos = {ij: p for p, ij in enumerate(idx)}
    consts = {}
    for (i, j), (k, l) in itertools.product(idx, repeat=2):
        if j == k:
            consts[(pos[(i, j)], pos[(k, l)])] = {pos[(i, l)]: 1}
    ident = [1 if i == j else 0 for i, j in idx]
    sep = "" if n < 10 else "_"
    return StructAlgebra(field, [f"e{i + 1}{sep}{j + 1}" for i, j in idx], consts, ident, name=f"T_{n}")


def field_algebra(field: FieldDesc = QQ) -> StructAlgebra:
    return StructAlgebra(field, ["1"], {(0, 0): {0: 1}}, [1], name=field.tag)


def direct_sum(*algebras: StructAlgebra) -> StructAlgebra:
    if not algebras:
        raise AlgebraError("direct sum of nothing")
    field = algebras[0].field
    if any(a.field != field for a in algebras):
        raise AlgebraError("direct sum over different fields")
    all_labels = [l for a in algebras for l in a.labels]
    clash = len(set(all_labels)) != len(all_labels)
    labels, consts, ident = [], {}, []
    off = 0
    for n, a in enumerate(algebras, 1):
        labels += [_summand_label(l, n, i) if clash else l for i, l in enumerate(a.labels)]
        for i in range(a.dim):
            for j in range(a.dim):
                for k, c in a.sparse[i][j]:
                    consts.setdefault((off + i, off + j), {})[off + k] = c
        ident += a.identity
        off += a.dim
    name = " + ".join(a.name or "A" for a in algebras)
    return StructAlgebra(field, labels, consts, ident, name=name)


def _summand_label(label: str, n: int, i: int) -> str:
    if label == "1":
        return f"u{n}"
    if label.isidentifier():
        return f"{label}_{n}"
    return f"b{n}_{i + 1}"


def _monomial_label(vars, e) -> str:
    if not any(e):
        return "1"
    return "*".join(v if x == 1 else f"{v}^{x}" for v, x in zip(vars, e) if x)


_MONO = re.compile(r"^\s*[A-Za-z_]\w*(\s*\^\s*\d+)?(\s*\*\s*[A-Za-z_]\w*(\s*\^\s*\d+)?)*\s*$")


def _parse_monomial(vars, rel) -> Tuple[int, ...]:
    if not isinstance(rel, str):
        return tuple(int(x) for x in rel)
    if not _MONO.match(rel):
        raise AlgebraError(f"relation {rel!r} is not a monomial")
    e = [0] * len(vars)
    for part in rel.split("*"):
        part = part.strip()
        v, _, x = part.partition("^")
        v = v.strip()
        if v not in vars:
            raise AlgebraError(f"relation {rel!r} uses unknown variable {v!r}")
        e[vars.index(v)] += int(x) if x else 1
    return tuple(e)


def monomial_quotient(vars: Sequence[str], relations: Iterable, field: FieldDesc = QQ) -> StructAlgebra:
    """k[vars]/(monomials), which must be finite-dimensional.

    The basis is the set of standard monomials (those divisible by no
    relation), in graded-lex ascending order starting with 1.
    """
    vars = tuple(vars)
    rels = [_parse_monomial(vars, r) for r in relations]
    bounds = []
    for i, v in enumerate(vars):
        pure = [r[i] for r in rels if r[i] > 0 and all(x == 0 for j, x in enumerate(r) if j != i)]
        if not pure:
            raise AlgebraError(f"quotient is infinite-dimensional: {v} is unbounded")
        bounds.append(min(pure))

    def dead(e):
        return any(all(x >= y for x, y in zip(e, r)) for r in rels)

    monos = [e for e in itertools.product(*(range(b) for b in bounds)) if not dead(e)]
    monos.sort(key=lambda e: (sum(e), tuple(-x for x in e)))
    pos = {e: i for i, e in enumerate(monos)}
    consts = {}
    for e1, e2 in itertools.product(monos, repeat=2):
        e = tuple(x + y for x, y in zip(e1, e2))
        if e in pos:
            consts[(pos[e1], pos[e2])] = {pos[e]: 1}
    ident = [1 if not any(e) else 0 for e in monos]
    return StructAlgebra(field, [_monomial_label(vars, e) for e in monos], consts, ident,
                         name=f"{field.tag}[{','.join(vars)}]/({', '.join(_monomial_label(vars, r) for r in rels)})")


def subalgebra(A: StructAlgebra, basis_vectors: Sequence[Sequence], labels: Sequence[str] | None = None,
               name: str = "") -> Tuple[StructAlgebra, List[List]]:
    """Structure algebra on a subalgebra of A spanned by the given vectors.

    Returns the subalgebra and the echelonized embedding vectors (row i is
    the image in A of the i-th basis element of the subalgebra).
    """
    red, piv = rref(basis_vectors, A.field)
    if not red:
        raise AlgebraError("empty subalgebra basis")

    def coords(v):
        c = [v[p] for p in piv]
        back = A.zero_vec()
        for ci, row in zip(c, red):
            if ci != 0:
                back = [x + ci * y for x, y in zip(back, row)]
        if back != list(v):
            raise AlgebraError("span is not closed under multiplication")
        return c

    d = len(red)
    consts = {}
    for i in range(d):
        for j in range(d):
            prod = coords(A.mul_vec(red[i], red[j]))
            consts[(i, j)] = {k: c for k, c in enumerate(prod) if c != 0}
    ident = coords(A.identity)
    labels = labels or [f"z{i + 1}" for i in range(d)]
    return StructAlgebra(A.field, labels, consts, ident, name=name), red
