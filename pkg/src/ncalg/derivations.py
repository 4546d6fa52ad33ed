"""Derivations and higher (Hasse-Schmidt) derivations of finite-dimensional
algebras, exponentials, and Makar-Limanov subspaces relative to a family."""
from __future__ import annotations

import random
from dataclasses import dataclass
from math import factorial
from typing import List, Mapping, Optional, Sequence, Union

from .algcore import AlgElement, StructAlgebra, jacobson_radical_vectors
from .algcore.structure import _split, ideal_power_vectors
from .exactnum import Poly
from .exactnum.linalg import echelon, is_zero_matrix, mat_mul, mat_vec, nullspace, poly_det
from .witness import HomWitness, IsoReport, verify_hom, verify_iso


class DerivationError(ValueError):
    pass


def _images_matrix(A: StructAlgebra, images) -> List[List]:
    """Matrix whose column j holds the coordinates of the image of b_j."""
    if isinstance(images, Mapping):
        unknown = [k for k in images if k not in A.labels]
        if unknown:
            raise DerivationError(f"unknown basis labels {unknown}")
        cols = []
        for lab in A.labels:
            img = images.get(lab)
            if img is None:
                cols.append(A.zero_vec())
            else:
                cols.append(_as_vec(A, img))
    else:
        if len(images) != A.dim:
            raise DerivationError("one image per basis element is required")
        cols = [_as_vec(A, img) for img in images]
    return [[cols[j][k] for j in range(A.dim)] for k in range(A.dim)]


def _as_vec(A: StructAlgebra, img) -> List:
    if isinstance(img, str):
        img = A.parse_element(img)
    if isinstance(img, AlgElement):
        if img.algebra != A:
            raise DerivationError("image in a different algebra")
        return img.to_vec()
    if len(img) != A.dim:
        raise DerivationError("image has the wrong number of coordinates")
    return [A.field(c) for c in img]


def _apply_matrix(A: StructAlgebra, M, a: AlgElement) -> AlgElement:
    """Apply a k-linear map to an element of A[t..] coefficientwise."""
    coords = [Poly.zero(A.field, a.ext) for _ in range(A.dim)]
    for j, c in enumerate(a.coords):
        if c.is_zero():
            continue
        for k in range(A.dim):
            if M[k][j] != 0:
                coords[k] = coords[k] + c * M[k][j]
    return AlgElement(A, coords, a.ext)


class Derivation:
    """A k-linear map satisfying the Leibniz rule on all basis pairs."""

    def __init__(self, algebra: StructAlgebra, matrix, name: str = "", check: bool = True):
        self.algebra = algebra
        self.matrix = [list(r) for r in matrix]
        self.name = name
        if check:
            self._verify()

    def _verify(self):
        A = self.algebra
        for i in range(A.dim):
            for j in range(A.dim):
                lhs = self.apply_vec(A.table[i][j])
                rhs = [x + y for x, y in zip(A.mul_vec(self.apply_vec(A.basis_vec(i)), A.basis_vec(j)),
                                             A.mul_vec(A.basis_vec(i), self.apply_vec(A.basis_vec(j))))]
                if lhs != rhs:
                    raise DerivationError(
                        f"Leibniz rule fails on pair ({A.labels[i]},{A.labels[j]})")

    def apply_vec(self, v):
        return mat_vec(self.matrix, v, self.algebra.field)

    def __call__(self, a: AlgElement) -> AlgElement:
        return _apply_matrix(self.algebra, self.matrix, a)

    def power_matrix(self, n: int):
        A = self.algebra
        M = [[A.field.one() if i == j else A.field.zero() for j in range(A.dim)] for i in range(A.dim)]
        for _ in range(n):
            M = mat_mul(self.matrix, M, A.field)
        return M

    def is_zero(self) -> bool:
        return is_zero_matrix(self.matrix)

    def __neg__(self):
        return Derivation(self.algebra, [[-x for x in r] for r in self.matrix], f"-{self.name}", check=False)

    def kernel(self) -> List[List]:
        return nullspace(self.matrix, self.algebra.dim, self.algebra.field)


def make_derivation(A: StructAlgebra, images, name: str = "") -> Derivation:
    """Derivation from images of the basis (labels -> elements or a list)."""
    return Derivation(A, _images_matrix(A, images), name)


def ad(x: AlgElement, name: str = "") -> Derivation:
    """Inner derivation a -> xa - ax."""
    A = x.algebra
    v = x.to_vec()
    L, R = A.left_matrix(v), A.right_matrix(v)
    M = [[l - r for l, r in zip(lr, rr)] for lr, rr in zip(L, R)]
    return Derivation(A, M, name or f"ad({x})", check=False)


@dataclass
class Nilpotency:
    nilpotent: bool
    index: Optional[int] = None

    def __bool__(self):
        return self.nilpotent


def is_locally_nilpotent(d: Derivation) -> Nilpotency:
    """Exact on finite-dimensional A: the smallest N <= dim A with d^N = 0.

    The zero derivation has index 1.
    """
    A = d.algebra
    M = d.matrix
    for n in range(1, A.dim + 1):
        if is_zero_matrix(M):
            return Nilpotency(True, n)
        M = mat_mul(d.matrix, M, A.field)
    # a nilpotent operator on a dim-dimensional space has d^dim = 0
    return Nilpotency(False)


def exp_map_images(d: Derivation, var: str = "t", sign: int = 1) -> List[AlgElement]:
    """Images of the basis under a -> sum_i (sign*t)^i / i! d^i(a)."""
    A = d.algebra
    nil = is_locally_nilpotent(d)
    if not nil:
        raise DerivationError("exp needs a locally nilpotent derivation")
    t = Poly.var(A.field, var)
    out = []
    for j in range(A.dim):
        coords = [Poly.zero(A.field, (var,)) for _ in range(A.dim)]
        v = A.basis_vec(j)
        for i in range(nil.index):
            c = (t * sign) ** i / factorial(i)
            coords = [x + c * y for x, y in zip(coords, v)]
            v = d.apply_vec(v)
        out.append(AlgElement(A, coords, (var,)))
    return out


@dataclass
class ExpResult:
    witness: HomWitness
    report: IsoReport


def exp_automorphism(d: Derivation, var: str = "t") -> ExpResult:
    """exp(d, t) on A[t] with inverse exp(-d, t), verified as an isomorphism."""
    A = d.algebra
    if A.field.char != 0:
        raise DerivationError("exp(d, t) needs characteristic 0")
    tvar = [A.ext_var(var)]
    inv = HomWitness(A, A, (var,), (var,), exp_map_images(d, var, -1), tvar, name=f"exp(-{d.name}, {var})")
    w = HomWitness(A, A, (var,), (var,), exp_map_images(d, var, 1), tvar, inverse=inv,
                   name=f"exp({d.name}, {var})")
    report = verify_iso(w)
    if not report.ok:
        raise DerivationError(f"exp(d, t) failed verification: {report.to_json()}")
    return ExpResult(w, report)


# -- higher derivations ---------------------------------------------------

class HigherDerivation:
    """Finite sequence id = D_0, D_1, ..., D_N with D_n = 0 for n > N,
    satisfying D_n(ab) = sum_i D_i(a) D_{n-i}(b) on basis pairs for n <= 2N."""

    def __init__(self, algebra: StructAlgebra, maps: Sequence, name: str = "", check: bool = True):
        self.algebra = algebra
        self.maps = [[list(r) for r in M] for M in maps]
        self.name = name
        if check:
            self._verify()

    @property
    def order(self) -> int:
        return len(self.maps)

    def map(self, n: int):
        A = self.algebra
        if n == 0:
            return [[A.field.one() if i == j else A.field.zero() for j in range(A.dim)] for i in range(A.dim)]
        if n <= self.order:
            return self.maps[n - 1]
        return [[A.field.zero()] * A.dim for _ in range(A.dim)]

    def apply_vec(self, n: int, v):
        return mat_vec(self.map(n), v, self.algebra.field)

    def violations(self, stop_at_first: bool = False):
        """All (n, label_i, label_j) where the identity fails, n <= 2N."""
        A = self.algebra
        out = []
        for n in range(1, 2 * self.order + 1):
            for i in range(A.dim):
                for j in range(A.dim):
                    lhs = self.apply_vec(n, A.table[i][j])
                    rhs = A.zero_vec()
                    for k in range(n + 1):
                        a = self.apply_vec(k, A.basis_vec(i))
                        b = self.apply_vec(n - k, A.basis_vec(j))
                        rhs = [x + y for x, y in zip(rhs, A.mul_vec(a, b))]
                    if lhs != rhs:
                        out.append((n, A.labels[i], A.labels[j]))
                        if stop_at_first:
                            return out
        return out

    def _verify(self):
        bad = self.violations(stop_at_first=True)
        if bad:
            n, a, b = bad[0]
            raise DerivationError(f"Hasse-Schmidt identity fails at n={n} on pair ({a},{b})")

    def kernel(self) -> List[List]:
        rows = [r for M in self.maps for r in M]
        return nullspace(rows, self.algebra.dim, self.algebra.field) if rows else \
            [self.algebra.basis_vec(i) for i in range(self.algebra.dim)]


def make_higher_derivation(A: StructAlgebra, maps: Sequence, name: str = "") -> HigherDerivation:
    """Maps D_1..D_N, each given as images of the basis (dict or list)."""
    return HigherDerivation(A, [_images_matrix(A, m) for m in maps], name)


@dataclass
class HSResult:
    witness: HomWitness
    multiplicative: bool
    automorphism: bool
    determinant: Poly
    detail: str = ""

    @property
    def locally_nilpotent(self) -> bool:
        return self.multiplicative and self.automorphism


def hs_map_images(D: HigherDerivation, var: str = "t") -> List[AlgElement]:
    A = D.algebra
    t = Poly.var(A.field, var)
    out = []
    for j in range(A.dim):
        coords = [Poly.zero(A.field, (var,)) for _ in range(A.dim)]
        for n in range(D.order + 1):
            v = D.apply_vec(n, A.basis_vec(j))
            tn = t ** n
            coords = [x + tn * y for x, y in zip(coords, v)]
        out.append(AlgElement(A, coords, (var,)))
    return out


def hs_automorphism(D: HigherDerivation, var: str = "t") -> HSResult:
    """G: a -> sum_i D_i(a) t^i, t -> t.

    Multiplicativity is re-verified on basis pairs.  G is k[t]-linear, so it
    is bijective exactly when its matrix over k[t] has a nonzero constant
    determinant; the inverse then comes from the adjugate and is verified.
    Raises if G is not multiplicative.
    """
    A = D.algebra
    imgs = hs_map_images(D, var)
    tvar = [A.ext_var(var)]
    M = [[imgs[j].coords[k] for j in range(A.dim)] for k in range(A.dim)]
    det = poly_det(M)
    w = HomWitness(A, A, (var,), (var,), imgs, tvar, name=f"G({D.name}, {var})")
    rep = verify_hom(w)
    if not rep.ok:
        raise DerivationError(f"G is not multiplicative: {rep.failures()[0].detail}")
    auto = False
    if not det.is_zero() and det.is_constant():
        dinv = A.field.one() / det.constant_value()
        inv_imgs = []
        for j in range(A.dim):
            target = [Poly.const(A.field, 1 if k == j else 0, (var,)) for k in range(A.dim)]
            coords = []
            for k in range(A.dim):
                Mk = [row[:k] + [target[r]] + row[k + 1:] for r, row in enumerate(M)]
                coords.append(poly_det(Mk) * dinv)
            inv_imgs.append(AlgElement(A, coords, (var,)))
        inv = HomWitness(A, A, (var,), (var,), inv_imgs, tvar, name=f"G({D.name}, {var})^-1")
        w = HomWitness(A, A, (var,), (var,), imgs, tvar, inverse=inv, name=w.name)
        auto = verify_iso(w).ok
    return HSResult(w, True, auto, det)


# -- Makar-Limanov relative to a family -----------------------------------

@dataclass
class MLResult:
    ml: List[AlgElement]
    ml_z: List[AlgElement]


Member = Union[Derivation, HigherDerivation]


def ml_over_family(A: StructAlgebra, family: Sequence[Member]) -> MLResult:
    """Intersection of kernels over the family, and its meet with Z(A).

    This bounds the true Makar-Limanov invariant from above: it is only
    the invariant relative to the given family.
    """
    rows = []
    for d in family:
        if d.algebra != A:
            raise DerivationError("family member on a different algebra")
        if isinstance(d, Derivation):
            if not is_locally_nilpotent(d):
                raise DerivationError(f"family member {d.name or '?'} is not locally nilpotent")
            rows += d.matrix
        else:
            if not hs_automorphism(d).locally_nilpotent:
                raise DerivationError(f"higher derivation {d.name or '?'} is not locally nilpotent")
            rows += [r for M in d.maps for r in M]
    ml = nullspace(rows, A.dim, A.field) if rows else [A.basis_vec(i) for i in range(A.dim)]
    ml = echelon(ml, A.field)
    # ML meet Z: vectors killed by the family and commuting with the basis
    zrows = list(rows)
    for i in range(A.dim):
        for k in range(A.dim):
            zrows.append([A.table[j][i][k] - A.table[i][j][k] for j in range(A.dim)])
    mlz = nullspace(zrows, A.dim, A.field)
    return MLResult([A.vec_element(v) for v in ml], [A.vec_element(v) for v in mlz])


def square_zero_witness(A: StructAlgebra, seed: int = 0, tries: int = 200) -> Optional[AlgElement]:
    """A nonzero f with f^2 = 0, or None.

    Stages: a basis element squaring to zero; a nonzero element of the last
    nonzero power J^(k-1) of the radical (its square lies in J^(2k-2) = 0);
    then f = e b (1 - e) for an idempotent e split off from the minimal
    polynomial of a basis or seeded random element.  None is certain when A
    is commutative; for noncommutative semisimple A it means none was found.
    """
    basis = A.basis()
    for b in basis:
        if not b.is_zero() and (b * b).is_zero():
            return b
    J = jacobson_radical_vectors(A)
    if J:
        k = 1
        while ideal_power_vectors(A, J, k + 1):
            k += 1
        return A.vec_element(ideal_power_vectors(A, J, k)[0])
    if A.is_commutative():
        return None  # reduced: a product of fields
    rng = random.Random(seed)
    one = A.one()
    for attempt in range(tries):
        if attempt < A.dim:
            a = A.basis_vec(attempt)
        else:
            a = [A.field(rng.randrange(-3, 4) if A.field.char == 0 else rng.randrange(A.field.char))
                 for _ in range(A.dim)]
        idem, _ = _split(A, list(A.identity), a)
        if idem is None:
            continue
        e = A.vec_element(idem)
        for b in basis:
            for f in (e * b * (one - e), (one - e) * b * e):
                if not f.is_zero():
                    return f
    return None
