"""Centers, Jacobson radicals and central idempotents of structure algebras."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from typing import List, Sequence, Tuple

from ..exactnum import Poly, factor_univariate, poly_xgcd
from ..exactnum.linalg import echelon, nullspace, rank, rref
from .algebra import AlgebraError, AlgElement, StructAlgebra, subalgebra

DEFAULT_CI_CAP = 2 ** 10


def center_vectors(A: StructAlgebra) -> List[List]:
    m = A.dim
    rows = []
    # z b_i - b_i z = 0, one row per (i, k)
    for i in range(m):
        for k in range(m):
            rows.append([A.table[j][i][k] - A.table[i][j][k] for j in range(m)])
    return nullspace(rows, m, A.field)


def center_basis(A: StructAlgebra) -> List[AlgElement]:
    """Echelonized basis of Z(A)."""
    return [A.vec_element(v) for v in center_vectors(A)]


def center_algebra(A: StructAlgebra) -> Tuple[StructAlgebra, List[List]]:
    """Z(A) as a commutative structure algebra plus its embedding rows."""
    return subalgebra(A, center_vectors(A), name=f"Z({A.name or 'A'})")


def _combine(A: StructAlgebra, coeffs: Sequence, rows: Sequence[Sequence]) -> List:
    out = A.zero_vec()
    for c, r in zip(coeffs, rows):
        if c != 0:
            out = [x + c * y for x, y in zip(out, r)]
    return out


# -- quotients ------------------------------------------------------------

@dataclass
class Quotient:
    """A/I with basis the standard vectors at the non-pivot columns of I."""

    algebra: StructAlgebra
    ideal: List[List]
    keep: List[int]

    def project(self, v: Sequence) -> List:
        v = list(v)
        for row in self.ideal:
            piv = next(i for i, x in enumerate(row) if x != 0)
            if v[piv] != 0:
                f = v[piv]
                v = [x - f * y for x, y in zip(v, row)]
        return [v[i] for i in self.keep]

    def lift(self, u: Sequence, parent: StructAlgebra) -> List:
        v = parent.zero_vec()
        for i, c in zip(self.keep, u):
            v[i] = c
        return v


def quotient_algebra(A: StructAlgebra, ideal_vectors: Sequence[Sequence]) -> Quotient:
    ideal, piv = rref(ideal_vectors, A.field) if ideal_vectors else ([], [])
    keep = [i for i in range(A.dim) if i not in piv]
    if not keep:
        raise AlgebraError("quotient by the whole algebra")
    q = Quotient(None, ideal, keep)
    consts = {}
    for a, i in enumerate(keep):
        for b, j in enumerate(keep):
            prod = q.project(A.table[i][j])
            consts[(a, b)] = {k: c for k, c in enumerate(prod) if c != 0}
    q.algebra = StructAlgebra(A.field, [A.labels[i] for i in keep], consts, q.project(A.identity),
                              name=f"{A.name or 'A'}/I")
    return q


# -- radical --------------------------------------------------------------

def trace_form(A: StructAlgebra) -> List[List]:
    m = A.dim
    return [[A.trace_left(A.table[i][j]) for j in range(m)] for i in range(m)]


def _radical_char0(A: StructAlgebra) -> List[List]:
    return nullspace(trace_form(A), A.dim, A.field)


def _int_matrix(M) -> List[List[int]]:
    return [[int(x) for x in row] for row in M]


def _trace_power_mod(M: List[List[int]], e: int, mod: int) -> int:
    n = len(M)
    R = [[int(i == j) for j in range(n)] for i in range(n)]
    B = [[x % mod for x in row] for row in M]

    def mul(X, Y):
        return [[sum(X[i][k] * Y[k][j] for k in range(n)) % mod for j in range(n)] for i in range(n)]

    while e:
        if e & 1:
            R = mul(R, B)
        B = mul(B, B)
        e >>= 1
    return sum(R[i][i] for i in range(n)) % mod


def _radical_charp(A: StructAlgebra) -> List[List]:
    """Radical over GF(p) by the trace-of-p-power filtration.

    I_{-1} = A and I_i = {a in I_{i-1} : g_i(ab) = 0 for all b}, where
    g_i(a) = Tr(L^{p^i}) / p^i mod p for an integer lift L of the left
    regular matrix of a.  The last I_i (i <= log_p dim) is J(A).
    """
    p = A.field.p
    m = A.dim
    basis = [A.basis_vec(i) for i in range(m)]
    i = 0
    while True:
        if not basis:
            return []
        mod = p ** (i + 1)
        rows = []
        for j in range(m):
            bj = A.basis_vec(j)
            row = []
            for v in basis:
                t = _trace_power_mod(_int_matrix(A.left_matrix(A.mul_vec(v, bj))), p ** i, mod)
                if t % (p ** i):
                    raise AlgebraError("trace not divisible by p^i")
                row.append(A.field(t // p ** i))
            rows.append(row)
        coeffs = nullspace(rows, len(basis), A.field)
        basis = echelon([_combine(A, c, basis) for c in coeffs], A.field)
        if p ** (i + 1) > m:
            return basis
        i += 1


def ideal_power_vectors(A: StructAlgebra, I: Sequence[Sequence], k: int) -> List[List]:
    cur = echelon(I, A.field)
    for _ in range(k - 1):
        if not cur:
            break
        cur = echelon([A.mul_vec(u, v) for u in cur for v in I], A.field)
    return cur


@dataclass
class RadicalCertificate:
    ideal: bool
    nilpotency_index: int
    quotient_semisimple: bool
    method: str

    @property
    def ok(self) -> bool:
        return self.ideal and self.nilpotency_index > 0 and self.quotient_semisimple


def _is_two_sided_ideal(A: StructAlgebra, I: List[List]) -> bool:
    if not I:
        return True
    r = len(I)
    for v in I:
        for j in range(A.dim):
            b = A.basis_vec(j)
            for w in (A.mul_vec(v, b), A.mul_vec(b, v)):
                if rank(I + [w], A.field) != r:
                    return False
    return True


def _nilpotency_index(A: StructAlgebra, I: List[List]) -> int:
    """Smallest m with I^m = 0 (1 for the zero ideal); 0 if not nilpotent."""
    if not I:
        return 1
    cur, prev_dim = echelon(I, A.field), None
    k = 1
    while cur:
        if len(cur) == prev_dim:
            return 0
        prev_dim = len(cur)
        cur = echelon([A.mul_vec(u, v) for u in cur for v in I], A.field)
        k += 1
    return k


def certify_radical(A: StructAlgebra, J: List[List]) -> RadicalCertificate:
    ideal = _is_two_sided_ideal(A, J)
    nil = _nilpotency_index(A, J) if ideal else 0
    semisimple = False
    method = "trace-form"
    if ideal and len(J) < A.dim:
        Q = quotient_algebra(A, J).algebra
        # A nondegenerate trace form rules out nilpotent ideals in any characteristic.
        semisimple = rank(trace_form(Q), Q.field) == Q.dim
        if not semisimple and A.field.char:
            method = "recomputed radical of quotient"
            semisimple = _radical_charp(Q) == []
    return RadicalCertificate(ideal, nil, semisimple, method)


def jacobson_radical_vectors(A: StructAlgebra) -> List[List]:
    J = _radical_char0(A) if A.field.char == 0 else _radical_charp(A)
    cert = certify_radical(A, J)
    if not cert.ok:
        raise AlgebraError(f"radical certificate failed: {cert}")
    return J


def jacobson_radical(A: StructAlgebra) -> List[AlgElement]:
    """Echelonized basis of J(A), certified nilpotent with semisimple quotient."""
    return [A.vec_element(v) for v in jacobson_radical_vectors(A)]


# -- central idempotents --------------------------------------------------

def _min_poly(A: StructAlgebra, a: Sequence, unit: Sequence, var: str = "z") -> Poly:
    """Minimal polynomial of a in the unital algebra with identity ``unit``."""
    powers = [list(unit)]
    while True:
        nxt = A.mul_vec(powers[-1], a)
        # solve nxt = sum c_i powers[i]
        cols = powers
        mat = [[cols[j][k] for j in range(len(cols))] for k in range(A.dim)]
        aug = [row + [nxt[k]] for k, row in enumerate(mat)]
        red, piv = rref(aug, A.field)
        if len(cols) not in piv:
            sol = [A.field.zero()] * len(cols)
            for row, pc in zip(red, piv):
                sol[pc] = row[len(cols)]
            return Poly.from_coeffs(A.field, var, [-c for c in sol] + [A.field.one()])
        powers.append(nxt)


def _eval_poly(A: StructAlgebra, f: Poly, a: Sequence, unit: Sequence) -> List:
    out = A.zero_vec()
    for c in reversed(f.univariate_coeffs("z") if f.degree() >= 0 else []):
        out = A.mul_vec(out, a)
        out = [x + c * u for x, u in zip(out, unit)]
    return out


def _split(A: StructAlgebra, e: List, a: List):
    """Split piece eA using a; returns a nontrivial idempotent or None if a's
    minimal polynomial is irreducible (with its degree)."""
    m = _min_poly(A, a, e)
    fac = factor_univariate(m)
    if len(fac.factors) == 1:
        return None, m.degree()
    f, mult = fac.factors[0]
    f = f ** mult
    g = m.exquo(f)
    _, u, _ = poly_xgcd(f, g)
    idem = _eval_poly(A, u * f, a, e)
    return idem, m.degree()


def primitive_idempotents_semisimple_commutative(A: StructAlgebra, seed: int = 0,
                                                 max_tries: int = 400) -> List[List]:
    """Primitive idempotents of a commutative semisimple algebra (product of fields)."""
    rng = random.Random(seed)
    todo = [list(A.identity)]
    done = []
    while todo:
        e = todo.pop()
        piece = echelon([A.mul_vec(e, A.basis_vec(i)) for i in range(A.dim)], A.field)
        d = len(piece)
        if d == 1:
            done.append(e)
            continue
        candidates = list(piece)
        split = None
        for attempt in range(max_tries):
            if attempt < len(candidates):
                a = candidates[attempt]
            else:
                coeffs = [A.field(rng.randrange(-3, 4) if A.field.char == 0 else rng.randrange(A.field.char))
                          for _ in piece]
                a = _combine(A, coeffs, piece)
            idem, deg = _split(A, e, a)
            if idem is not None:
                split = idem
                break
            if deg == d:
                break  # irreducible of full degree: the piece is a field
        else:
            raise AlgebraError("could not certify or split a piece of the semisimple center")
        if split is None:
            done.append(e)
        else:
            todo.append(split)
            todo.append([x - y for x, y in zip(e, split)])
    return sorted(done, key=lambda v: [i for i, x in enumerate(v) if x != 0])


def lift_idempotent(A: StructAlgebra, e: Sequence, max_steps: int = 64) -> List:
    """Lift an idempotent modulo a nil ideal with e <- 3e^2 - 2e^3."""
    e = list(e)
    for _ in range(max_steps):
        e2 = A.mul_vec(e, e)
        if e2 == e:
            return e
        e3 = A.mul_vec(e2, e)
        e = [3 * x - 2 * y for x, y in zip(e2, e3)]
    raise AlgebraError("idempotent lifting did not converge")


def primitive_central_idempotents(A: StructAlgebra, seed: int = 0) -> List[List]:
    """Primitive central idempotents of A as coordinate vectors in A."""
    Z, emb = center_algebra(A)
    JZ = jacobson_radical_vectors(Z)
    Q = quotient_algebra(Z, JZ) if JZ else None
    Zbar = Q.algebra if Q else Z
    prims = primitive_idempotents_semisimple_commutative(Zbar, seed)
    out = []
    for p in prims:
        z = Q.lift(p, Z) if Q else p
        z = lift_idempotent(Z, z)
        out.append(_combine(A, z, emb))
    return out


def central_idempotents(A: StructAlgebra, cap: int = DEFAULT_CI_CAP, seed: int = 0) -> List[AlgElement]:
    """All central idempotents (subset sums of the primitive ones).

    Ordered by subset size, then by subset index, so 0 comes first and 1 last.
    """
    prims = primitive_central_idempotents(A, seed)
    r = len(prims)
    if 2 ** r > cap:
        raise AlgebraError(f"{2 ** r} central idempotents exceed the cap {cap}")
    prims.sort(key=lambda v: [(x == 0) for x in v])
    out = []
    for size in range(r + 1):
        for sub in itertools.combinations(range(r), size):
            v = A.zero_vec()
            for i in sub:
                v = [x + y for x, y in zip(v, prims[i])]
            out.append(A.vec_element(v))
    return out


@dataclass
class AnsatzResult:
    """Outcome of solving e = e0 + e1 t + e2 t^2, e^2 = e, e central in A[t]."""

    constant_solutions: List[AlgElement]
    nonconstant_dims: List[Tuple[int, int]] = dc_field(default_factory=list)

    @property
    def only_constant(self) -> bool:
        return all(d == (0, 0) for d in self.nonconstant_dims)


def ci_polynomial_ansatz(A: StructAlgebra, seed: int = 0) -> AnsatzResult:
    """Central idempotents of A[t] of t-degree at most 2.

    Centrality forces e0, e1, e2 into Z(A).  The t^0 coefficient gives
    e0 in CI(Z(A)); the t^1 and t^2 coefficients are then linear in e1 and e2:
    (2e0 - 1)e1 = 0 and (2e0 - 1)e2 = -e1^2.  The solution spaces are
    reported; both are zero exactly when only constants occur.
    """
    Z, emb = center_algebra(A)
    consts, dims = [], []
    for e0 in central_idempotents(Z, seed=seed):
        v = e0.to_vec()
        u = [2 * x - y for x, y in zip(v, Z.identity)]
        L = Z.left_matrix(u)
        n1 = len(nullspace(L, Z.dim, Z.field))
        # e1 = 0 when n1 = 0, and the t^2 equation then has the same operator
        n2 = n1
        dims.append((n1, n2))
        consts.append(A.vec_element(_combine(A, v, emb)))
    return AnsatzResult(consts, dims)


def is_idempotent(a: AlgElement) -> bool:
    return a * a == a


def is_central(a: AlgElement) -> bool:
    return all(a * b == b * a for b in a.algebra.basis())
