"""Orders free of finite rank over k[x] or k[x, x^-1]: trace forms,
discriminants, fibers and the non-Azumaya locus."""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

from .algcore import StructAlgebra, center_vectors, jacobson_radical_vectors
from .exactnum import FieldDesc, Poly, parse_field, parse_poly, roots, squarefree_part
from .exactnum.linalg import inverse, poly_det


class AzumayaError(ValueError):
    pass


@dataclass(frozen=True)
class BaseRing:
    """k[x] or, with ``laurent``, k[x, x^-1]."""

    field: FieldDesc
    var: str = "x"
    laurent: bool = False

    @property
    def tag(self) -> str:
        v = self.var
        return f"{self.field.tag}[{v},{v}^-1]" if self.laurent else f"{self.field.tag}[{v}]"

    def poly(self, value) -> Poly:
        if isinstance(value, Poly):
            return value.extend((self.var,), (self.var,) if self.laurent else ())
        if isinstance(value, str):
            return parse_poly(value, self.field, (self.var,), (self.var,) if self.laurent else ())
        return Poly.const(self.field, value, (self.var,), (self.var,) if self.laurent else ())

    def x(self) -> Poly:
        return self.poly(self.var)


_RING = re.compile(r"^\s*(QQ|GF\(\s*\d+\s*\))\s*\[\s*([A-Za-z_]\w*)\s*(?:,\s*([A-Za-z_]\w*)\s*\^\s*-1\s*)?\]\s*$")


def parse_base_ring(tag: str) -> BaseRing:
    """``QQ[x]``, ``QQ[x,x^-1]``, ``GF(p)[x]`` or ``GF(p)[x,x^-1]``."""
    m = _RING.match(tag)
    if not m:
        raise AzumayaError(f"bad base ring {tag!r}; expected e.g. QQ[x] or QQ[x,x^-1]")
    field, var, inv = parse_field(m.group(1)), m.group(2), m.group(3)
    if inv is not None and inv != var:
        raise AzumayaError(f"bad base ring {tag!r}: inverse of a different variable")
    return BaseRing(field, var, inv is not None)


class FreeCentralAlgebra:
    """An R-algebra with a free R-basis, R = k[x] or k[x, x^-1] central.

    Associativity and the unit law are verified over R at construction; R
    is central because the structure constants are R-bilinear and the
    identity is checked to commute with every basis element.
    """

    def __init__(self, ring: BaseRing, labels: Sequence[str], constants, identity, name: str = ""):
        self.ring = ring
        self.labels = tuple(labels)
        self.name = name
        m = len(self.labels)
        if m == 0 or len(set(self.labels)) != m:
            raise AzumayaError("basis labels must be nonempty and distinct")
        zero = ring.poly(0)
        table = [[[zero] * m for _ in range(m)] for _ in range(m)]
        for (i, j), prod in constants.items():
            for k, c in prod.items():
                table[i][j][k] = table[i][j][k] + ring.poly(c)
        self.table = table
        if len(identity) != m:
            raise AzumayaError("identity has the wrong number of coordinates")
        self.identity = [ring.poly(c) for c in identity]
        self._verify()

    @property
    def field(self) -> FieldDesc:
        return self.ring.field

    @property
    def rank(self) -> int:
        return len(self.labels)

    def zero_vec(self):
        return [self.ring.poly(0)] * self.rank

    def basis_vec(self, i):
        v = self.zero_vec()
        v[i] = self.ring.poly(1)
        return v

    def mul(self, u, v):
        out = self.zero_vec()
        for i, a in enumerate(u):
            if a.is_zero():
                continue
            for j, b in enumerate(v):
                if b.is_zero():
                    continue
                ab = a * b
                for k, c in enumerate(self.table[i][j]):
                    if not c.is_zero():
                        out[k] = out[k] + ab * c
        return out

    def _verify(self):
        m = self.rank
        for i, j, k in itertools.product(range(m), repeat=3):
            if self.mul(self.table[i][j], self.basis_vec(k)) != self.mul(self.basis_vec(i), self.table[j][k]):
                raise AzumayaError(
                    f"associativity fails on basis triple ({self.labels[i]},{self.labels[j]},{self.labels[k]})")
        for i in range(m):
            b = self.basis_vec(i)
            if self.mul(self.identity, b) != b or self.mul(b, self.identity) != b:
                raise AzumayaError(f"identity is not a two-sided unit on {self.labels[i]}")

    def __eq__(self, other):
        return (isinstance(other, FreeCentralAlgebra) and self.ring == other.ring
                and self.labels == other.labels and self.table == other.table
                and self.identity == other.identity)

    def __repr__(self):
        return f"<{self.name or 'order'} over {self.ring.tag}, basis {', '.join(self.labels)}>"

    # -- traces and discriminants ----------------------------------------
    def reg_trace(self, u) -> Poly:
        """Trace of left multiplication by u on the free module R^m."""
        t = self.ring.poly(0)
        for i, a in enumerate(u):
            if a.is_zero():
                continue
            for j in range(self.rank):
                c = self.table[i][j][j]
                if not c.is_zero():
                    t = t + a * c
        return t

    def trace_pairing(self) -> List[List[Poly]]:
        m = self.rank
        return [[self.reg_trace(self.table[i][j]) for j in range(m)] for i in range(m)]

    def discriminant(self) -> "DiscriminantReport":
        return DiscriminantReport.from_raw(poly_det(self.trace_pairing()), self.ring)

    def change_basis(self, P) -> "FreeCentralAlgebra":
        """Order on the basis b'_i = sum_j P[i][j] b_j for an invertible k-matrix P."""
        k = self.field
        P = [[k(c) for c in row] for row in P]
        Pinv = inverse(P, k)
        m = self.rank
        new = [[self.ring.poly(c) for c in row] for row in P]

        def coords(v):
            # v = sum_j v_j b_j = sum_i w_i b'_i  with  w = v P^-1
            return [sum((v[j] * Pinv[j][i] for j in range(m)), self.ring.poly(0)) for i in range(m)]

        consts = {}
        for i in range(m):
            for j in range(m):
                consts[(i, j)] = dict(enumerate(coords(self.mul(new[i], new[j]))))
        return FreeCentralAlgebra(self.ring, [f"{l}'" for l in self.labels], consts,
                                  coords(self.identity), name=f"{self.name}'")

    # -- fibers -----------------------------------------------------------
    def fiber_at(self, a) -> StructAlgebra:
        """A / (x - a)A as an algebra over k."""
        a = self.field(a)
        if self.ring.laurent and a == 0:
            raise AzumayaError("Laurent base ring has a pole at x = 0")
        pt = {self.ring.var: a}
        m = self.rank
        consts = {}
        for i in range(m):
            for j in range(m):
                consts[(i, j)] = {k: c.subs(pt).constant_value() for k, c in enumerate(self.table[i][j])
                                  if not c.is_zero()}
        ident = [c.subs(pt).constant_value() for c in self.identity]
        return StructAlgebra(self.field, self.labels, consts, ident, name=f"{self.name or 'A'}|x={a}")

    def fiber_vec(self, u, a):
        a = self.field(a)
        return [c.subs({self.ring.var: a}).constant_value() for c in u]


@dataclass
class DiscriminantReport:
    """raw = unit * normalized; squarefree divides normalized."""

    raw: Poly
    unit: Poly
    normalized: Poly
    squarefree: Poly

    @property
    def degenerate(self) -> bool:
        return self.raw.is_zero()

    @property
    def is_unit(self) -> bool:
        return not self.degenerate and self.normalized == 1

    @classmethod
    def from_raw(cls, raw: Poly, ring: BaseRing) -> "DiscriminantReport":
        one = ring.poly(1)
        if raw.is_zero():
            return cls(raw, one, raw, raw)
        unit = ring.poly(raw.leading_coeff())
        norm = raw / raw.leading_coeff()
        if ring.laurent:
            # monomials are units in k[x, x^-1]
            shift = norm.min_degree(ring.var)
            mono = ring.x() ** shift
            norm = norm * (ring.x() ** (-shift))
            unit = unit * mono
        plain = norm.extend_drop((ring.var,)) if ring.laurent else norm
        plain = Poly(plain.field, plain.vars, plain.terms)
        sq = squarefree_part(plain) if plain.degree() > 0 else Poly.const(ring.field, 1, (ring.var,))
        return cls(raw, unit, ring.poly(plain), ring.poly(sq))

    def to_json(self):
        return {"raw": str(self.raw), "unit": str(self.unit), "normalized": str(self.normalized),
                "squarefree": str(self.squarefree), "is_unit": self.is_unit, "degenerate": self.degenerate}


def is_central_simple(F: StructAlgebra) -> bool:
    """Radical zero and one-dimensional center.

    Over a non-closed field this certifies central simplicity; being a full
    matrix algebra is the same condition only after extending to the closure.
    """
    return not jacobson_radical_vectors(F) and len(center_vectors(F)) == 1


# -- constructors ---------------------------------------------------------

def _ring(R) -> BaseRing:
    return parse_base_ring(R) if isinstance(R, str) else R


def matrix_order(R, n: int) -> FreeCentralAlgebra:
    R = _ring(R)
    consts = {}
    for i, j, k in itertools.product(range(n), repeat=3):
        consts[(i * n + j, j * n + k)] = {i * n + k: 1}
    labels = [f"e{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    ident = [1 if i == j else 0 for i in range(n) for j in range(n)]
    return FreeCentralAlgebra(R, labels, consts, ident, name=f"M_{n}({R.tag})")


def corner_order(R, f) -> FreeCentralAlgebra:
    """The order (R fR; R R) on the R-basis e11, f*e12, e21, e22."""
    R = _ring(R)
    f = R.poly(f)
    if f.is_zero():
        raise AzumayaError("corner_order needs f != 0")
    e11, fe12, e21, e22 = range(4)
    consts = {
        (e11, e11): {e11: 1}, (e11, fe12): {fe12: 1},
        (fe12, e21): {e11: f}, (fe12, e22): {fe12: 1},
        (e21, e11): {e21: 1}, (e21, fe12): {e22: f},
        (e22, e21): {e21: 1}, (e22, e22): {e22: 1},
    }
    A = FreeCentralAlgebra(R, ["e11", "fe12", "e21", "e22"], consts, [1, 0, 0, 1],
                           name=f"corner({f})")
    pt = generic_point(A)
    if len(center_vectors(A.fiber_at(pt))) != 1:
        raise AzumayaError("corner order center is larger than R")
    return A


# -- Azumaya locus --------------------------------------------------------

def generic_point(A: FreeCentralAlgebra, avoid: Optional[Poly] = None):
    """First of 1, 2, -1, 3, -2, ... that is not a root of ``avoid`` (the raw
    discriminant when omitted), skipping 0 for Laurent rings."""
    d = avoid if avoid is not None else A.discriminant().raw
    k = A.field
    seen = set()
    for c in itertools.chain([1], itertools.chain.from_iterable((n, 1 - n) for n in range(2, 10 ** 4))):
        a = k(c)
        if a in seen:
            continue
        seen.add(a)
        if A.ring.laurent and a == 0:
            continue
        if d.is_zero() or d.subs({A.ring.var: a}) != 0:
            return a
    raise AzumayaError("no point avoids the discriminant")


@dataclass
class LocusReport:
    polynomial: Poly
    discriminant: DiscriminantReport
    generic_point: object
    roots: List
    fibers: Dict[str, bool]

    def to_json(self):
        return {"non_azumaya_poly": str(self.polynomial), "discriminant": self.discriminant.to_json(),
                "generic_point": str(self.generic_point), "roots": [str(r) for r in self.roots],
                "fibers": dict(sorted(self.fibers.items()))}


def _default_samples(A: FreeCentralAlgebra, count: int = 6):
    k = A.field
    if k.char:
        return [a for a in k.elements() if not (A.ring.laurent and a == 0)]
    pts = []
    n = 0
    while len(pts) < count:
        for c in ((n,) if n == 0 else (n, -n)):
            if not (A.ring.laurent and c == 0):
                pts.append(k(c))
        n += 1
    return pts[:count]


def non_azumaya_locus(A: FreeCentralAlgebra, samples: Optional[Sequence] = None) -> LocusReport:
    """Monic squarefree part of the discriminant, cross-validated on fibers.

    Every root in k must give a fiber that is not central simple, and every
    sampled non-root must give a central simple fiber; a disagreement raises.
    """
    disc = A.discriminant()
    if disc.degenerate:
        raise AzumayaError(
            f"the trace-form discriminant vanishes identically over {A.field.tag}; "
            "use fiber sampling instead of the discriminant")
    pt = generic_point(A, disc.raw)
    if not is_central_simple(A.fiber_at(pt)):
        raise AzumayaError(f"generic fiber at x = {pt} is not central simple")
    sq = disc.squarefree
    plain = sq.extend_drop((A.ring.var,)) if sq.used_vars() else None
    rts = []
    if plain is not None and plain.degree() > 0:
        rts = [r for r in roots(Poly(plain.field, plain.vars, plain.terms))
               if not (A.ring.laurent and r == 0)]
    points = list(dict.fromkeys(list(rts) + [A.field(s) for s in (samples if samples is not None
                                                                  else _default_samples(A))]))
    fibers = {}
    for a in points:
        if A.ring.laurent and a == 0:
            raise AzumayaError("sample point 0 is a pole of the Laurent base ring")
        cs = is_central_simple(A.fiber_at(a))
        is_root = sq.subs({A.ring.var: a}) == 0
        if cs == is_root:
            raise AzumayaError(
                f"fiber at x = {a} is {'' if cs else 'not '}central simple but x = {a} is "
                f"{'' if is_root else 'not '}a discriminant root")
        fibers[str(a)] = cs
    return LocusReport(sq, disc, pt, rts, fibers)


def non_azumaya_poly(A: FreeCentralAlgebra, samples: Optional[Sequence] = None) -> Poly:
    return non_azumaya_locus(A, samples).polynomial


def extension_invariance_check(A: FreeCentralAlgebra, n: int) -> bool:
    """Discriminant over k[x, t1..tn] equals the one over k[x], literally.

    The pairing is recomputed twice over the extended ring: on the same
    basis with coefficients extended, and on the basis changed by the
    unimodular upper triangular matrix with entries t_1, ..., t_n above the
    diagonal (cycled).  Both determinants must equal the base one.
    """
    if n < 1:
        raise AzumayaError("extension check needs n >= 1")
    base = A.discriminant().raw
    ts = tuple(f"t{i + 1}" for i in range(n))
    if A.ring.var in ts:
        raise AzumayaError("base variable clashes with extension variables")
    vars_ = (A.ring.var,) + ts
    lau = (A.ring.var,) if A.ring.laurent else ()
    m = A.rank
    T = A.trace_pairing()
    ext = [[c.extend(vars_, lau) for c in row] for row in T]
    d1 = poly_det(ext)
    tpolys = [Poly.var(A.field, t).extend(vars_, lau) for t in ts]
    rows = [[Poly.const(A.field, 1 if i == j else 0, vars_, lau) for j in range(m)] for i in range(m)]
    c = 0
    for i in range(m):
        for j in range(i + 1, m):
            rows[i][j] = tpolys[c % n]
            c += 1
    # pairing of the new basis, from actual products in the extended ring
    T2 = [[A.reg_trace(A.mul(rows[i], rows[j])) for j in range(m)] for i in range(m)]
    d2 = poly_det(T2)
    same = (d1 == base and d2 == base and not set(d1.used_vars()) & set(ts)
            and not set(d2.used_vars()) & set(ts))
    return same


def pi_degree_estimate(A: FreeCentralAlgebra) -> int:
    r = math.isqrt(A.rank)
    if r * r != A.rank:
        raise AzumayaError(f"rank {A.rank} is not a perfect square")
    disc = A.discriminant()
    pt = generic_point(A, disc.raw)
    if not is_central_simple(A.fiber_at(pt)):
        raise AzumayaError(f"generic fiber at x = {pt} is not central simple")
    return r


def is_effective_univariate(f: Poly) -> bool:
    """Non-units of k[x] (degree >= 1) are the effective elements."""
    if f.is_zero():
        raise AzumayaError("0 is neither a unit nor effective")
    if f.laurent & set(f.used_vars()):
        raise AzumayaError("expected a polynomial, not a Laurent polynomial")
    f.main_var()
    return f.degree() >= 1


__all__ = ["AzumayaError", "BaseRing", "parse_base_ring", "FreeCentralAlgebra", "DiscriminantReport",
           "is_central_simple", "matrix_order", "corner_order", "generic_point", "LocusReport",
           "non_azumaya_locus", "non_azumaya_poly", "extension_invariance_check", "pi_degree_estimate",
           "is_effective_univariate"]
