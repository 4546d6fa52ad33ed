"""Univariate factorization, squarefree parts and roots.

Factorization delegates to sympy's Zassenhaus (QQ) and Cantor-Zassenhaus
(GF(p)) implementations; the squarefree part is computed here from gcds so
it can serve as an independent check on the factor list.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

import sympy

from .fields import FieldDesc
from .poly import Poly, poly_gcd


@dataclass(frozen=True)
class Factorization:
    unit: object
    factors: Tuple[Tuple[Poly, int], ...]

    def expand(self) -> Poly:
        out = None
        for f, m in self.factors:
            term = f ** m
            out = term if out is None else out * term
        if out is None:
            raise ValueError("empty factorization")
        return out * self.unit


def _check_univariate(f: Poly, what: str) -> str:
    if f.is_zero():
        raise ValueError(f"{what} of the zero polynomial")
    if f.laurent & set(f.used_vars()):
        raise ValueError(f"{what} needs a non-Laurent polynomial")
    var = f.main_var()  # raises on multivariate input
    return var


def factor_univariate(f: Poly) -> Factorization:
    """Monic irreducible factors with multiplicities, plus the leading unit."""
    var = _check_univariate(f, "factorization")
    field = f.field
    if var is None:
        return Factorization(f.constant_value(), ())
    coeffs = f.univariate_coeffs(var)
    x = sympy.Symbol("x")
    if field.kind == "QQ":
        sp = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)],
                        x, domain="QQ")
    else:
        sp = sympy.Poly([int(c) for c in reversed(coeffs)], x, modulus=field.p)
    _, parts = sp.factor_list()
    factors: List[Tuple[Poly, int]] = []
    for g, m in parts:
        cs = [field(Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])))
              for c in reversed(g.all_coeffs())]
        factors.append((Poly.from_coeffs(field, var, cs).monic().extend(f.vars, f.laurent), m))
    factors.sort(key=lambda fm: (fm[0].degree(), str(fm[0])))
    return Factorization(f.leading_coeff(), tuple(factors))


def _pth_root(f: Poly, var: str) -> Poly:
    p = f.field.p
    cs = f.univariate_coeffs(var)
    return Poly.from_coeffs(f.field, var, cs[::p]).extend(f.vars, f.laurent)


def squarefree_part(f: Poly) -> Poly:
    """Monic generator of the radical of the principal ideal (f)."""
    var = _check_univariate(f, "squarefree part")
    f = f.monic()
    if var is None:
        return f
    d = f.diff(var)
    if d.is_zero():
        return squarefree_part(_pth_root(f, var))
    g = poly_gcd(f, d)
    w = (f // g).monic()
    if f.field.char == 0:
        return w
    # factors of multiplicity divisible by p survive only in g
    while True:
        h = poly_gcd(g, w)
        if h.degree() <= 0:
            break
        g = g // h
    if g.degree() <= 0:
        return w
    return (w * squarefree_part(g)).monic()


def roots(f: Poly) -> List:
    """Roots in the base field, sorted, without multiplicity."""
    fac = factor_univariate(f)
    out = []
    for g, _ in fac.factors:
        if g.degree() == 1:
            cs = g.univariate_coeffs()
            out.append(-cs[0] / cs[1])
    if f.field.kind == "GF":
        return sorted(out, key=int)
    return sorted(out)
