"""Sparse multivariate (optionally Laurent) polynomials over QQ or GF(p).

A :class:`Poly` stores a map from exponent tuples to nonzero coefficients.
Variables flagged Laurent may carry negative exponents; all others must not.
Polynomials over different variable lists combine by taking the union of the
lists (first operand's order first), so ``x + t`` lives in ``k[x, t]``.
Equality ignores unused variables: ``x`` in ``k[x]`` equals ``x`` in ``k[x, t]``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple

from .fields import FieldDesc, ModP

Exps = Tuple[int, ...]
_SCALARS = (int, Fraction, ModP)


def _grlex(e: Exps):
    return (sum(e), e)


class Poly:
    __slots__ = ("field", "vars", "laurent", "terms")

    def __init__(self, field: FieldDesc, vars: Iterable[str] = (), terms: Mapping | None = None,
                 laurent: Iterable[str] = ()):
        vars = tuple(vars)
        if len(set(vars)) != len(vars):
            raise ValueError(f"repeated variable in {vars}")
        laurent = frozenset(laurent)
        if not laurent <= set(vars):
            raise ValueError("Laurent flag on an undeclared variable")
        clean: Dict[Exps, object] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != len(vars):
                raise ValueError(f"exponent {e} does not match variables {vars}")
            for v, x in zip(vars, e):
                if x < 0 and v not in laurent:
                    raise ValueError(f"negative exponent on non-Laurent variable {v}")
            c = field(c)
            if c != 0:
                clean[e] = clean.get(e, field.zero()) + c
                if clean[e] == 0:
                    del clean[e]
        self._set(field, vars, laurent, clean)

    def _set(self, field, vars, laurent, terms):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "vars", vars)
        object.__setattr__(self, "laurent", laurent)
        object.__setattr__(self, "terms", terms)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def _raw(cls, field, vars, laurent, terms) -> "Poly":
        p = object.__new__(cls)
        p._set(field, vars, laurent, terms)
        return p

    # -- constructors -------------------------------------------------
    @classmethod
    def const(cls, field: FieldDesc, c, vars: Iterable[str] = (), laurent: Iterable[str] = ()) -> "Poly":
        vars = tuple(vars)
        c = field(c)
        terms = {(0,) * len(vars): c} if c != 0 else {}
        return cls._raw(field, vars, frozenset(laurent), terms)

    @classmethod
    def zero(cls, field: FieldDesc, vars: Iterable[str] = (), laurent: Iterable[str] = ()) -> "Poly":
        return cls._raw(field, tuple(vars), frozenset(laurent), {})

    @classmethod
    def var(cls, field: FieldDesc, name: str, laurent: bool = False) -> "Poly":
        return cls._raw(field, (name,), frozenset([name]) if laurent else frozenset(),
                        {(1,): field.one()})

    # -- structure ----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def used_vars(self) -> Tuple[str, ...]:
        return tuple(v for i, v in enumerate(self.vars) if any(e[i] for e in self.terms))

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        """Value of a constant polynomial (raises if not constant)."""
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return next(iter(self.terms.values())) if self.terms else self.field.zero()

    def coeff(self, exps: Exps):
        return self.terms.get(tuple(exps), self.field.zero())

    def degree(self, var: str | None = None) -> int:
        """Total degree, or degree in ``var``; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        if var not in self.vars:
            return 0
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def min_degree(self, var: str) -> int:
        if not self.terms or var not in self.vars:
            return 0
        i = self.vars.index(var)
        return min(e[i] for e in self.terms)

    def leading(self):
        """(exponents, coefficient) of the graded-lex leading term."""
        e = max(self.terms, key=_grlex)
        return e, self.terms[e]

    def leading_coeff(self):
        return self.leading()[1] if self.terms else self.field.zero()

    # -- ring alignment -----------------------------------------------
    def extend(self, vars: Iterable[str], laurent: Iterable[str] = ()) -> "Poly":
        """Re-express in a ring whose variable list contains ours."""
        vars = tuple(vars)
        laurent = frozenset(laurent) | self.laurent
        if vars == self.vars:
            if laurent == self.laurent:
                return self
            return Poly._raw(self.field, vars, laurent, self.terms)
        idx = []
        for v in self.vars:
            if v in vars:
                idx.append(vars.index(v))
            else:
                idx.append(None)
        terms = {}
        n = len(vars)
        for e, c in self.terms.items():
            new = [0] * n
            for i, x in enumerate(e):
                if x:
                    if idx[i] is None:
                        raise ValueError(f"variable {self.vars[i]} missing from target ring {vars}")
                    new[idx[i]] = x
            terms[tuple(new)] = c
        return Poly._raw(self.field, vars, laurent, terms)

    def _align(self, other):
        if isinstance(other, _SCALARS):
            return self, Poly.const(self.field, other, self.vars, self.laurent)
        if not isinstance(other, Poly):
            return None, None
        if other.field != self.field:
            raise ValueError(f"field mismatch: {self.field} vs {other.field}")
        if other.vars == self.vars:
            if other.laurent == self.laurent:
                return self, other
            lau = self.laurent | other.laurent
            return self.extend(self.vars, lau), other.extend(self.vars, lau)
        vars = self.vars + tuple(v for v in other.vars if v not in self.vars)
        lau = self.laurent | other.laurent
        return self.extend(vars, lau), other.extend(vars, lau)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        a, b = self._align(other)
        if a is None:
            return NotImplemented
        terms = dict(a.terms)
        for e, c in b.terms.items():
            s = terms.get(e)
            s = c if s is None else s + c
            if s == 0:
                terms.pop(e, None)
            else:
                terms[e] = s
        return Poly._raw(a.field, a.vars, a.laurent, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.field, self.vars, self.laurent, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        a, b = self._align(other)
        if a is None:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            c = self.field(other)
            if c == 0:
                return Poly.zero(self.field, self.vars, self.laurent)
            return Poly._raw(self.field, self.vars, self.laurent, {e: v * c for e, v in self.terms.items()})
        a, b = self._align(other)
        if a is None:
            return NotImplemented
        terms: Dict[Exps, object] = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = terms.get(e)
                s = c1 * c2 if s is None else s + c1 * c2
                terms[e] = s
        terms = {e: c for e, c in terms.items() if c != 0}
        return Poly._raw(a.field, a.vars, a.laurent, terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, _SCALARS):
            c = self.field(other)
            return self * (self.field.one() / c)
        if isinstance(other, Poly) and other.is_constant():
            return self / other.constant_value()
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("negative power of a non-monomial")
            (e, c), = self.terms.items()
            for v, x in zip(self.vars, e):
                if x and v not in self.laurent:
                    raise ValueError(f"negative power of non-Laurent variable {v}")
            inv = self.field.one() / c
            return Poly._raw(self.field, self.vars, self.laurent,
                             {tuple(-x * (-n) for x in e): inv ** (-n)})
        result = Poly.const(self.field, 1, self.vars, self.laurent)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- equality -----------------------------------------------------
    def _key(self):
        out = []
        for e, c in self.terms.items():
            mono = tuple(sorted((v, x) for v, x in zip(self.vars, e) if x))
            out.append((mono, c))
        return frozenset(out)

    def __eq__(self, other):
        if isinstance(other, _SCALARS):
            return self.is_constant() and self.constant_value() == other
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field == other.field and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    # -- substitution and calculus -----------------------------------
    def subs(self, assignment: Mapping[str, object]) -> "Poly":
        """Substitute field elements or polynomials for variables."""
        keep = tuple(v for v in self.vars if v not in assignment)
        keep_idx = [i for i, v in enumerate(self.vars) if v not in assignment]
        sub_idx = [(i, v) for i, v in enumerate(self.vars) if v in assignment]
        result = Poly.zero(self.field, keep, self.laurent & set(keep))
        cache: Dict[Tuple[str, int], object] = {}
        for e, c in self.terms.items():
            term = Poly._raw(self.field, keep, result.laurent, {tuple(e[i] for i in keep_idx): c})
            for i, v in sub_idx:
                x = e[i]
                if x == 0:
                    continue
                if (v, x) not in cache:
                    val = assignment[v]
                    if not isinstance(val, Poly):
                        val = self.field(val)
                    if x < 0 and val == 0:
                        raise ZeroDivisionError(f"Laurent variable {v} evaluated at 0")
                    cache[(v, x)] = val ** x
                term = term * cache[(v, x)]
            result = result + term
        return result

    def extend_drop(self, keep: Iterable[str]) -> "Poly":
        """Restrict to the variables in ``keep`` (others must have exponent 0)."""
        keep = tuple(keep)
        idx = [self.vars.index(v) for v in keep]
        terms = {}
        for e, c in self.terms.items():
            if any(x for i, x in enumerate(e) if i not in idx):
                raise ValueError("dropping a variable that occurs")
            terms[tuple(e[i] for i in idx)] = c
        return Poly._raw(self.field, keep, self.laurent & set(keep), terms)

    def eval_at(self, assignment: Mapping[str, object]):
        """Apply the substitution homomorphism.

        Returns a field element when no variable of positive or negative
        degree survives, otherwise a :class:`Poly` in the remaining variables.
        """
        r = self.subs(assignment)
        return r.constant_value() if r.is_constant() else r

    def diff(self, var: str) -> "Poly":
        if var not in self.vars:
            return Poly.zero(self.field, self.vars, self.laurent)
        i = self.vars.index(var)
        terms = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            d = c * e[i]
            if d != 0:
                ne = list(e)
                ne[i] -= 1
                terms[tuple(ne)] = d
        return Poly._raw(self.field, self.vars, self.laurent, terms)

    # -- division -----------------------------------------------------
    def _shift_nonneg(self):
        """Split off the largest monomial factor: returns (poly, shift)."""
        if not self.terms:
            return self, (0,) * len(self.vars)
        shift = tuple(min(e[i] for e in self.terms) for i in range(len(self.vars)))
        terms = {tuple(x - s for x, s in zip(e, shift)): c for e, c in self.terms.items()}
        return Poly._raw(self.field, self.vars, self.laurent, terms), shift

    def exquo(self, other: "Poly") -> "Poly":
        """Exact quotient ``self / other``; raises ValueError if not divisible.

        Division by a single polynomial with a graded-lex leading term has zero
        remainder exactly when the divisor divides, so this is a divisibility
        test as well.  Laurent monomials are treated as units.
        """
        a, b = self._align(other)
        if b.is_zero():
            raise ZeroDivisionError("exact division by zero polynomial")
        if a.is_zero():
            return a
        lau = a.laurent
        if lau:
            a0, sa = a._shift_nonneg()
            b0, sb = b._shift_nonneg()
            for v, x, y in zip(a.vars, sa, sb):
                if v not in lau and x < y:
                    raise ValueError("not divisible")
            q = a0._exquo_plain(b0)
            shift = tuple(x - y for x, y in zip(sa, sb))
            terms = {tuple(u + s for u, s in zip(e, shift)): c for e, c in q.terms.items()}
            return Poly._raw(a.field, a.vars, a.laurent, terms)
        return a._exquo_plain(b)

    def _exquo_plain(self, b: "Poly") -> "Poly":
        r = self
        lb, cb = b.leading()
        q_terms: Dict[Exps, object] = {}
        inv = self.field.one() / cb
        while r.terms:
            lr, cr = r.leading()
            d = tuple(x - y for x, y in zip(lr, lb))
            if any(x < 0 for x in d):
                raise ValueError("not divisible")
            c = cr * inv
            q_terms[d] = q_terms.get(d, self.field.zero()) + c
            mono = Poly._raw(self.field, self.vars, self.laurent, {d: c})
            r = r - mono * b
        return Poly._raw(self.field, self.vars, self.laurent,
                         {e: c for e, c in q_terms.items() if c != 0})

    def divides(self, other: "Poly") -> bool:
        try:
            other.exquo(self)
            return True
        except ValueError:
            return False

    # -- univariate helpers -------------------------------------------
    def main_var(self) -> str | None:
        used = self.used_vars()
        if len(used) > 1:
            raise ValueError(f"{self} is not univariate")
        return used[0] if used else None

    def univariate_coeffs(self, var: str | None = None):
        """Dense coefficient list, constant term first."""
        var = var or self.main_var()
        if var is None:
            return [self.constant_value()] if self.terms else []
        i = self.vars.index(var)
        d = self.degree(var)
        out = [self.field.zero()] * (d + 1)
        for e, c in self.terms.items():
            if e[i] < 0:
                raise ValueError("Laurent exponent in univariate coefficient list")
            out[e[i]] = c
        return out

    @classmethod
    def from_coeffs(cls, field: FieldDesc, var: str, coeffs) -> "Poly":
        return cls(field, (var,), {(i,): c for i, c in enumerate(coeffs)})

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        return self / self.leading_coeff()

    def divmod_univariate(self, other: "Poly"):
        a, b = self._align(other)
        used = set(a.used_vars()) | set(b.used_vars())
        if len(used) > 1:
            raise ValueError(f"{a}, {b} are not univariate in one variable")
        var = used.pop() if used else None
        if b.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if var is None:
            return a / b.constant_value(), Poly.zero(a.field, a.vars, a.laurent)
        i = a.vars.index(var)
        db = b.degree(var)
        lc_inv = a.field.one() / b.coeff(tuple(db if j == i else 0 for j in range(len(a.vars))))
        q = Poly.zero(a.field, a.vars, a.laurent)
        r = a
        while r.terms and r.degree(var) >= db:
            dr = r.degree(var)
            c = r.coeff(tuple(dr if j == i else 0 for j in range(len(a.vars)))) * lc_inv
            mono = Poly._raw(a.field, a.vars, a.laurent,
                             {tuple(dr - db if j == i else 0 for j in range(len(a.vars))): c})
            q = q + mono
            r = r - mono * b
        return q, r

    def __floordiv__(self, other):
        return self.divmod_univariate(other)[0]

    def __mod__(self, other):
        return self.divmod_univariate(other)[1]

    # -- printing -----------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=_grlex, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                (v if x == 1 else f"{v}^{x}") for v, x in zip(self.vars, e) if x)
            neg = False
            if isinstance(c, Fraction) and c < 0:
                neg, c = True, -c
            cs = str(c)
            if mono:
                body = mono if c == 1 else f"{cs}*{mono}"
            else:
                body = cs
            parts.append((neg, body))
        out = ("-" if parts[0][0] else "") + parts[0][1]
        for neg, body in parts[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __repr__(self):
        return f"Poly({self}, {self.field.tag}[{','.join(self.vars)}])"


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd of univariate polynomials (gcd(0, 0) = 0)."""
    a, b = a._align(b)
    while b.terms:
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: Poly, b: Poly):
    """(g, u, v) with u*a + v*b = g, g the monic univariate gcd."""
    a, b = a._align(b)
    one = Poly.const(a.field, 1, a.vars, a.laurent)
    zero = Poly.zero(a.field, a.vars, a.laurent)
    r0, r1, u0, u1, v0, v1 = a, b, one, zero, zero, one
    while r1.terms:
        q, r = r0.divmod_univariate(r1)
        r0, r1 = r1, r
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    if not r0.terms:
        return r0, u0, v0
    lc = r0.leading_coeff()
    return r0 / lc, u0 / lc, v0 / lc
