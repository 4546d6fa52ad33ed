"""Bounded membership in the subalgebra generated by A and extra elements."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from ..exactnum import Poly
from ..exactnum.linalg import SparseSpan
from .algebra import AlgebraError, AlgElement

Word = Tuple[str, ...]


@dataclass
class Expression:
    """A k-linear combination of words in named symbols."""

    terms: Dict[Word, object]
    symbols: Dict[str, AlgElement]

    def evaluate(self) -> AlgElement:
        out = None
        for word, c in sorted(self.terms.items()):
            val = None
            for s in word:
                val = self.symbols[s] if val is None else val * self.symbols[s]
            val = val * c
            out = val if out is None else out + val
        if out is None:
            any_sym = next(iter(self.symbols.values()))
            return any_sym.algebra.zero(any_sym.ext)
        return out

    def length(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for word, c in sorted(self.terms.items()):
            body = "*".join(word)
            parts.append(body if c == 1 else f"({c})*{body}")
        return " + ".join(parts)

    def to_json(self):
        return [{"coeff": str(c), "word": list(w)} for w, c in sorted(self.terms.items())]


@dataclass
class Yes:
    expression: Expression
    length: int

    found = True


@dataclass
class NotFoundUpTo:
    bound: int
    stabilized: bool
    span_dim: int

    found = False


def subalgebra_membership(target: AlgElement, generators: Sequence[AlgElement], bound: int,
                          names: Sequence[str] | None = None, include_basis: bool = True):
    """Search for ``target`` in the k-span of words of length <= bound in the
    A-basis and ``generators`` (the A-basis is left out when
    ``include_basis`` is false).

    A ``Yes`` carries an explicit expression (its ``evaluate`` reproduces the
    target).  ``NotFoundUpTo`` records whether the span stopped growing, in
    which case the target provably lies outside the generated subalgebra.
    """
    if bound < 1:
        raise AlgebraError("degree bound must be at least 1")
    A = target.algebra
    names = list(names) if names is not None else [f"g{i + 1}" for i in range(len(generators))]
    if len(names) != len(generators):
        raise AlgebraError("one name per generator")
    if not include_basis and not generators:
        raise AlgebraError("no generators to search with")
    symbols: Dict[str, AlgElement] = {}
    if include_basis:
        for lab, b in zip(A.labels, A.basis()):
            symbols[lab] = b
    for nm, g in zip(names, generators):
        if nm in symbols:
            raise AlgebraError(f"generator name {nm!r} clashes with a basis label")
        if g.algebra != A:
            raise AlgebraError("generator from a different algebra")
        symbols[nm] = g
    order = list(symbols)
    span = SparseSpan(A.field)
    tvec = target.flatten()
    frontier: List[Tuple[AlgElement, Dict[Word, object]]] = []
    for s in order:
        vec = symbols[s].flatten()
        tag = {(s,): A.field.one()}
        if span.add(vec, tag):
            frontier.append(span.rows[span.last_pivot])
    stabilized = False
    level = 1
    while True:
        expr = span.express(tvec)
        if expr is not None:
            return Yes(Expression({w: c for w, c in expr.items() if c != 0}, symbols), level)
        if level >= bound:
            break
        new = []
        for vec, tag in frontier:
            elem = _unflatten(A, vec, target.ext)
            for s in order:
                prod = elem * symbols[s]
                ptag = {w + (s,): c for w, c in tag.items()}
                pvec = prod.flatten()
                if span.add(pvec, ptag):
                    new.append(span.rows[span.last_pivot])
        level += 1
        if not new:
            stabilized = True
            break
        frontier = new
    return NotFoundUpTo(bound, stabilized, len(span))


def _unflatten(A, vec, ext) -> AlgElement:
    vars_ = tuple(ext)
    per = [dict() for _ in range(A.dim)]
    extra = []
    for (i, mono), c in vec.items():
        for v, _ in mono:
            if v not in vars_ and v not in extra:
                extra.append(v)
        per[i][mono] = c
    vars_ = vars_ + tuple(extra)
    coords = []
    for i in range(A.dim):
        terms = {}
        for mono, c in per[i].items():
            e = [0] * len(vars_)
            for v, x in mono:
                e[vars_.index(v)] = x
            terms[tuple(e)] = c
        coords.append(Poly(A.field, vars_, terms))
    return AlgElement(A, coords, vars_)
