"""Finite quivers, path algebras and their centers.

Paths compose left to right: for arrows ``a: i -> j`` and ``b: j -> k`` the
product ``a*b`` is the path ``ab`` from ``i`` to ``k``; a product of paths
whose endpoints do not match is zero.  The trivial path at vertex ``v`` is
the idempotent ``e_v`` and the sum of all of them is the identity.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field as dfield
from fractions import Fraction
from math import lcm
from typing import Dict, Iterable, List, Sequence, Tuple

from .exactnum import QQ, FieldDesc
from .exactnum.linalg import SparseSpan, echelon


class QuiverError(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    label: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    vertices: Tuple[str, ...]
    arrows: Tuple[Arrow, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(
            a if isinstance(a, Arrow) else Arrow(*a) for a in self.arrows))
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex label")
        labels = [a.label for a in self.arrows]
        if len(set(labels)) != len(labels) or set(labels) & set(self.vertices):
            raise QuiverError("duplicate arrow label")
        for a in self.arrows:
            if a.source not in self.vertices or a.target not in self.vertices:
                raise QuiverError(f"arrow {a.label} has an undeclared endpoint")

    def arrow(self, label: str) -> Arrow:
        for a in self.arrows:
            if a.label == label:
                return a
        raise KeyError(label)

    def out_arrows(self, v):
        return [a for a in self.arrows if a.source == v]

    def in_arrows(self, v):
        return [a for a in self.arrows if a.target == v]

    def components(self) -> List["Quiver"]:
        """Weakly connected components, in vertex declaration order."""
        parent = {v: v for v in self.vertices}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v
        for a in self.arrows:
            parent[find(a.source)] = find(a.target)
        groups: Dict[str, List[str]] = {}
        for v in self.vertices:
            groups.setdefault(find(v), []).append(v)
        comps = []
        for vs in groups.values():
            s = set(vs)
            comps.append(Quiver(tuple(vs), tuple(a for a in self.arrows if a.source in s)))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1


def cycle_quiver(n: int) -> Quiver:
    """C_n: vertices 0..n-1 and arrows a_i: i -> i+1 (mod n)."""
    vs = tuple(str(i) for i in range(n))
    return Quiver(vs, tuple(Arrow(f"a{i}", str(i), str((i + 1) % n)) for i in range(n)))


# -- text format ----------------------------------------------------------

_VERTEX = re.compile(r"^vertex\s+(\S+)$")
_ARROW = re.compile(r"^arrow\s+([^\s:]+)\s*:\s*(\S+)\s*->\s*(\S+)$")


def parse_quiver(text: str) -> Quiver:
    """Parse ``vertex v`` / ``arrow a: v -> w`` lines; ``#`` starts a comment."""
    vertices: List[str] = []
    arrows: List[Arrow] = []
    labels = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _VERTEX.match(line)
        if m:
            v = m.group(1)
            if v in labels:
                raise QuiverError(f"line {lineno}: duplicate label {v!r}")
            labels.add(v)
            vertices.append(v)
            continue
        m = _ARROW.match(line)
        if m:
            a, s, t = m.groups()
            if a in labels:
                raise QuiverError(f"line {lineno}: duplicate label {a!r}")
            for end in (s, t):
                if end not in vertices:
                    raise QuiverError(f"line {lineno}: unknown vertex {end!r}")
            labels.add(a)
            arrows.append(Arrow(a, s, t))
            continue
        raise QuiverError(f"line {lineno}: cannot parse {raw.strip()!r}")
    return Quiver(tuple(vertices), tuple(arrows))


def format_quiver(q: Quiver) -> str:
    lines = [f"vertex {v}" for v in q.vertices]
    lines += [f"arrow {a.label}: {a.source} -> {a.target}" for a in q.arrows]
    return "\n".join(lines) + "\n"


# -- shapes and growth ----------------------------------------------------

@dataclass(frozen=True)
class Shape:
    kind: str               # NoArrowComponent | LoopC1 | CycleCn | Other
    n: int = 0
    vertices: Tuple[str, ...] = ()

    def __str__(self):
        return f"CycleCn({self.n})" if self.kind == "CycleCn" else self.kind


def _component_shape(c: Quiver) -> Shape:
    if not c.arrows:
        return Shape("NoArrowComponent", 0, c.vertices)
    if len(c.vertices) == 1:
        if len(c.arrows) == 1:
            return Shape("LoopC1", 1, c.vertices)
        return Shape("Other", 0, c.vertices)
    if len(c.arrows) == len(c.vertices) and all(
            len(c.out_arrows(v)) == 1 and len(c.in_arrows(v)) == 1 for v in c.vertices):
        # in/out degree one on a connected quiver is a single oriented cycle
        return Shape("CycleCn", len(c.vertices), c.vertices)
    return Shape("Other", 0, c.vertices)


def detect_shape(q: Quiver):
    """Shape of every connected component plus a connectivity flag."""
    shapes = [_component_shape(c) for c in q.components()]
    return {"components": shapes, "connected": len(shapes) <= 1}


def adjacency(q: Quiver):
    idx = {v: i for i, v in enumerate(q.vertices)}
    m = [[0] * len(q.vertices) for _ in q.vertices]
    for a in q.arrows:
        m[idx[a.source]][idx[a.target]] += 1
    return m


def path_counts(q: Quiver, max_degree: int) -> List[int]:
    """Number of paths of each length 0..max_degree."""
    n = len(q.vertices)
    adj = adjacency(q)
    row = [1] * n   # paths of length d ending at each vertex
    out = [n]
    for _ in range(max_degree):
        row = [sum(row[i] * adj[i][j] for i in range(n)) for j in range(n)]
        out.append(sum(row))
    return out


def path_count(q: Quiver, d: int) -> int:
    if d < 0:
        raise ValueError("degree must be nonnegative")
    return path_counts(q, d)[d]


def _sccs(q: Quiver) -> List[List[str]]:
    """Strongly connected components (Tarjan), deterministic order."""
    index: Dict[str, int] = {}
    low: Dict[str, int] = {}
    stack: List[str] = []
    on = set()
    out: List[List[str]] = []
    counter = [0]

    def visit(v):
        index[v] = low[v] = counter[0]
        counter[0] += 1
        stack.append(v)
        on.add(v)
        for a in q.out_arrows(v):
            w = a.target
            if w not in index:
                visit(w)
                low[v] = min(low[v], low[w])
            elif w in on:
                low[v] = min(low[v], index[w])
        if low[v] == index[v]:
            comp = []
            while True:
                w = stack.pop()
                on.discard(w)
                comp.append(w)
                if w == v:
                    break
            out.append(comp)
    for v in q.vertices:
        if v not in index:
            visit(v)
    return out


@dataclass(frozen=True)
class Growth:
    kind: str                  # FiniteDimensional | Polynomial | Exponential
    degree: int | None = None  # GK dimension for Polynomial
    empirical: bool = False

    def __str__(self):
        if self.kind == "Polynomial":
            return f"Polynomial(g={self.degree}{', empirical' if self.empirical else ''})"
        return self.kind


def growth_class(q: Quiver, probe_depth: int | None = None) -> Growth:
    """Growth of dim of paths of length <= d.

    Finite-dimensionality and exponential growth are decided exactly from
    the strongly connected components.  In the remaining case every cyclic
    component is a single oriented cycle and the degree is read off the
    cumulative path counts: lag-L differences (L = lcm of cycle lengths)
    lower the degree of the quasi-polynomial count by one, so the degree is
    one less than the number of differences needed to reach zero.
    """
    nv = len(q.vertices)
    if probe_depth is None:
        probe_depth = 2 * nv
    if probe_depth < 2 * nv:
        raise ValueError("probe_depth must be at least 2*|vertices|")
    cyc_lengths = []
    for comp in _sccs(q):
        s = set(comp)
        inner = [a for a in q.arrows if a.source in s and a.target in s]
        if not inner:
            continue
        if len(inner) > len(comp):
            return Growth("Exponential")
        cyc_lengths.append(len(comp))
    if not cyc_lengths:
        return Growth("FiniteDimensional")
    period = lcm(*cyc_lengths)
    depth = max(probe_depth, (len(cyc_lengths) + 3) * period + nv)
    counts = path_counts(q, depth)
    seq = []
    total = 0
    for c in counts:
        total += c
        seq.append(total)
    window = 2 * period
    k = 0
    while any(seq[-window:]):
        seq = [seq[i] - seq[i - period] for i in range(period, len(seq))]
        k += 1
        if len(seq) < window:
            break
    return Growth("Polynomial", max(k - 1, 0), True)


# -- path algebra ---------------------------------------------------------

@dataclass(frozen=True, order=True)
class Path:
    """A path: ``arrows`` empty means the trivial path ``e_start``."""

    start: str
    end: str
    arrows: Tuple[str, ...] = ()

    @property
    def degree(self) -> int:
        return len(self.arrows)

    def __str__(self):
        return f"e_{self.start}" if not self.arrows else "*".join(self.arrows)


def paths_of_degree(q: Quiver, d: int) -> List[Path]:
    cur = [Path(v, v) for v in q.vertices]
    for _ in range(d):
        nxt = []
        for p in cur:
            for a in q.out_arrows(p.end):
                nxt.append(Path(p.start, a.target, p.arrows + (a.label,)))
        cur = nxt
    return sorted(cur, key=_path_key)


def _path_key(p: Path):
    return (p.degree, p.arrows, p.start)


class PathElement:
    """Finite linear combination of paths in a quiver's path algebra."""

    __slots__ = ("quiver", "field", "terms")

    def __init__(self, quiver: Quiver, terms: Dict[Path, object] | None = None, field: FieldDesc = QQ):
        self.quiver = quiver
        self.field = field
        self.terms = {p: field(c) for p, c in (terms or {}).items() if field(c) != 0}
        for p in self.terms:
            self._check(p)

    def _check(self, p: Path):
        q = self.quiver
        cur = p.start
        for lab in p.arrows:
            a = q.arrow(lab)
            if a.source != cur:
                raise QuiverError(f"path {p} is not composable")
            cur = a.target
        if cur != p.end:
            raise QuiverError(f"path {p} has wrong endpoint")

    @classmethod
    def _raw(cls, quiver, field, terms):
        e = object.__new__(cls)
        e.quiver, e.field, e.terms = quiver, field, terms
        return e

    @classmethod
    def vertex(cls, q: Quiver, v: str, field: FieldDesc = QQ):
        return cls(q, {Path(v, v): 1}, field)

    @classmethod
    def arrow(cls, q: Quiver, label: str, field: FieldDesc = QQ):
        a = q.arrow(label)
        return cls(q, {Path(a.source, a.target, (label,)): 1}, field)

    @classmethod
    def one(cls, q: Quiver, field: FieldDesc = QQ):
        return cls(q, {Path(v, v): 1 for v in q.vertices}, field)

    @classmethod
    def word(cls, q: Quiver, labels: Sequence[str], field: FieldDesc = QQ):
        out = cls.one(q, field)
        for lab in labels:
            out = out * cls.arrow(q, lab, field)
        return out

    def _same(self, other):
        if not isinstance(other, PathElement):
            raise TypeError("expected a PathElement")
        if other.quiver != self.quiver:
            raise QuiverError("path elements from different quivers")

    def __add__(self, other):
        self._same(other)
        t = dict(self.terms)
        for p, c in other.terms.items():
            s = t.get(p, self.field.zero()) + c
            if s == 0:
                t.pop(p, None)
            else:
                t[p] = s
        return PathElement._raw(self.quiver, self.field, t)

    def __neg__(self):
        return PathElement._raw(self.quiver, self.field, {p: -c for p, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) or not isinstance(other, PathElement):
            c = self.field(other)
            return PathElement._raw(self.quiver, self.field,
                                    {p: v * c for p, v in self.terms.items() if v * c != 0})
        return path_multiply(self, other)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, n: int):
        out = PathElement.one(self.quiver, self.field)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, PathElement):
            return NotImplemented
        return self.quiver == other.quiver and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def degrees(self):
        return sorted({p.degree for p in self.terms})

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for p in sorted(self.terms, key=_path_key):
            c = self.terms[p]
            parts.append(str(p) if c == 1 else f"{c}*{p}")
        return " + ".join(parts)

    __repr__ = __str__


def path_multiply(a: PathElement, b: PathElement) -> PathElement:
    """Bilinear extension of concatenation; mismatched endpoints give 0."""
    a._same(b)
    out: Dict[Path, object] = {}
    for p, c in a.terms.items():
        for r, d in b.terms.items():
            if p.end != r.start:
                continue
            pr = Path(p.start, r.end, p.arrows + r.arrows)
            s = out.get(pr, a.field.zero()) + c * d
            if s == 0:
                out.pop(pr, None)
            else:
                out[pr] = s
    return PathElement._raw(a.quiver, a.field, out)


def commutes_with_generators(z: PathElement) -> bool:
    q = z.quiver
    gens = [PathElement.vertex(q, v, z.field) for v in q.vertices]
    gens += [PathElement.arrow(q, a.label, z.field) for a in q.arrows]
    return all(z * g == g * z for g in gens)


def central_cycle(q: Quiver, field: FieldDesc = QQ) -> PathElement:
    """Sum of the length-n cycles based at each vertex of C_n (n >= 2)."""
    shapes = detect_shape(q)
    comps = shapes["components"]
    if len(comps) != 1 or comps[0].kind != "CycleCn":
        raise QuiverError("central_cycle needs a cycle quiver C_n with n >= 2")
    n = comps[0].n
    w = PathElement(q, {}, field)
    for v in q.vertices:
        labels = []
        cur = v
        for _ in range(n):
            a = q.out_arrows(cur)[0]
            labels.append(a.label)
            cur = a.target
        w = w + PathElement(q, {Path(v, v, tuple(labels)): 1}, field)
    if not commutes_with_generators(w):
        raise AssertionError("cycle sum failed the centrality check")
    return w


# -- centers --------------------------------------------------------------

@dataclass
class CenterBasis:
    by_degree: Dict[int, List[PathElement]] = dfield(default_factory=dict)

    def dimensions(self, max_degree: int) -> List[int]:
        return [len(self.by_degree.get(d, [])) for d in range(max_degree + 1)]


def _center_in_degree(q: Quiver, d: int, field: FieldDesc) -> List[PathElement]:
    """Solve [z, e_v] = 0 and [z, a] = 0 on the span of degree-d paths.

    Every equation compares coefficients of one path in the commutator, so
    the system is assembled sparsely; the solution space is then read off
    an echelon form of the constraints.
    """
    unknowns = paths_of_degree(q, d)
    col = {p: i for i, p in enumerate(unknowns)}
    rows: Dict[Tuple, Dict[int, object]] = {}

    def bump(key, idx, c):
        r = rows.setdefault(key, {})
        r[idx] = r.get(idx, field.zero()) + field(c)

    for i, p in enumerate(unknowns):
        for v in q.vertices:
            # z e_v - e_v z, coefficient on p
            if p.end == v:
                bump(("e", v, p), i, 1)
            if p.start == v:
                bump(("e", v, p), i, -1)
        for a in q.arrows:
            if p.end == a.source:
                pa = Path(p.start, a.target, p.arrows + (a.label,))
                bump(("a", a.label, pa), i, 1)
            if a.target == p.start:
                ap = Path(a.source, p.end, (a.label,) + p.arrows)
                bump(("a", a.label, ap), i, -1)
    span = SparseSpan(field)
    for r in rows.values():
        r = {k: c for k, c in r.items() if c != 0}
        if r:
            span.add(r, {})
    # back-substitute so every pivot row mentions only free columns
    free = [i for i in range(len(unknowns)) if i not in span.rows]
    reduced: Dict[int, Dict[int, object]] = {}
    for pc in sorted(span.rows, reverse=True):
        vec = dict(span.rows[pc][0])
        for k in sorted(k for k in vec if k != pc and k in reduced):
            f = vec.pop(k)
            for kk, cc in reduced[k].items():
                if kk == k:
                    continue
                s = vec.get(kk, field.zero()) - f * cc
                if s == 0:
                    vec.pop(kk, None)
                else:
                    vec[kk] = s
        reduced[pc] = vec
    vectors = []
    for fcol in free:
        v = [field.zero()] * len(unknowns)
        v[fcol] = field.one()
        for pc, vec in reduced.items():
            c = vec.get(fcol)
            if c is not None:
                v[pc] = -c
        vectors.append(v)
    basis = echelon(vectors, field)
    return [PathElement(q, {unknowns[i]: c for i, c in enumerate(v) if c != 0}, field) for v in basis]


def center_bruteforce(q: Quiver, max_degree: int, field: FieldDesc = QQ) -> CenterBasis:
    """Echelonized basis of Z(kQ) in each degree 0..max_degree."""
    if max_degree < 0:
        raise ValueError("degree bound must be nonnegative")
    out = CenterBasis()
    for d in range(max_degree + 1):
        out.by_degree[d] = _center_in_degree(q, d, field)
    return out


@dataclass(frozen=True)
class ClosedFormCenter:
    """Per-component description; the center is their direct product."""

    parts: Tuple[Tuple[str, Shape], ...]   # ("k" | "k[x]" | "k[w]", shape)

    def __str__(self):
        return " x ".join(p for p, _ in self.parts)

    def dimensions(self, max_degree: int) -> List[int]:
        dims = [0] * (max_degree + 1)
        for kind, shape in self.parts:
            for d in range(max_degree + 1):
                if d == 0 or (kind == "k[x]") or (kind == "k[w]" and d % shape.n == 0):
                    dims[d] += 1
        return dims

    def basis(self, q: Quiver, max_degree: int, field: FieldDesc = QQ) -> Dict[int, List[PathElement]]:
        """Predicted spanning set: 1_C, and powers of x or w, per component."""
        out: Dict[int, List[PathElement]] = {d: [] for d in range(max_degree + 1)}
        for kind, shape in self.parts:
            unit = PathElement(q, {Path(v, v): 1 for v in shape.vertices}, field)
            out[0].append(unit)
            if kind == "k":
                continue
            if kind == "k[x]":
                gen = PathElement.arrow(q, next(a.label for a in q.arrows if a.source == shape.vertices[0]), field)
                step = 1
            else:
                sub = Quiver(shape.vertices, tuple(a for a in q.arrows if a.source in shape.vertices))
                w = central_cycle(sub, field)
                gen = PathElement(q, w.terms, field)
                step = shape.n
            power = unit
            for d in range(step, max_degree + 1, step):
                power = power * gen
                out[d].append(power)
        return out


def center_closed_form(q: Quiver) -> ClosedFormCenter:
    parts = []
    for shape in detect_shape(q)["components"]:
        kind = {"NoArrowComponent": "k", "LoopC1": "k[x]", "CycleCn": "k[w]"}.get(shape.kind, "k")
        parts.append((kind, shape))
    return ClosedFormCenter(tuple(parts))


def centers_agree(q: Quiver, max_degree: int, field: FieldDesc = QQ) -> bool:
    """Closed form and brute force span the same space in every degree."""
    cf = center_closed_form(q)
    bf = center_bruteforce(q, max_degree, field)
    predicted = cf.basis(q, max_degree, field)
    for d in range(max_degree + 1):
        paths = paths_of_degree(q, d)
        def vec(e):
            return [e.terms.get(p, field.zero()) for p in paths]
        a = echelon([vec(e) for e in predicted[d]], field)
        b = echelon([vec(e) for e in bf.by_degree[d]], field)
        if a != b:
            return False
    return True
