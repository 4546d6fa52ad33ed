import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from ncalg.exactnum import GF, QQ
from ncalg.quiverpath import (Arrow, PathElement, Quiver, QuiverError, center_bruteforce, center_closed_form,
                              central_cycle, centers_agree, cycle_quiver, detect_shape, format_quiver,
                              growth_class, parse_quiver, path_count, path_counts)


def build(nv, edges):
    vs = tuple(str(i) for i in range(nv))
    return Quiver(vs, tuple(Arrow(f"a{k}", str(s), str(t)) for k, (s, t) in enumerate(edges)))


# Independent oracle: paths as (source, target, arrow tuple), center of degree d
# as the sympy nullspace of [z, g] = 0 for every vertex idempotent and arrow g.
def oracle_paths(q, d):
    out = []
    for v in q.vertices:
        stack = [(v, v, ())]
        while stack:
            s, cur, word = stack.pop()
            if len(word) == d:
                out.append((s, cur, word))
                continue
            for a in q.arrows:
                if a.source == cur:
                    stack.append((s, a.target, word + (a.label,)))
    return sorted(set(out))


def oracle_center_dim(q, d):
    basis = oracle_paths(q, d)
    if not basis:
        return 0
    gens = [("v", v) for v in q.vertices] + [("a", a) for a in q.arrows]
    rows = {}

    def prod(p, g, left):
        s, t, w = p
        if g[0] == "v":
            ok = (g[1] == s) if left else (g[1] == t)
            return p if ok else None
        a = g[1]
        if left:
            return (a.source, t, (a.label,) + w) if a.target == s else None
        return (s, a.target, w + (a.label,)) if a.source == t else None

    for gi, g in enumerate(gens):
        for j, p in enumerate(basis):
            for key, sign in ((prod(p, g, True), -1), (prod(p, g, False), 1)):
                if key is not None:
                    row = rows.setdefault((gi, key), [0] * len(basis))
                    row[j] += sign
    if not rows:
        return len(basis)
    M = sympy.Matrix(list(rows.values()))
    return len(basis) - M.rank()


def test_parse_and_format_round_trip():
    q = cycle_quiver(3)
    assert parse_quiver(format_quiver(q)) == q


def test_parse_reports_line_numbers():
    with pytest.raises(QuiverError, match="line 3"):
        parse_quiver("vertex 1\nvertex 2\narrow a 1 => 2\n")
    with pytest.raises(QuiverError, match="line 2"):
        parse_quiver("vertex 1\narrow a: 1 -> 9\n")
    with pytest.raises(QuiverError, match="duplicate"):
        parse_quiver("vertex 1\nvertex 1\n")


def test_shapes():
    assert str(detect_shape(cycle_quiver(4))["components"][0]) == "CycleCn(4)"
    assert detect_shape(build(1, [(0, 0)]))["components"][0].kind == "LoopC1"
    assert detect_shape(build(2, [(0, 1), (0, 1)]))["components"][0].kind == "Other"
    two = build(3, [(0, 1), (1, 0)])
    sh = detect_shape(two)
    assert not sh["connected"]
    assert sorted(s.kind for s in sh["components"]) == ["CycleCn", "NoArrowComponent"]


@pytest.mark.parametrize("n", range(2, 7))
def test_cycle_center_closed_form_and_bruteforce(n):
    q = cycle_quiver(n)
    assert str(center_closed_form(q)) == "k[w]"
    D = 3 * n
    dims = center_bruteforce(q, D).dimensions(D)
    assert dims == [1 if d % n == 0 else 0 for d in range(D + 1)]
    assert centers_agree(q, D)


def test_kronecker_center_is_k():
    q = build(2, [(0, 1), (0, 1)])
    assert str(center_closed_form(q)) == "k"
    assert center_bruteforce(q, 6).dimensions(6) == [1, 0, 0, 0, 0, 0, 0]


def test_loop_center_and_disconnected_product():
    loop = build(1, [(0, 0)])
    assert str(center_closed_form(loop)) == "k[x]"
    assert centers_agree(loop, 5)
    q = build(3, [(0, 1), (1, 0)])
    assert centers_agree(q, 6)
    assert center_bruteforce(q, 4).dimensions(4) == [2, 0, 1, 0, 1]


def test_central_cycle_is_central():
    q = cycle_quiver(3)
    w = central_cycle(q)
    for a in q.arrows:
        g = PathElement.arrow(q, a.label)
        assert w * g == g * w
    with pytest.raises(QuiverError):
        central_cycle(build(2, [(0, 1), (0, 1)]))


def test_path_algebra_multiplication_is_left_to_right():
    q = build(3, [(0, 1), (1, 2)])
    a0, a1 = PathElement.arrow(q, "a0"), PathElement.arrow(q, "a1")
    assert not (a0 * a1).is_zero()
    assert (a1 * a0).is_zero()
    one = PathElement.one(q)
    assert one * a0 == a0 == a0 * one


@pytest.mark.parametrize("n", [2, 3, 4])
def test_bruteforce_matches_oracle_on_cycles(n):
    q = cycle_quiver(n)
    D = 2 * n
    assert center_bruteforce(q, D).dimensions(D) == [oracle_center_dim(q, d) for d in range(D + 1)]


def test_center_over_gf2_agrees():
    q = cycle_quiver(3)
    assert centers_agree(q, 6, GF(2))


@st.composite
def connected_quivers(draw):
    nv = draw(st.integers(2, 5))
    edges = []
    for v in range(1, nv):   # spanning tree first, then extras
        u = draw(st.integers(0, v - 1))
        edges.append((u, v) if draw(st.booleans()) else (v, u))
    for _ in range(draw(st.integers(0, 6 - len(edges)))):
        edges.append((draw(st.integers(0, nv - 1)), draw(st.integers(0, nv - 1))))
    return build(nv, edges)


@settings(max_examples=100, deadline=None)
@given(connected_quivers())
def test_random_connected_quivers_closed_form_matches_oracle(q):
    if len(q.arrows) > 6:
        return
    D = 1
    while D < 4 and path_count(q, D + 1) <= 40:
        D += 1
    bf = center_bruteforce(q, D).dimensions(D)
    assert bf == [oracle_center_dim(q, d) for d in range(D + 1)]
    assert bf == center_closed_form(q).dimensions(D)
    shape = detect_shape(q)["components"][0]
    if shape.kind != "CycleCn":
        assert str(center_closed_form(q)) == "k"


@settings(max_examples=100, deadline=None)
@given(connected_quivers(), st.integers(0, 8))
def test_path_counts_match_adjacency_powers(q, d):
    A = sympy.zeros(len(q.vertices))
    idx = {v: i for i, v in enumerate(q.vertices)}
    for a in q.arrows:
        A[idx[a.source], idx[a.target]] += 1
    expected = sum(A ** d) if d else len(q.vertices)
    assert path_count(q, d) == expected


@pytest.mark.parametrize("n", range(1, 9))
def test_cycle_path_counts_constant(n):
    assert path_counts(cycle_quiver(n), 20) == [n] * 21


@settings(max_examples=100, deadline=None)
@given(connected_quivers())
def test_growth_class_against_spectral_oracle(q):
    A = sympy.zeros(len(q.vertices))
    idx = {v: i for i, v in enumerate(q.vertices)}
    for a in q.arrows:
        A[idx[a.source], idx[a.target]] += 1
    g = growth_class(q)
    nilpotent = (A ** len(q.vertices)).is_zero_matrix
    assert (g.kind == "FiniteDimensional") == nilpotent
    if not nilpotent:
        # exponential growth iff the Perron root of the adjacency matrix exceeds 1
        lam = sympy.Symbol("lam")
        exponential = any(r > 1 for r in sympy.Poly(A.charpoly(lam).as_expr(), lam).real_roots())
        assert (g.kind == "Exponential") == exponential


def test_growth_examples():
    assert growth_class(build(1, [(0, 0), (0, 0)])).kind == "Exponential"
    assert growth_class(build(3, [(0, 1), (1, 2)])).kind == "FiniteDimensional"
    g = growth_class(cycle_quiver(3))
    assert g.kind == "Polynomial" and g.degree == 1
    two_cycles_chained = build(2, [(0, 0), (0, 1), (1, 1)])
    g2 = growth_class(two_cycles_chained)
    assert g2.kind == "Polynomial" and g2.degree == 2


def test_random_quiver_batch_is_fast_and_k():
    rng = random.Random(7)
    done = 0
    while done < 10:
        nv = rng.randint(2, 5)
        edges = [(rng.randrange(nv), rng.randrange(nv)) for _ in range(rng.randint(1, 6))]
        q = build(nv, edges)
        if not q.is_connected() or detect_shape(q)["components"][0].kind == "CycleCn":
            continue
        assert str(center_closed_form(q)) == "k"
        assert centers_agree(q, 5)
        done += 1
