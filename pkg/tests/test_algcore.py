import itertools
import random

import pytest
import sympy
from hypothesis import HealthCheck, given, settings, strategies as st

from algebra_zoo import SEMISIMPLE, all_vectors, algebras, mul, pieces, random_invertible, rebase
from ncalg.algcore import (AlgebraError, NotFoundUpTo, StructAlgebra, Yes, center_algebra, center_basis,
                           center_vectors, central_idempotents, certify_radical, ci_polynomial_ansatz,
                           direct_sum, field_algebra, is_central, is_idempotent, is_unit,
                           jacobson_radical_vectors, matrix_algebra, monomial_quotient, poly_extension,
                           quotient_algebra, regular_matrix, subalgebra, subalgebra_membership,
                           trace_form, upper_triangular)
from ncalg.exactnum import GF, QQ
from ncalg.exactnum.linalg import rank

SMALL_FIELDS = [GF(2), GF(3)]
slow = settings(max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow])


def span_set(A, vecs):
    """All F_p-combinations of vecs (finite fields only)."""
    F = A.field
    out = set()
    for coeffs in itertools.product(F.elements(), repeat=len(vecs)):
        v = [F.zero()] * A.dim
        for c, w in zip(coeffs, vecs):
            v = [x + c * y for x, y in zip(v, w)]
        out.add(tuple(int(x) for x in v))
    return out


def brute_center(A):
    basis = [A.basis_vec(i) for i in range(A.dim)]
    return {tuple(int(x) for x in z) for z in all_vectors(A)
            if all(mul(A, z, b) == mul(A, b, z) for b in basis)}


def brute_central_idempotents(A):
    basis = [A.basis_vec(i) for i in range(A.dim)]
    return {tuple(int(x) for x in e) for e in all_vectors(A)
            if mul(A, e, e) == e and all(mul(A, e, b) == mul(A, b, e) for b in basis)}


def brute_radical(A):
    """a in J iff x*a is nilpotent for every x."""
    elems = all_vectors(A)
    zero = A.zero_vec()

    def nilpotent(v):
        p = v
        for _ in range(A.dim + 1):
            if p == zero:
                return True
            p = mul(A, p, v)
        return p == zero

    return {tuple(int(x) for x in a) for a in elems if all(nilpotent(mul(A, x, a)) for x in elems)}


# -- construction ------------------------------------------------------------

def test_matrix_units_multiply():
    M = matrix_algebra(2)
    e12, e21, e11 = (M.basis_element(s) for s in ("e12", "e21", "e11"))
    assert e12 * e21 == e11
    assert (e21 * e21).is_zero()
    assert M.one() == M.parse_element("e11 + e22")


def test_bad_tables_are_rejected():
    ok = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (1, 1): {1: 1}}
    with pytest.raises(AlgebraError, match="unit"):
        StructAlgebra(QQ, ["1", "b"], ok, [1, 1])
    # a*a = b, b*a = a: (a*a)*a = a but a*(a*a) = a*b = 0
    bad = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (0, 2): {2: 1}, (2, 0): {2: 1},
           (1, 1): {2: 1}, (2, 1): {1: 1}}
    with pytest.raises(AlgebraError, match="associativ"):
        StructAlgebra(QQ, ["1", "a", "b"], bad, [1, 0, 0])


def test_monomial_quotient_basis_and_infinite_error():
    A = monomial_quotient(["x", "y"], ["x^2", "x*y", "y^2"])
    assert A.labels == ("1", "x", "y")
    with pytest.raises(AlgebraError, match="infinite-dimensional"):
        monomial_quotient(["x", "y"], ["x^2"])


def test_direct_sum_relabels_only_clashes():
    A = direct_sum(field_algebra(QQ), field_algebra(QQ), matrix_algebra(2))
    assert A.labels[:2] == ("u1", "u2")
    assert A.dim == 6
    B = direct_sum(matrix_algebra(2), monomial_quotient(["x"], ["x^2"]))
    assert "x" in B.labels


def test_parse_element_and_printing():
    A = monomial_quotient(["x", "y"], ["x^2", "x*y", "y^2"])
    E = poly_extension(A, 1)
    a = E.element("y + t*x")
    assert str(a) == "t*x + y"
    assert (a * a).is_zero()
    assert str(E.element("3")) == "3"


def test_subalgebra_and_quotient():
    T = upper_triangular(2)
    S, emb = subalgebra(T, [T.identity, T.parse_element("e12").to_vec()])
    assert S.dim == 2
    M = matrix_algebra(2)
    with pytest.raises(AlgebraError, match="not closed"):
        subalgebra(M, [M.parse_element("e12").to_vec(), M.parse_element("e21").to_vec()])
    Q = quotient_algebra(T, [T.parse_element("e12").to_vec()])
    assert Q.algebra.dim == 2 and Q.algebra.is_commutative()


# -- centers ----------------------------------------------------------------

def test_centers_known():
    assert [str(z) for z in center_basis(matrix_algebra(2))] == ["e11 + e22"]
    assert len(center_basis(upper_triangular(3))) == 1
    assert len(center_basis(direct_sum(field_algebra(), matrix_algebra(2)))) == 2


@settings(max_examples=100, deadline=None)
@given(algebras(fields=SMALL_FIELDS, max_dim=5))
def test_center_matches_brute_force(A):
    assert span_set(A, center_vectors(A)) == brute_center(A)


# -- radical ----------------------------------------------------------------

def test_radicals_known():
    T = upper_triangular(2)
    assert [T.vec_element(v).__str__() for v in jacobson_radical_vectors(T)] == ["e12"]
    A = monomial_quotient(["x", "y"], ["x^2", "x*y", "y^2"])
    assert len(jacobson_radical_vectors(A)) == 2
    assert jacobson_radical_vectors(matrix_algebra(2)) == []


@pytest.mark.parametrize("p", [2, 3])
def test_char_p_radical_where_trace_form_fails(p):
    # in char p the trace form of M_p(F_p) is degenerate; the radical is still 0
    M = matrix_algebra(p, GF(p))
    assert rank(trace_form(M), GF(p)) < M.dim
    assert jacobson_radical_vectors(M) == []
    A = monomial_quotient(["x"], ["x^4"], GF(p))
    assert len(jacobson_radical_vectors(A)) == 3


@settings(max_examples=100, deadline=None)
@given(algebras(fields=SMALL_FIELDS, max_dim=5))
def test_radical_matches_brute_force(A):
    assert span_set(A, jacobson_radical_vectors(A)) == brute_radical(A)


@slow
@given(algebras(max_dim=8))
def test_radical_certificate(A):
    J = jacobson_radical_vectors(A)
    cert = certify_radical(A, J)
    assert cert.ok
    assert cert.quotient_semisimple
    assert cert.nilpotency_index <= A.dim + 1


# -- central idempotents -----------------------------------------------------

def test_central_idempotent_counts():
    A = direct_sum(field_algebra(), field_algebra(), matrix_algebra(2))
    ci = central_idempotents(A)
    assert len(ci) == 8
    assert all(is_idempotent(e) and is_central(e) for e in ci)
    assert [str(e) for e in central_idempotents(monomial_quotient(["x", "y"], ["x^2", "x*y", "y^2"]))] == ["0", "1"]
    assert len(central_idempotents(matrix_algebra(2, GF(5)))) == 2


def test_idempotent_cap():
    big = direct_sum(*[field_algebra() for _ in range(4)])
    with pytest.raises(AlgebraError):
        central_idempotents(big, cap=8)


def test_split_needs_irreducible_factors():
    # QQ[x]/(x^2 + 1) is a field: no nontrivial idempotents; GF(5)[x]/(x^2 + 1) splits
    from ncalg.algcore import make_structure_algebra
    for F, expected in ((QQ, 2), (GF(5), 4), (GF(3), 2)):
        A = make_structure_algebra(F, ["1", "i"], {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1},
                                                   (1, 1): {0: -1}}, [1, 0])
        assert len(central_idempotents(A)) == expected


@settings(max_examples=100, deadline=None)
@given(algebras(fields=SMALL_FIELDS, max_dim=5), st.integers(0, 5))
def test_central_idempotents_match_brute_force(A, seed):
    got = {tuple(int(x) for x in e.to_vec()) for e in central_idempotents(A, seed=seed)}
    assert got == brute_central_idempotents(A)


@slow
@given(algebras(max_dim=8))
def test_ci_of_algebra_equals_ci_of_center(A):
    Z, emb = center_algebra(A)
    via_center = set()
    for e in central_idempotents(Z):
        v = e.to_vec()
        img = [sum((c * row[k] for c, row in zip(v, emb)), A.field.zero()) for k in range(A.dim)]
        via_center.add(tuple(img))
    direct = {tuple(e.to_vec()) for e in central_idempotents(A)}
    assert via_center == direct


@slow
@given(algebras(max_dim=8))
def test_ci_polynomial_ansatz_only_constants(A):
    res = ci_polynomial_ansatz(A)
    assert res.only_constant
    assert {tuple(e.to_vec()) for e in res.constant_solutions} == {tuple(e.to_vec()) for e in central_idempotents(A)}


@pytest.mark.parametrize("name", ["k", "x2", "T2", "x3"])
def test_ci_of_polynomial_extension_brute_force_gf2(name):
    """Enumerate e0 + e1 t + e2 t^2 over GF(2) and keep central idempotents of A[t]."""
    A = pieces(GF(2))[name]()
    vecs = all_vectors(A)
    basis = [A.basis_vec(i) for i in range(A.dim)]
    zero = A.zero_vec()

    def add(*vs):
        return [sum(x, A.field.zero()) for x in zip(*vs)]

    found = set()
    for e0, e1, e2 in itertools.product(vecs, repeat=3):
        if mul(A, e0, e0) != e0:
            continue
        if not all(mul(A, e, b) == mul(A, b, e) for e in (e0, e1, e2) for b in basis):
            continue
        sq = [mul(A, e0, e0), add(mul(A, e0, e1), mul(A, e1, e0)),
              add(mul(A, e0, e2), mul(A, e1, e1), mul(A, e2, e0)),
              add(mul(A, e1, e2), mul(A, e2, e1)), mul(A, e2, e2)]
        if sq == [e0, e1, e2, zero, zero]:
            found.add((tuple(map(int, e0)), tuple(map(int, e1)), tuple(map(int, e2))))
    z = tuple(0 for _ in range(A.dim))
    assert all(e1 == z and e2 == z for _, e1, e2 in found)
    assert {e0 for e0, _, _ in found} == {tuple(int(x) for x in e.to_vec()) for e in central_idempotents(A)}


# -- units -------------------------------------------------------------------

def test_unit_examples():
    A = monomial_quotient(["x", "y"], ["x^2", "x*y", "y^2"])
    E = poly_extension(A, 1)
    r = is_unit(E.element("1 + t*x"))
    assert r.is_unit and str(r.inverse) == "1 - t*x"
    T = upper_triangular(2)
    ET = poly_extension(T, 1)
    r = is_unit(ET.element("1 + t*e12"))
    assert r and str(r.inverse) == "e11 - t*e12 + e22"
    S = direct_sum(field_algebra(), field_algebra())
    r = is_unit(poly_extension(S, 1).element("u1 + u2 + t*u1"))
    assert not r and str(r.determinant) == "t + 1"
    assert not is_unit(A.zero())


def _sympy_det(a):
    M = regular_matrix(a)
    t = sympy.Symbol("t")
    rows = [[sympy.sympify(str(c).replace("^", "**")) for c in row] for row in M]
    return sympy.expand(sympy.Matrix(rows).det())


def test_matrix_extension_has_nonconstant_units():
    # semisimple is not enough: nilpotents in M2 give units of positive t-degree
    E = poly_extension(matrix_algebra(2), 1)
    r = is_unit(E.element("e11 + e22 + t*e12"))
    assert r and r.inverse.degree("t") == 1


@slow
@given(algebras(kinds=("k",), fields=[QQ, GF(5)], max_dim=6), st.data())
def test_units_of_reduced_commutative_extension_are_constant(A, data):
    E = poly_extension(A, 1)
    vals = st.integers(-2, 2)
    c0 = [A.field(data.draw(vals)) for _ in range(A.dim)]
    c1 = [A.field(data.draw(vals)) for _ in range(A.dim)]
    a = A.element(c0, E.vars) + E.t(0) * A.element(c1, E.vars)
    r = is_unit(a)
    if r.is_unit:
        assert r.inverse.degree("t") == 0
        assert all(x == 0 for x in c1)
    if A.field == QQ:
        assert sympy.sympify(str(r.determinant).replace("^", "**")) == _sympy_det(a)


@slow
@given(algebras(fields=[QQ], max_dim=6), st.data())
def test_one_plus_t_radical_is_unit(A, data):
    J = jacobson_radical_vectors(A)
    if not J:
        return
    E = poly_extension(A, 1)
    j = A.element(J[data.draw(st.integers(0, len(J) - 1))], E.vars)
    r = is_unit(A.one(E.vars) + E.t(0) * j)
    assert r.is_unit and r.inverse.degree("t") >= 1


# -- membership ---------------------------------------------------------------

def test_membership_examples():
    A = field_algebra()
    E = poly_extension(A, 1)
    t = E.t(0)
    res = subalgebra_membership(t, [t * t, t * t * t], 5)
    assert isinstance(res, NotFoundUpTo) and not res.stabilized
    res = subalgebra_membership(t ** 5, [t * t, t * t * t], 2)
    assert isinstance(res, Yes) and res.expression.evaluate() == t ** 5
    M = matrix_algebra(2)
    res = subalgebra_membership(M.parse_element("e11"), [M.parse_element("e12"), M.parse_element("e21")], 3,
                                include_basis=False)
    assert isinstance(res, Yes)
    res = subalgebra_membership(M.parse_element("e21"), [M.parse_element("e12"), M.parse_element("e11")], 5,
                                include_basis=False)
    assert isinstance(res, NotFoundUpTo) and res.stabilized


@slow
@given(algebras(fields=[QQ, GF(3)], max_dim=6), st.data())
def test_membership_certificates_reevaluate(A, data):
    E = poly_extension(A, 1)
    vals = st.integers(-2, 2)
    gens = []
    for _ in range(data.draw(st.integers(1, 2))):
        c0 = [A.field(data.draw(vals)) for _ in range(A.dim)]
        c1 = [A.field(data.draw(vals)) for _ in range(A.dim)]
        gens.append(A.element(c0, E.vars) + E.t(0) * A.element(c1, E.vars))
    # a target known to lie in the subalgebra, and a random one
    coeffs = [data.draw(vals) for _ in range(3)]
    target = gens[0] * coeffs[0] + gens[-1] * gens[0] * coeffs[1] + A.one(E.vars) * coeffs[2]
    res = subalgebra_membership(target, gens, 2)
    assert isinstance(res, Yes)
    assert res.expression.evaluate() == target
    assert res.length <= 2
    other = E.t(0) * A.element([A.field(data.draw(vals)) for _ in range(A.dim)], E.vars)
    res = subalgebra_membership(other, gens, 3, include_basis=data.draw(st.booleans()))
    if isinstance(res, Yes):
        assert res.expression.evaluate() == other


# -- extensions ----------------------------------------------------------------

def test_center_of_extension():
    E = poly_extension(matrix_algebra(2), 1)
    assert len(E.center_upto(3)) == 4
    E2 = poly_extension(upper_triangular(2), 2)
    assert len(E2.center_upto(2)) == 6
    with pytest.raises(AlgebraError):
        poly_extension(monomial_quotient(["t"], ["t^2"]), 1)


def test_rebase_preserves_invariants():
    A = direct_sum(upper_triangular(2), field_algebra())
    B = rebase(A, random_invertible(QQ, A.dim, random.Random(3)))
    assert len(jacobson_radical_vectors(B)) == 1
    assert len(central_idempotents(B)) == 4
    assert len(center_vectors(B)) == 2
