import math

import pytest
import sympy
from hypothesis import HealthCheck, given, settings, strategies as st

from algebra_zoo import algebras
from ncalg.algcore import (direct_sum, field_algebra, jacobson_radical_vectors, matrix_algebra, monomial_quotient,
                           upper_triangular)
from ncalg.derivations import (DerivationError, HigherDerivation, ad, exp_automorphism, hs_automorphism,
                               is_locally_nilpotent, make_derivation, make_higher_derivation, ml_over_family,
                               square_zero_witness)
from ncalg.exactnum import GF, QQ
from ncalg.exactnum.linalg import mat_mul, rank
from ncalg.witness import check_retraction, check_z_retraction, verify_iso

slow = settings(max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow])


def test_ad_on_m2():
    M = matrix_algebra(2)
    d = ad(M.parse_element("e12"))
    nil = is_locally_nilpotent(d)
    assert nil.nilpotent and nil.index == 3
    assert not is_locally_nilpotent(ad(M.parse_element("e11")))
    assert is_locally_nilpotent(ad(M.one())).index == 1


def test_leibniz_failure_names_pair():
    S = direct_sum(field_algebra(), field_algebra())
    with pytest.raises(DerivationError, match=r"\(u1,u1\)"):
        make_derivation(S, {"u1": "u1 + u2", "u2": "u1 + u2"})


def test_explicit_derivation_on_truncated_polynomials():
    A = monomial_quotient(["x"], ["x^3"])
    # delta(x^2) = 2*x^3 = 0, so delta^2 = 0
    d = make_derivation(A, {"1": "0", "x": "x^2", "x^2": "2*x^3"})
    assert is_locally_nilpotent(d).index == 2


def test_exp_of_ad_e12_is_conjugation():
    M = matrix_algebra(2)
    res = exp_automorphism(ad(M.parse_element("e12"), name="ad_e12"))
    assert res.report.verdict == "ISO"
    u = M.parse_element("e11 + e22 + t*e12", ("t",))
    u_inv = M.parse_element("e11 + e22 - t*e12", ("t",))
    for b, img in zip(M.basis(("t",)), res.witness.images):
        assert img == u * b * u_inv
    w = res.witness
    assert not check_retraction(w).holds
    assert check_z_retraction(w).holds


def test_exp_refuses_positive_characteristic():
    M = matrix_algebra(2, GF(3))
    with pytest.raises(DerivationError):
        exp_automorphism(ad(M.parse_element("e12")))


def _exp_series(j, t_elem, N):
    out = j.algebra.one(("t",))
    p = out
    for k in range(1, N + 1):
        p = p * j * t_elem
        out = out + p / math.factorial(k)
    return out


@slow
@given(algebras(fields=[QQ], max_dim=6), st.data())
def test_exp_ad_nilpotent_is_conjugation_by_exponential(A, data):
    J = jacobson_radical_vectors(A)
    if not J:
        return
    jv = J[data.draw(st.integers(0, len(J) - 1))]
    j = A.element(jv, ("t",))
    d = ad(A.vec_element(jv))
    res = exp_automorphism(d)
    assert res.report.ok
    t = A.ext_var("t").with_ext(("t",))
    u, u_inv = _exp_series(j, t, A.dim), _exp_series(-j, t, A.dim)
    assert u * u_inv == A.one(("t",))
    for b, img in zip(A.basis(("t",)), res.witness.images):
        assert img == u * b * u_inv


# -- Hasse-Schmidt ------------------------------------------------------------

def _binomial_family(F, n_vars=4):
    """D_n(x^m) = C(m, n) x^(m-n) on F[x]/(x^4)."""
    A = monomial_quotient(["x"], ["x^4"], F)
    maps = []
    for n in range(1, n_vars):
        imgs = {}
        for m, lab in enumerate(A.labels):
            c = math.comb(m, n)
            imgs[lab] = "0" if c == 0 or m < n else (f"{c}*x^{m - n}" if m - n > 1 else
                                                    (f"{c}*x" if m - n == 1 else f"{c}"))
        maps.append(imgs)
    return A, maps


def test_binomial_family_on_gf2_x4_fails_the_identity():
    # (x + t)^4 = x^4 + t^4 in characteristic 2, so x -> x + t cannot respect x^4 = 0
    A, maps = _binomial_family(GF(2))
    with pytest.raises(DerivationError, match=r"n=4 on pair \(x,x\^3\)"):
        make_higher_derivation(A, maps)


def test_square_shift_family_on_gf2_x4():
    A = monomial_quotient(["x"], ["x^4"], GF(2))
    D = make_higher_derivation(A, [{"1": "0", "x": "x^2", "x^2": "0", "x^3": "x^4"}])
    res = hs_automorphism(D)
    assert res.automorphism
    assert str(res.witness.images[1]) == "x + t*x^2"


def _hs_ok_vandermonde(A, maps):
    """HS identity via evaluation: G_c(a) = sum D_n(a) c^n must be multiplicative
    at 2N + 1 distinct points c, which pins down every coefficient of t^n."""
    F = A.field
    N = len(maps)
    for c in range(2 * N + 1):
        G = [[F.zero()] * A.dim for _ in range(A.dim)]
        for n in range(N + 1):
            Mn = [[F.one() if i == j else F.zero() for j in range(A.dim)] for i in range(A.dim)] if n == 0 \
                else maps[n - 1]
            cn = F(c) ** n
            G = [[g + cn * m for g, m in zip(gr, mr)] for gr, mr in zip(G, Mn)]

        def app(v):
            return [sum((G[k][j] * v[j] for j in range(A.dim)), F.zero()) for k in range(A.dim)]

        for i in range(A.dim):
            for j in range(A.dim):
                if app(A.table[i][j]) != A.mul_vec(app(A.basis_vec(i)), app(A.basis_vec(j))):
                    return False
    return True


@slow
@given(algebras(fields=[QQ, GF(101)], max_dim=5), st.data())
def test_hs_identity_check_matches_vandermonde_oracle(A, data):
    # start from D_n = delta^n / n! with delta = ad(random), then maybe perturb one entry
    F = A.field
    coeffs = [F(data.draw(st.integers(-2, 2))) for _ in range(A.dim)]
    d = ad(A.vec_element(coeffs))
    N = data.draw(st.integers(1, 3))
    maps, P = [], d.matrix
    for n in range(1, N + 1):
        maps.append([[x / math.factorial(n) for x in row] for row in P])
        P = mat_mul(d.matrix, P, F)
    if data.draw(st.booleans()):
        n = data.draw(st.integers(0, N - 1))
        i, j = data.draw(st.integers(0, A.dim - 1)), data.draw(st.integers(0, A.dim - 1))
        maps[n][i][j] = maps[n][i][j] + F(data.draw(st.integers(1, 3)))
    D = HigherDerivation(A, maps, check=False)
    assert (D.violations(stop_at_first=True) == []) == _hs_ok_vandermonde(A, maps)


# -- ML relative to a family ---------------------------------------------------

def test_ml_of_m2_family():
    M = matrix_algebra(2)
    fam = [ad(M.parse_element("e12")), ad(M.parse_element("e21"))]
    res = ml_over_family(M, fam)
    assert [str(e) for e in res.ml] == ["e11 + e22"]
    assert len(ml_over_family(M, []).ml) == 4
    with pytest.raises(DerivationError):
        ml_over_family(M, [ad(M.parse_element("e11"))])


def _nilpotent_ads(A, data, k):
    J = jacobson_radical_vectors(A)
    if not J:
        return []
    out = []
    for _ in range(k):
        c = [data.draw(st.integers(-2, 2)) for _ in J]
        v = [sum((A.field(ci) * row[m] for ci, row in zip(c, J)), A.field.zero()) for m in range(A.dim)]
        out.append(ad(A.vec_element(v)))
    return out


@slow
@given(algebras(fields=[QQ, GF(3)], max_dim=7), st.data())
def test_ml_monotone_under_family_inclusion(A, data):
    fam = _nilpotent_ads(A, data, 3)
    cut = data.draw(st.integers(0, len(fam)))
    small, big = ml_over_family(A, fam[:cut]), ml_over_family(A, fam)
    sv = [e.to_vec() for e in small.ml]
    bv = [e.to_vec() for e in big.ml]
    # ML(bigger family) is contained in ML(smaller family)
    assert rank(sv + bv, A.field) == rank(sv, A.field) if sv else not bv
    assert len(big.ml_z) <= len(small.ml_z)
    if A.field == QQ and fam:
        rows = [r for d in fam for r in d.matrix]
        kernel = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in rows]).nullspace()
        assert len(kernel) == len(big.ml)


# -- square-zero witnesses ---------------------------------------------------------

def test_square_zero_witnesses():
    assert str(square_zero_witness(matrix_algebra(2))) == "e12"
    assert square_zero_witness(field_algebra()) is None
    f = square_zero_witness(upper_triangular(2))
    assert not f.is_zero() and (f * f).is_zero()


@settings(max_examples=100, deadline=None)
@given(algebras(max_dim=6))
def test_square_zero_witness_is_valid(A):
    f = square_zero_witness(A)
    if f is not None:
        assert not f.is_zero() and (f * f).is_zero()
    else:
        # every zoo algebra with a matrix block or a radical has nonzero nilpotents
        assert A.is_commutative() and jacobson_radical_vectors(A) == []
