import random

import pytest
import sympy
from hypothesis import HealthCheck, given, settings, strategies as st

from ncalg.azudisc import (AzumayaError, BaseRing, corner_order, extension_invariance_check, generic_point,
                           is_central_simple, is_effective_univariate, matrix_order, non_azumaya_locus,
                           non_azumaya_poly, parse_base_ring, pi_degree_estimate)
from ncalg.algcore import matrix_algebra, upper_triangular
from ncalg.exactnum import GF, QQ, parse_poly

X = sympy.Symbol("x")
slow = settings(max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow])


def sp(p):
    return sympy.expand(sympy.sympify(str(p).replace("^", "**")))


def oracle_corner_discriminant(f_expr):
    """det of the regular trace pairing, from explicit 2x2 matrices.

    The regular trace of a 4-dimensional matrix algebra is twice the matrix
    trace, so det = 2^4 * det(tr(b_i b_j))."""
    basis = [sympy.Matrix([[1, 0], [0, 0]]), sympy.Matrix([[0, f_expr], [0, 0]]),
             sympy.Matrix([[0, 0], [1, 0]]), sympy.Matrix([[0, 0], [0, 1]])]
    T = sympy.Matrix(4, 4, lambda i, j: 2 * (basis[i] * basis[j]).trace())
    return sympy.expand(T.det())


def test_base_ring_tags():
    assert parse_base_ring("QQ[x]").tag == "QQ[x]"
    assert parse_base_ring("GF(7)[y]").var == "y"
    R = parse_base_ring("QQ[x,x^-1]")
    assert R.laurent and R.tag == "QQ[x,x^-1]"
    with pytest.raises(ValueError):
        parse_base_ring("QQ[x,y]")


@pytest.mark.parametrize("f,sqf", [("x", "x"), ("x - 1", "x - 1"), ("x*(x - 1)", "x^2 - x"),
                                   ("x^2 + 1", "x^2 + 1"), ("x^2", "x"), ("x^2*(x - 1)^3", "x^2 - x")])
def test_corner_discriminants(f, sqf):
    A = corner_order("QQ[x]", f)
    d = A.discriminant()
    fp = parse_poly(f, QQ)
    assert sp(d.raw) == sympy.expand(-16 * sp(fp) ** 2)
    assert sp(d.raw) == oracle_corner_discriminant(sp(fp))
    assert str(d.unit) == "-16"
    assert d.normalized == (fp * fp).monic().extend(d.normalized.vars)
    assert str(d.squarefree) == sqf


def test_matrix_order_discriminant_is_unit():
    for n in (1, 2, 3):
        d = matrix_order("QQ[x]", n).discriminant()
        assert d.is_unit
    assert non_azumaya_poly(matrix_order("QQ[x]", 2)) == parse_poly("1", QQ).extend(("x",))


def test_locus_of_x_times_x_minus_2():
    A = corner_order("QQ[x]", "x*(x-2)")
    loc = non_azumaya_locus(A, [QQ(c) for c in (0, 2, 1, -1, 3, 5)])
    assert str(loc.polynomial) == "x^2 - 2*x"
    assert sorted(loc.roots) == [0, 2]
    assert {k: v for k, v in loc.fibers.items()} == {"0": False, "2": False, "1": True, "-1": True,
                                                     "3": True, "5": True}


def test_irreducible_locus_has_no_rational_points():
    loc = non_azumaya_locus(corner_order("QQ[x]", "x^2 + 1"))
    assert loc.roots == [] and all(loc.fibers.values())
    loc5 = non_azumaya_locus(corner_order("GF(5)[x]", "x^2 + 1"))
    assert sorted(int(r) for r in loc5.roots) == [2, 3]


def test_char2_discriminant_refusal():
    A = corner_order("GF(2)[x]", "x")
    assert A.discriminant().degenerate
    with pytest.raises(AzumayaError, match="vanishes identically"):
        non_azumaya_locus(A)
    # the fibers themselves are still decidable
    assert not is_central_simple(A.fiber_at(GF(2)(0)))
    assert is_central_simple(A.fiber_at(GF(2)(1)))


def test_laurent_base_strips_monomials():
    A = corner_order("QQ[x,x^-1]", "x^2*(x-1)")
    d = A.discriminant()
    assert str(d.squarefree) == "x - 1"
    assert str(d.unit) == "-16*x^4"
    with pytest.raises(AzumayaError, match="pole"):
        non_azumaya_locus(A, [QQ(0)])
    assert non_azumaya_locus(A).roots == [1]


def test_fiber_central_simplicity():
    assert is_central_simple(matrix_algebra(2))
    assert not is_central_simple(upper_triangular(2))
    A = corner_order("QQ[x]", "x")
    assert not is_central_simple(A.fiber_at(QQ(0)))


def test_generic_point_and_pi_degree():
    A = corner_order("QQ[x]", "(x-1)*(x-2)")
    assert generic_point(A) == -1
    assert pi_degree_estimate(A) == 2
    assert pi_degree_estimate(matrix_order("QQ[x]", 3)) == 3


def test_effective_elements():
    assert is_effective_univariate(parse_poly("x", QQ))
    assert not is_effective_univariate(parse_poly("3", QQ))
    with pytest.raises(AzumayaError):
        is_effective_univariate(parse_poly("0", QQ))


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("spec", [("corner", "x"), ("corner", "x - 1"), ("corner", "x*(x-1)"),
                                  ("corner", "x^2 + 1"), ("corner", "x*(x-2)"), ("matrix", 2)])
def test_extension_invariance_fixtures(spec, n):
    A = corner_order("QQ[x]", spec[1]) if spec[0] == "corner" else matrix_order("QQ[x]", spec[1])
    assert extension_invariance_check(A, n)


polys = st.lists(st.integers(-3, 3), min_size=2, max_size=4).filter(lambda c: any(c[1:]))


def _poly_text(coeffs):
    return " + ".join(f"({c})*x^{i}" for i, c in enumerate(coeffs) if c) or "0"


@slow
@given(polys)
def test_random_corner_discriminant_and_locus(coeffs):
    text = _poly_text(coeffs)
    A = corner_order("QQ[x]", text)
    f = sympy.Poly(sp(parse_poly(text, QQ)), X, domain="QQ")
    d = A.discriminant()
    assert sp(d.raw) == oracle_corner_discriminant(f.as_expr())
    assert sp(d.squarefree) == sympy.expand(sympy.sqf_part(f).monic().as_expr())
    loc = non_azumaya_locus(A)
    rational_roots = sorted(set(r for r in sympy.roots(f, filter="Q")))
    assert sorted(loc.roots) == rational_roots
    for pt, ok in loc.fibers.items():
        assert ok == (f.eval(sympy.Rational(pt)) != 0)


@slow
@given(polys, st.integers(0, 10 ** 6))
def test_discriminant_transforms_by_det_squared(coeffs, seed):
    A = corner_order("QQ[x]", _poly_text(coeffs))
    rng = random.Random(seed)
    while True:
        P = [[rng.choice([0, 1, -1, 2]) for _ in range(4)] for _ in range(4)]
        dP = sympy.Matrix(P).det()
        if dP:
            break
    B = A.change_basis(P)
    assert sp(B.discriminant().raw) == sympy.expand(dP ** 2 * sp(A.discriminant().raw))
    assert B.discriminant().squarefree == A.discriminant().squarefree


@settings(max_examples=100, deadline=None)
@given(polys, st.integers(1, 3))
def test_extension_invariance_random(coeffs, n):
    assert extension_invariance_check(corner_order("QQ[x]", _poly_text(coeffs)), n)
