import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from algebra_zoo import algebras
from ncalg.algcore import (Yes, NotFoundUpTo, center_vectors, is_unit, jacobson_radical_vectors, matrix_algebra,
                           monomial_quotient, poly_extension)
from ncalg.exactnum import GF, QQ
from ncalg.witness import (HomWitness, WitnessError, check_detectability, check_retraction, check_z_retraction,
                           compose, identity_witness, verify_hom, verify_iso)

slow = settings(max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow])


def ex33():
    return monomial_quotient(["x", "y"], ["x^2", "x*y", "y^2"])


def ex33_witness(shift="s*x"):
    A = ex33()
    imgs = [A.parse_element(s, ("s",)) for s in ("1", "x", f"y + {shift}")]
    inv_imgs = [A.parse_element(s, ("t",)) for s in ("1", "x", f"y - {shift.replace('s', 't')}")]
    inv = HomWitness(A, A, ("s",), ("t",), inv_imgs, [A.ext_var("t")])
    return HomWitness(A, A, ("t",), ("s",), imgs, [A.ext_var("s")], inverse=inv, name="phi")


def conjugation_witness(A, n_vec):
    """a -> u a u^-1 with u = 1 + s*n, plus t -> s."""
    Es, Et = poly_extension(A, 1, ["s"]), poly_extension(A, 1, ["t"])
    us = A.one(("s",)) + Es.t(0) * A.element(n_vec, ("s",))
    ut = A.one(("t",)) + Et.t(0) * A.element(n_vec, ("t",))
    us_inv, ut_inv = is_unit(us).inverse, is_unit(ut).inverse
    fwd = [us * b * us_inv for b in Es.basis()]
    bwd = [ut_inv * b * ut for b in Et.basis()]
    inv = HomWitness(A, A, ("s",), ("t",), bwd, [A.ext_var("t")])
    return HomWitness(A, A, ("t",), ("s",), fwd, [A.ext_var("s")], inverse=inv, name="conj")


def test_example_witness_is_iso_but_not_retraction():
    w = ex33_witness()
    assert verify_hom(w).ok
    iso = verify_iso(w)
    assert iso.verdict == "ISO"
    r = check_retraction(w)
    assert not r.holds and r.witness == "y"
    det = check_detectability(w, 1)
    assert isinstance(det["s"], Yes)
    assert str(det["s"].expression) == "phi(t)"
    assert det["s"].expression.evaluate() == w.target.ext_var("s").with_ext(("s",))


def test_non_multiplicative_map_reports_pairs():
    A = ex33()
    imgs = [A.parse_element(s, ("s",)) for s in ("1", "x", "y + s")]
    w = HomWitness(A, A, ("t",), ("s",), imgs, [A.ext_var("s")])
    rep = verify_hom(w)
    assert not rep.ok
    mult = next(c for c in rep.checks if c.name == "multiplicative")
    assert ("y", "y") in mult.pairs
    assert ("x", "x") not in mult.pairs


def test_broken_inverse_is_not_iso():
    A = ex33()
    w = ex33_witness()
    bad_inv = HomWitness(A, A, ("s",), ("t",), [A.parse_element(s, ("t",)) for s in ("1", "x", "y + t*x")],
                         [A.ext_var("t")])
    w2 = HomWitness(w.source, w.target, w.source_vars, w.target_vars, w.images, w.var_images, inverse=bad_inv)
    assert verify_iso(w2).verdict == "NOT-ISO"
    with pytest.raises(WitnessError):
        check_retraction(w2)


def test_missing_inverse_and_validation_errors():
    w = ex33_witness()
    w.inverse = None
    assert verify_iso(w).verdict == "NO-INVERSE"
    A = ex33()
    with pytest.raises(WitnessError, match="one image"):
        HomWitness(A, A, ("t",), ("s",), [A.one(("s",))], [A.ext_var("s")])
    with pytest.raises(WitnessError, match="undeclared"):
        HomWitness(A, A, ("t",), ("s",), [A.parse_element(s, ("s", "u")) for s in ("1", "x", "y + u*x")],
                   [A.ext_var("s")])
    with pytest.raises(WitnessError, match="same number"):
        HomWitness(A, A, ("t",), ("s", "u"), A.basis(), [A.ext_var("s")])


def test_identity_retractions_hold():
    w = identity_witness(matrix_algebra(2))
    assert verify_iso(w).ok
    assert check_retraction(w).holds
    assert check_z_retraction(w).holds


def test_conjugation_on_m2():
    M = matrix_algebra(2)
    w = conjugation_witness(M, M.parse_element("e12").to_vec())
    assert verify_iso(w).verdict == "ISO"
    assert not check_retraction(w).holds
    assert check_z_retraction(w).holds
    assert isinstance(check_detectability(w, 1)["s"], Yes)


def test_detectability_can_fail_and_stabilize():
    # t -> s^2 is a homomorphism k[t] -> k[s]; s is never reached
    from ncalg.algcore import field_algebra
    k = field_algebra()
    w = HomWitness(k, k, ("t",), ("s",), k.basis(("s",)), [k.parse_element("s^2", ("s",))])
    assert verify_hom(w).ok
    res = check_detectability(w, 4)["s"]
    assert isinstance(res, NotFoundUpTo) and not res.stabilized


def test_compose_with_inverse_is_identity_on_generators():
    w = ex33_witness()
    c = compose(w, w.inverse)
    for (lab, g), img in zip(c.source_generators(), c.images + c.var_images):
        assert img == g.with_ext(("t",))


@slow
@given(algebras(fields=[QQ, GF(3)], max_dim=5), st.data())
def test_conjugation_by_one_plus_s_nilpotent(A, data):
    J = jacobson_radical_vectors(A)
    if not J:
        return
    j = J[data.draw(st.integers(0, len(J) - 1))]
    w = conjugation_witness(A, j)
    assert verify_hom(w).ok
    assert verify_iso(w).ok
    z = check_z_retraction(w)
    assert z.holds
    # images of the center are unchanged by an inner automorphism
    for v in center_vectors(A):
        c = A.element(v, ("t",))
        assert w.apply(c) == A.element(v, ("s",))
    det = check_detectability(w, 1)["s"]
    assert isinstance(det, Yes) and det.expression.evaluate() == A.ext_var("s").with_ext(("s",))


@slow
@given(algebras(fields=[QQ], max_dim=6), st.data())
def test_random_perturbation_is_caught(A, data):
    """Adding s*b_k to one image breaks multiplicativity or the unit unless it is harmless;
    the report must agree with a direct recomputation."""
    E = poly_extension(A, 1, ["s"])
    i = data.draw(st.integers(0, A.dim - 1))
    k = data.draw(st.integers(0, A.dim - 1))
    imgs = E.basis()
    imgs[i] = imgs[i] + E.t(0) * A.basis_element(k, ("s",))
    w = HomWitness(A, A, ("t",), ("s",), imgs, [A.ext_var("s")])
    rep = verify_hom(w)
    expected_ok = w.apply(A.one(("t",))) == A.one(("s",))
    for a in range(A.dim):
        for b in range(A.dim):
            lhs = w.apply(A.basis_element(a, ("t",)) * A.basis_element(b, ("t",)))
            if lhs != imgs[a] * imgs[b]:
                expected_ok = False
    assert rep.ok == expected_ok
