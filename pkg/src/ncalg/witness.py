"""Homomorphisms A[t1..tn] -> B[s1..sn] given by images of generators, and
witness-level checks of retraction, Z-retraction and detectability.

Every verdict concerns the supplied map only.  Nothing here quantifies over
all isomorphisms, so a positive answer reads "witnessed" and a negative one
"refuted for this witness".
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence, Tuple

from .algcore import (AlgElement, NotFoundUpTo, StructAlgebra, Yes, center_vectors,
                      subalgebra_membership)
from .exactnum import Poly
from .exactnum.linalg import rank


class WitnessError(ValueError):
    pass


def eval_poly_at(p: Poly, values: Dict[str, AlgElement], one: AlgElement) -> AlgElement:
    """p(values) for commuting algebra elements; unassigned variables stay formal."""
    out = one * 0
    cache: Dict[Tuple[str, int], AlgElement] = {}
    for e, c in p.terms.items():
        term = one * c
        for v, x in zip(p.vars, e):
            if not x:
                continue
            if v in values:
                if (v, x) not in cache:
                    cache[(v, x)] = values[v] ** x
                term = term * cache[(v, x)]
            else:
                term = term * (Poly.var(p.field, v) ** x)
        out = out + term
    return out


@dataclass
class HomWitness:
    """A k-algebra map determined by images of the source basis and variables.

    ``images[i]`` is the image of the i-th basis element of ``source``, and
    ``var_images[j]`` the image of ``source_vars[j]``; all images live in
    ``target[target_vars]``.  ``inverse`` optionally carries the claimed
    inverse map in the same shape.
    """

    source: StructAlgebra
    target: StructAlgebra
    source_vars: Tuple[str, ...]
    target_vars: Tuple[str, ...]
    images: List[AlgElement]
    var_images: List[AlgElement]
    inverse: Optional["HomWitness"] = None
    name: str = ""

    def __post_init__(self):
        self.source_vars = tuple(self.source_vars)
        self.target_vars = tuple(self.target_vars)
        if len(self.source_vars) != len(self.target_vars):
            raise WitnessError("source and target must adjoin the same number of variables")
        if len(self.images) != self.source.dim:
            raise WitnessError("one image per source basis element is required")
        if len(self.var_images) != len(self.source_vars):
            raise WitnessError("one image per source variable is required")
        for img in list(self.images) + list(self.var_images):
            if img.algebra != self.target:
                raise WitnessError("image outside the target algebra")
            stray = [v for c in img.coords for v in c.used_vars() if v not in self.target_vars]
            if stray:
                raise WitnessError(f"image {img} uses undeclared variables {sorted(set(stray))}")
        self.images = [a.with_ext(self.target_vars) for a in self.images]
        self.var_images = [a.with_ext(self.target_vars) for a in self.var_images]
        if self.inverse is not None:
            inv = self.inverse
            if inv.source != self.target or inv.target != self.source:
                raise WitnessError("inverse has mismatched source/target")

    def apply(self, a: AlgElement) -> AlgElement:
        if a.algebra != self.source:
            raise WitnessError("element outside the source algebra")
        extra = [v for v in a.ext if v not in self.source_vars and any(v in c.used_vars() for c in a.coords)]
        if extra:
            raise WitnessError(f"element uses undeclared variables {extra}")
        values = dict(zip(self.source_vars, self.var_images))
        one = self.target.one(self.target_vars)
        out = one * 0
        for c, img in zip(a.coords, self.images):
            if c.is_zero():
                continue
            out = out + eval_poly_at(c, values, one) * img
        return out.with_ext(self.target_vars)

    def source_generators(self) -> List[Tuple[str, AlgElement]]:
        gens = [(lab, b) for lab, b in zip(self.source.labels, self.source.basis(self.source_vars))]
        gens += [(v, self.source.ext_var(v).with_ext(self.source_vars)) for v in self.source_vars]
        return gens


def identity_witness(A: StructAlgebra, vars: Sequence[str] = ("t",)) -> HomWitness:
    vars = tuple(vars)
    inv = HomWitness(A, A, vars, vars, A.basis(vars), [A.ext_var(v) for v in vars], name="identity")
    return HomWitness(A, A, vars, vars, A.basis(vars), [A.ext_var(v) for v in vars], inverse=inv,
                      name="identity")


# -- verdicts -------------------------------------------------------------

@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""
    pairs: List[Tuple[str, str]] = dc_field(default_factory=list)


def _check_json(c: Check):
    out = {"name": c.name, "ok": c.ok, "detail": c.detail}
    if c.pairs:
        out["pairs"] = [list(p) for p in c.pairs]
    return out


@dataclass
class HomReport:
    checks: List[Check]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.ok]

    def to_json(self):
        return {"verified": self.ok, "checks": [_check_json(c) for c in self.checks]}


def verify_hom(w: HomWitness) -> HomReport:
    """Check phi(1) = 1, multiplicativity on basis pairs and centrality of
    the variable images.  Linearity holds by construction."""
    A, B = w.source, w.target
    checks = []
    one_img = w.apply(A.one(w.source_vars))
    checks.append(Check("unit", one_img == B.one(), "" if one_img == B.one() else f"phi(1) = {one_img}"))
    bad = []
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = w.apply(A.element(A.table[i][j], w.source_vars))
            rhs = w.images[i] * w.images[j]
            if lhs != rhs:
                bad.append((A.labels[i], A.labels[j], lhs, rhs))
    if bad:
        detail = "; ".join(f"pair ({a},{b}): phi({a}*{b}) = {lhs} but phi({a})*phi({b}) = {rhs}"
                           for a, b, lhs, rhs in bad)
        checks.append(Check("multiplicative", False, detail, [(a, b) for a, b, _, _ in bad]))
    else:
        checks.append(Check("multiplicative", True))
    for v, img in zip(w.source_vars, w.var_images):
        central = all(img * b == b * img for b in B.basis(w.target_vars))
        checks.append(Check(f"central({v})", central, "" if central else f"phi({v}) = {img} is not central"))
    return HomReport(checks)


@dataclass
class IsoReport:
    forward: HomReport
    backward: Optional[HomReport]
    compositions: List[Check] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.backward is not None and self.forward.ok and self.backward.ok
                and all(c.ok for c in self.compositions))

    @property
    def verdict(self) -> str:
        if self.ok:
            return "ISO"
        if self.backward is None:
            return "NO-INVERSE"
        return "NOT-ISO"

    def to_json(self):
        return {"verdict": self.verdict, "forward": self.forward.to_json(),
                "backward": self.backward.to_json() if self.backward else None,
                "compositions": [_check_json(c) for c in self.compositions]}


def verify_iso(w: HomWitness) -> IsoReport:
    fwd = verify_hom(w)
    if w.inverse is None:
        return IsoReport(fwd, None)
    inv = w.inverse
    bwd = verify_hom(inv)
    comps = []
    for lab, g in w.source_generators():
        back = inv.apply(w.apply(g))
        ok = back == g
        comps.append(Check(f"psi(phi({lab}))", ok, "" if ok else f"psi(phi({lab})) = {back}"))
    for lab, g in inv.source_generators():
        back = w.apply(inv.apply(g))
        ok = back == g
        comps.append(Check(f"phi(psi({lab}))", ok, "" if ok else f"phi(psi({lab})) = {back}"))
    return IsoReport(fwd, bwd, comps)


def _require(report, what: str):
    if not report.ok:
        raise WitnessError(f"{what} requires a verified witness")


@dataclass
class PropertyVerdict:
    holds: bool
    witness: Optional[str] = None
    detail: str = ""

    def to_json(self):
        return {"holds": self.holds, "witness": self.witness, "detail": self.detail}


def _s_degree(a: AlgElement, vars: Sequence[str]) -> int:
    return max((max((c.degree(v) for v in vars), default=0) for c in a.coords if not c.is_zero()),
               default=0)


def check_retraction(w: HomWitness) -> PropertyVerdict:
    """Does phi carry A onto B?  Every phi(b_i) must lie in B and the images
    must generate B."""
    _require(verify_iso(w), "check_retraction")
    B = w.target
    for lab, img in zip(w.source.labels, w.images):
        d = _s_degree(img, w.target_vars)
        if d > 0:
            return PropertyVerdict(False, lab, f"phi({lab}) = {img} has degree {d} in {', '.join(w.target_vars)}")
    consts = [img.subs({v: 0 for v in w.target_vars}) for img in w.images]
    for lab, b in zip(B.labels, B.basis()):
        res = subalgebra_membership(b, consts, B.dim + 1, include_basis=False)
        if not isinstance(res, Yes):
            return PropertyVerdict(False, lab, f"{lab} is not generated by phi(A)")
    return PropertyVerdict(True)


def check_z_retraction(w: HomWitness) -> PropertyVerdict:
    """Does phi carry Z(A) onto Z(B)?"""
    _require(verify_iso(w), "check_z_retraction")
    A, B = w.source, w.target
    zb = center_vectors(B)
    imgs = []
    for v in center_vectors(A):
        z = A.element(v, w.source_vars)
        img = w.apply(z)
        d = _s_degree(img, w.target_vars)
        if d > 0:
            return PropertyVerdict(False, str(z), f"phi({z}) = {img} has degree {d} in {', '.join(w.target_vars)}")
        if not all(img * b == b * img for b in B.basis(w.target_vars)):
            return PropertyVerdict(False, str(z), f"phi({z}) = {img} is not central")
        imgs.append(img.to_vec())
    r = rank(imgs, B.field) if imgs else 0
    if r != len(zb):
        return PropertyVerdict(False, None, f"images span dimension {r} of Z(B) (dimension {len(zb)})")
    return PropertyVerdict(True)


def check_detectability(w: HomWitness, bound: int) -> Dict[str, object]:
    """For each s_i, search s_i in B{phi(t_1), ..., phi(t_n)} up to word length ``bound``.

    Returns ``Yes`` certificates (whose expressions re-evaluate to s_i) or
    ``NotFoundUpTo``.  Only a verified homomorphism is required.
    """
    _require(verify_hom(w), "check_detectability")
    B = w.target
    names = [f"phi({v})" for v in w.source_vars]
    out = {}
    for s in w.target_vars:
        target = B.ext_var(s).with_ext(w.target_vars)
        out[s] = subalgebra_membership(target, w.var_images, bound, names=names)
    return out


def compose(first: HomWitness, second: HomWitness) -> HomWitness:
    """second o first: A[t] -> B[s] -> C[u]."""
    if first.target != second.source or first.target_vars != second.source_vars:
        raise WitnessError("witnesses are not composable")
    images = [second.apply(a) for a in first.images]
    var_images = [second.apply(a) for a in first.var_images]
    inv = None
    if first.inverse is not None and second.inverse is not None:
        inv = compose(second.inverse, first.inverse)
    return HomWitness(first.source, second.target, first.source_vars, second.target_vars,
                      images, var_images, inverse=inv,
                      name=f"{second.name or 'psi'} o {first.name or 'phi'}")


__all__ = ["WitnessError", "HomWitness", "HomReport", "IsoReport", "Check", "PropertyVerdict",
           "verify_hom", "verify_iso", "check_retraction", "check_z_retraction",
           "check_detectability", "compose", "identity_witness", "eval_poly_at", "Yes", "NotFoundUpTo"]
