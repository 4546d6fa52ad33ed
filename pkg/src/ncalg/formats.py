"""JSON file formats for algebras, orders, derivations and witnesses.

Algebra files take an explicit form::

    {"field": "QQ", "basis": ["e11", "e12", "e21", "e22"],
     "constants": [["e12", "e21", "e11", "1"], ...],
     "identity": {"e11": "1", "e22": "1"}}

where each constant ``[b_i, b_j, b_k, c]`` contributes c*b_k to b_i*b_j, or
one of the shorthands ``{"matrix": n}``, ``{"upper_triangular": n}``,
``{"scalars": true}``, ``{"monomial_quotient": {"vars": [...], "relations": [...]}}``
and ``{"direct_sum": [algebra, ...]}`` (each with an optional ``"field"``).
Wherever an algebra is expected, a string is read as a path relative to the
referring file.
"""
from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .algcore import (AlgebraError, AlgElement, StructAlgebra, direct_sum, field_algebra,
                      matrix_algebra, monomial_quotient, upper_triangular)
from .azudisc import FreeCentralAlgebra, corner_order, matrix_order, parse_base_ring
from .derivations import (Derivation, HigherDerivation, ad, make_derivation,
                          make_higher_derivation)
from .exactnum import Poly, parse_field, parse_poly
from .witness import HomWitness, WitnessError

WITNESS_SCHEMA = "ncalg.witness/1"


class FormatError(ValueError):
    pass


def sha256_file(path: Union[str, Path]) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def read_json(path: Union[str, Path]):
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _resolve(obj, base: Optional[Path]):
    if isinstance(obj, str):
        path = (base / obj) if base is not None else Path(obj)
        return read_json(path), path.parent
    return obj, base


# -- algebras -------------------------------------------------------------

def load_algebra(obj, base: Optional[Path] = None) -> StructAlgebra:
    obj, base = _resolve(obj, base)
    if not isinstance(obj, dict):
        raise FormatError("an algebra description must be a JSON object")
    try:
        field = parse_field(obj.get("field", "QQ"))
        name = obj.get("name", "")
        if "matrix" in obj:
            A = matrix_algebra(int(obj["matrix"]), field)
        elif "upper_triangular" in obj:
            A = upper_triangular(int(obj["upper_triangular"]), field)
        elif obj.get("scalars"):
            A = field_algebra(field)
        elif "monomial_quotient" in obj:
            mq = obj["monomial_quotient"]
            A = monomial_quotient(mq["vars"], mq["relations"], field)
        elif "direct_sum" in obj:
            parts = []
            for sub in obj["direct_sum"]:
                if isinstance(sub, dict) and "field" not in sub:
                    sub = dict(sub, field=field.tag)
                parts.append(load_algebra(sub, base))
            A = direct_sum(*parts)
        else:
            labels = obj["basis"]
            idx = {lab: i for i, lab in enumerate(labels)}
            consts: Dict[Tuple[int, int], Dict[int, object]] = {}
            for entry in obj.get("constants", []):
                if len(entry) != 4:
                    raise FormatError(f"constant entry {entry} must be [b_i, b_j, b_k, coefficient]")
                i, j, k, c = entry
                for lab in (i, j, k):
                    if lab not in idx:
                        raise FormatError(f"constant entry {entry} names unknown basis label {lab!r}")
                slot = consts.setdefault((idx[i], idx[j]), {})
                slot[idx[k]] = slot.get(idx[k], 0) + field(c)
            if "identity" not in obj:
                raise FormatError("explicit algebra needs an identity")
            ident = [field.zero()] * len(labels)
            for lab, c in obj["identity"].items():
                if lab not in idx:
                    raise FormatError(f"identity names unknown basis label {lab!r}")
                ident[idx[lab]] = field(c)
            A = StructAlgebra(field, labels, consts, ident)
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed algebra description: {exc}") from None
    if name:
        A.name = name
    return A


def algebra_to_json(A: StructAlgebra) -> dict:
    consts = []
    for i in range(A.dim):
        for j in range(A.dim):
            for k, c in A.sparse[i][j]:
                consts.append([A.labels[i], A.labels[j], A.labels[k], str(c)])
    out = {"field": A.field.tag, "basis": list(A.labels), "constants": consts,
           "identity": {A.labels[i]: str(c) for i, c in enumerate(A.identity) if c != 0}}
    if A.name:
        out["name"] = A.name
    return out


# -- elements -------------------------------------------------------------

def parse_element(A: StructAlgebra, spec, vars: Sequence[str]) -> AlgElement:
    """An element from an expression string or a {label: polynomial} map."""
    vars = tuple(vars)
    if isinstance(spec, str):
        return A.parse_element(spec, vars)
    if isinstance(spec, (int, float)) and not isinstance(spec, bool):
        return A.parse_element(str(spec), vars)
    if isinstance(spec, dict):
        coords = [Poly.zero(A.field, vars) for _ in range(A.dim)]
        for lab, p in spec.items():
            coords[A.index(lab)] = parse_poly(str(p), A.field, vars)
        return AlgElement(A, coords, vars)
    raise FormatError(f"cannot read an element from {spec!r}")


def element_to_json(a: AlgElement, vars: Sequence[str]):
    """Expression string when it re-parses exactly, otherwise a coordinate map."""
    text = str(a)
    try:
        if a.algebra.parse_element(text, tuple(vars)) == a:
            return text
    except (AlgebraError, ValueError):
        pass
    return {lab: str(c) for lab, c in zip(a.algebra.labels, a.coords) if not c.is_zero()}


# -- orders ---------------------------------------------------------------

def load_order(obj, base: Optional[Path] = None) -> FreeCentralAlgebra:
    obj, base = _resolve(obj, base)
    if not isinstance(obj, dict) or "base" not in obj:
        raise FormatError("an order description needs a 'base' ring such as QQ[x]")
    R = parse_base_ring(obj["base"])
    try:
        if "corner" in obj:
            return corner_order(R, str(obj["corner"]))
        if "matrix" in obj:
            return matrix_order(R, int(obj["matrix"]))
        labels = obj["basis"]
        idx = {lab: i for i, lab in enumerate(labels)}
        consts: Dict[Tuple[int, int], Dict[int, object]] = {}
        for entry in obj.get("constants", []):
            if len(entry) != 4:
                raise FormatError(f"constant entry {entry} must be [b_i, b_j, b_k, polynomial]")
            i, j, k, c = entry
            for lab in (i, j, k):
                if lab not in idx:
                    raise FormatError(f"constant entry {entry} names unknown basis label {lab!r}")
            slot = consts.setdefault((idx[i], idx[j]), {})
            slot[idx[k]] = slot.get(idx[k], R.poly(0)) + R.poly(str(c))
        ident = [R.poly(0)] * len(labels)
        for lab, c in obj["identity"].items():
            ident[idx[lab]] = R.poly(str(c))
        return FreeCentralAlgebra(R, labels, consts, ident, name=obj.get("name", ""))
    except KeyError as exc:
        raise FormatError(f"malformed order description: missing {exc}") from None


def order_to_json(A: FreeCentralAlgebra) -> dict:
    consts = []
    for i in range(A.rank):
        for j in range(A.rank):
            for k, c in enumerate(A.table[i][j]):
                if not c.is_zero():
                    consts.append([A.labels[i], A.labels[j], A.labels[k], str(c)])
    out = {"base": A.ring.tag, "basis": list(A.labels), "constants": consts,
           "identity": {A.labels[i]: str(c) for i, c in enumerate(A.identity) if not c.is_zero()}}
    if A.name:
        out["name"] = A.name
    return out


# -- derivations ----------------------------------------------------------

def load_derivations(obj, base: Optional[Path] = None):
    """(algebra, ordinary derivations, higher derivations) from a derivation file."""
    obj, base = _resolve(obj, base)
    if "algebra" not in obj:
        raise FormatError("derivation file needs an 'algebra'")
    A = load_algebra(obj["algebra"], base)
    ders: List[Derivation] = []
    for n, d in enumerate(obj.get("derivations", [])):
        name = d.get("name", f"d{n + 1}")
        if "ad" in d:
            ders.append(ad(A.parse_element(str(d["ad"])), name=name))
        elif "images" in d:
            ders.append(make_derivation(A, {k: parse_element(A, v, ()) for k, v in d["images"].items()}, name))
        else:
            raise FormatError(f"derivation {name} needs 'ad' or 'images'")
    highers: List[HigherDerivation] = []
    for n, h in enumerate(obj.get("higher", [])):
        name = h.get("name", f"D{n + 1}")
        maps = [{k: parse_element(A, v, ()) for k, v in m.items()} for m in h["maps"]]
        highers.append(make_higher_derivation(A, maps, name))
    return A, ders, highers


def derivation_to_json(d: Derivation) -> dict:
    A = d.algebra
    imgs = {}
    for j, lab in enumerate(A.labels):
        v = d.apply_vec(A.basis_vec(j))
        if any(x != 0 for x in v):
            imgs[lab] = element_to_json(A.vec_element(v), ())
    return {"name": d.name, "images": imgs}


# -- witnesses ------------------------------------------------------------

def _images(A: StructAlgebra, B: StructAlgebra, block: dict, src_vars, tgt_vars, what: str):
    imgs = block.get("images", {})
    missing = [lab for lab in A.labels if lab not in imgs]
    unknown = [lab for lab in imgs if lab not in A.labels]
    if unknown:
        raise FormatError(f"{what}: unknown source basis labels {unknown}")
    if missing:
        raise FormatError(f"{what}: no image given for {missing}")
    vimgs = block.get("var_images", {})
    if sorted(vimgs) != sorted(src_vars):
        raise FormatError(f"{what}: var_images must cover exactly {list(src_vars)}")
    images = [parse_element(B, imgs[lab], tgt_vars) for lab in A.labels]
    var_images = [parse_element(B, vimgs[v], tgt_vars) for v in src_vars]
    return images, var_images


def load_witness(obj, base: Optional[Path] = None) -> HomWitness:
    obj, base = _resolve(obj, base)
    if not isinstance(obj, dict):
        raise FormatError("a witness must be a JSON object")
    schema = obj.get("schema", WITNESS_SCHEMA)
    if schema != WITNESS_SCHEMA:
        raise FormatError(f"unsupported witness schema {schema!r}")
    try:
        A = load_algebra(obj["source"], base)
        B = load_algebra(obj["target"], base) if "target" in obj else A
        sv = tuple(obj.get("source_vars", ["t"]))
        tv = tuple(obj.get("target_vars", ["s"]))
        images, var_images = _images(A, B, obj, sv, tv, "witness")
        inv = None
        if "inverse" in obj:
            iimg, ivar = _images(B, A, obj["inverse"], tv, sv, "inverse")
            inv = HomWitness(B, A, tv, sv, iimg, ivar, name=obj["inverse"].get("name", ""))
        return HomWitness(A, B, sv, tv, images, var_images, inverse=inv, name=obj.get("name", ""))
    except KeyError as exc:
        raise FormatError(f"witness is missing {exc}") from None
    except (AlgebraError, WitnessError) as exc:
        raise FormatError(str(exc)) from None


def witness_to_json(w: HomWitness) -> dict:
    same = w.source == w.target

    def block(x: HomWitness) -> dict:
        return {"images": {lab: element_to_json(img, x.target_vars) for lab, img in zip(x.source.labels, x.images)},
                "var_images": {v: element_to_json(img, x.target_vars)
                               for v, img in zip(x.source_vars, x.var_images)}}

    out = {"schema": WITNESS_SCHEMA, "source": algebra_to_json(w.source),
           "source_vars": list(w.source_vars), "target_vars": list(w.target_vars)}
    if not same:
        out["target"] = algebra_to_json(w.target)
    out.update(block(w))
    if w.name:
        out["name"] = w.name
    if w.inverse is not None:
        inv = block(w.inverse)
        if w.inverse.name:
            inv["name"] = w.inverse.name
        out["inverse"] = inv
    return out


def witnesses_equal(a: HomWitness, b: HomWitness) -> bool:
    def same(x, y):
        return (x.source == y.source and x.target == y.target and x.source_vars == y.source_vars
                and x.target_vars == y.target_vars and x.images == y.images and x.var_images == y.var_images)

    if not same(a, b):
        return False
    if (a.inverse is None) != (b.inverse is None):
        return False
    return a.inverse is None or same(a.inverse, b.inverse)


__all__ = ["FormatError", "WITNESS_SCHEMA", "sha256_file", "read_json", "dump_json",
           "load_algebra", "algebra_to_json", "parse_element", "element_to_json",
           "load_order", "order_to_json", "load_derivations", "derivation_to_json",
           "load_witness", "witness_to_json", "witnesses_equal"]
