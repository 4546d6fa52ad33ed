"""Command-line front end.

Every command prints a short human summary on stdout and, with ``--out``,
writes a canonical JSON report (sorted keys, schema version, SHA-256 of each
input).  Exit codes: 0 success, 2 input error, 3 refuted verification,
4 only inconclusive results.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Dict, List, Optional

from . import __version__
from .algcore import (AlgebraError, center_basis, central_idempotents, certify_radical, is_unit,
                      jacobson_radical_vectors, poly_extension)
from .azudisc import (AzumayaError, extension_invariance_check, is_central_simple, non_azumaya_locus,
                      pi_degree_estimate)
from .derivations import (DerivationError, exp_automorphism, hs_automorphism, is_locally_nilpotent,
                          ml_over_family)
from .formats import (FormatError, dump_json, element_to_json, load_algebra, load_derivations, load_order,
                      load_witness, read_json, sha256_file, witness_to_json)
from .quiverpath import (QuiverError, center_bruteforce, center_closed_form, centers_agree, detect_shape,
                         growth_class, parse_quiver, path_counts)
from .witness import (WitnessError, check_detectability, check_retraction, check_z_retraction, verify_hom,
                      verify_iso)

SCHEMA_VERSION = "ncalg.report/1"
EXIT_OK, EXIT_INPUT, EXIT_REFUTED, EXIT_INCONCLUSIVE = 0, 2, 3, 4
_STATUS = {EXIT_OK: "ok", EXIT_INPUT: "input-error", EXIT_REFUTED: "refuted", EXIT_INCONCLUSIVE: "inconclusive"}


class InputError(Exception):
    pass


class Report:
    def __init__(self, command: str, argv: List[str]):
        self.command = command
        self.argv = argv
        self.inputs: Dict[str, str] = {}
        self.result: Dict[str, object] = {}
        self.lines: List[str] = []
        self.code = EXIT_OK

    def add_input(self, path: str):
        self.inputs[Path(path).name] = sha256_file(path)

    def say(self, line: str):
        self.lines.append(line)

    def worst(self, code: int):
        # refuted outranks inconclusive, which outranks success
        rank = {EXIT_OK: 0, EXIT_INCONCLUSIVE: 1, EXIT_REFUTED: 2, EXIT_INPUT: 3}
        if rank[code] > rank[self.code]:
            self.code = code

    def to_json(self):
        return {"schema": SCHEMA_VERSION, "version": __version__, "command": self.command,
                "argv": self.argv, "inputs": self.inputs, "result": self.result,
                "status": _STATUS[self.code], "exit_code": self.code}


# -- helpers --------------------------------------------------------------

def _read_text(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _is_json(text: str) -> bool:
    return text.lstrip().startswith("{")


def _vecs_json(A, vecs) -> List[str]:
    return [str(A.vec_element(v)) for v in vecs]


# -- commands -------------------------------------------------------------

def cmd_center(args, rep: Report):
    text = _read_text(args.input)
    rep.add_input(args.input)
    if _is_json(text):
        A = load_algebra(json.loads(text), Path(args.input).parent)
        Z = center_basis(A)
        rep.result.update({"kind": "algebra", "dimension": len(Z), "basis": [str(z) for z in Z]})
        rep.say(f"center of {A.name or 'algebra'}: dimension {len(Z)}, basis {', '.join(map(str, Z))}")
        return
    q = parse_quiver(text)
    # neither flag: run both; one flag: run only that method
    neither = not args.closed_form and args.degree is None
    want_closed = args.closed_form or neither
    want_brute = args.degree is not None or neither
    degree = args.degree if args.degree is not None else 3 * len(q.vertices)
    shapes = detect_shape(q)
    rep.result["kind"] = "quiver"
    rep.result["shapes"] = [str(s) for s in shapes["components"]]
    rep.result["connected"] = shapes["connected"]
    cf = center_closed_form(q)
    if want_closed:
        rep.result["closed_form"] = str(cf)
        rep.say(f"closed form: {cf}")
    if not want_brute:
        return
    bf = center_bruteforce(q, degree)
    dims = bf.dimensions(degree)
    rep.result["degree"] = degree
    rep.result["bruteforce_dimensions"] = dims
    rep.result["bruteforce_basis"] = {str(d): [str(e) for e in bf.by_degree[d]] for d in range(degree + 1)
                                     if bf.by_degree[d]}
    rep.say(f"brute-force center dimensions by degree 0..{degree}: {dims}")
    if want_closed and want_brute:
        agree = centers_agree(q, degree) and cf.dimensions(degree) == dims
        rep.result["agreement"] = agree
        rep.say(f"agreement: {str(agree).lower()}")
        if not agree:
            rep.say("invariant breach: closed form and brute force disagree")
            rep.worst(EXIT_REFUTED)


def cmd_growth(args, rep: Report):
    rep.add_input(args.input)
    q = parse_quiver(_read_text(args.input))
    g = growth_class(q, args.depth)
    counts = path_counts(q, args.counts)
    rep.result.update({"growth": g.kind, "gk_degree": g.degree, "empirical": g.empirical,
                       "path_counts": counts})
    rep.say(f"growth: {g}")
    rep.say(f"paths of length 0..{args.counts}: {counts}")


def cmd_analyze(args, rep: Report):
    rep.add_input(args.input)
    A = load_algebra(read_json(args.input), Path(args.input).parent)
    every = not (args.radical or args.idempotents or args.units_probe)
    rep.result["algebra"] = {"name": A.name, "field": A.field.tag, "dimension": A.dim}
    J = None
    if args.radical or every or args.units_probe:
        J = jacobson_radical_vectors(A)
    if args.radical or every:
        cert = certify_radical(A, J)
        rep.result["radical"] = {"basis": _vecs_json(A, J), "dimension": len(J),
                                 "nilpotency_index": cert.nilpotency_index,
                                 "quotient_semisimple": cert.quotient_semisimple, "certificate": cert.method}
        rep.say(f"radical: dimension {len(J)}, basis [{', '.join(_vecs_json(A, J))}], "
                f"J^{cert.nilpotency_index} = 0")
    if args.idempotents or every:
        ci = central_idempotents(A, seed=args.seed)
        r = len(ci).bit_length() - 1
        rep.result["central_idempotents"] = {"count": len(ci), "primitive_count": r,
                                             "elements": [str(e) for e in ci]}
        rep.say(f"central idempotents: {len(ci)} = 2^{r}: {{{', '.join(map(str, ci))}}}")
    if args.units_probe or every:
        E = poly_extension(A, 1)
        t = E.t(0)
        probes = [("1 + t*j", A.one(E.vars) + t * A.element(j, E.vars)) for j in J]
        probes += [(lab, b) for lab, b in zip(A.labels, E.basis())]
        out = []
        for label, a in probes:
            res = is_unit(a)
            entry = {"element": str(a), "unit": res.is_unit, "determinant": str(res.determinant)}
            if res.inverse is not None:
                entry["inverse"] = str(res.inverse)
                entry["t_degree"] = res.inverse.degree("t")
            out.append(entry)
        positive = [e for e in out if e.get("t_degree", 0) > 0]
        rep.result["units_probe"] = {"probes": out, "units_with_positive_t_degree": len(positive)}
        rep.say(f"units probe: {sum(e['unit'] for e in out)} of {len(out)} probes are units; "
                f"{len(positive)} with inverse of positive t-degree")


def _parse_points(text: Optional[str], field):
    if not text:
        return None
    try:
        return [field(p.strip()) for p in text.split(",") if p.strip()]
    except (ValueError, ZeroDivisionError):
        raise InputError(f"bad --sample-points value {text!r}") from None


def cmd_azumaya(args, rep: Report):
    rep.add_input(args.input)
    A = load_order(read_json(args.input), Path(args.input).parent)
    rep.result["order"] = {"name": A.name, "base": A.ring.tag, "rank": A.rank}
    pts = _parse_points(args.sample_points, A.field)
    loc = non_azumaya_locus(A, pts)
    rep.result["locus"] = loc.to_json()
    rep.result["locus_points"] = [str(r) for r in loc.roots]
    d = loc.discriminant
    rep.say(f"discriminant: raw {d.raw}; normalized {d.normalized}; squarefree {d.squarefree}")
    rep.say(f"non-Azumaya polynomial: {loc.polynomial}; roots in {A.field.tag}: "
            f"{{{', '.join(map(str, loc.roots))}}}")
    for p, ok in sorted(loc.fibers.items(), key=lambda kv: A.field(kv[0])):
        rep.say(f"  fiber at x = {p}: {'central simple' if ok else 'not central simple'}")
    try:
        rep.result["pi_degree"] = pi_degree_estimate(A)
    except AzumayaError as exc:
        rep.result["pi_degree"] = None
        rep.say(f"PI degree: not determined ({exc})")
    if args.extension_check:
        ok = extension_invariance_check(A, args.extension_check)
        rep.result["extension_check"] = {"n": args.extension_check, "holds": ok}
        rep.say(f"extension check n={args.extension_check}: {'invariant holds' if ok else 'invariant FAILS'}")
        if not ok:
            rep.worst(EXIT_REFUTED)


def _membership_json(res):
    if getattr(res, "found", False):
        return {"status": "certificate", "length": res.length, "expression": str(res.expression),
                "terms": res.expression.to_json()}
    return {"status": "not-found", "bound": res.bound, "stabilized": res.stabilized, "span_dim": res.span_dim}


def cmd_witness(args, rep: Report):
    rep.add_input(args.input)
    w = load_witness(read_json(args.input), Path(args.input).parent)
    hom = verify_hom(w)
    rep.result["hom"] = hom.to_json()
    rep.say(f"homomorphism: {'VERIFIED' if hom.ok else 'FAILED'}")
    for c in hom.failures():
        rep.say(f"  {c.name}: {c.detail}")
    if not hom.ok:
        rep.say("not a homomorphism")
        rep.worst(EXIT_REFUTED)
        return
    if w.inverse is not None:
        iso = verify_iso(w)
        rep.result["iso"] = iso.to_json()
        rep.say(f"isomorphism: {iso.verdict}")
        if not iso.ok:
            for c in iso.compositions + (iso.backward.failures() if iso.backward else []):
                if not c.ok:
                    rep.say(f"  {c.name}: {c.detail}")
            rep.say("not an isomorphism")
            rep.worst(EXIT_REFUTED)
            return
        r = check_retraction(w)
        z = check_z_retraction(w)
        rep.result["retraction"] = r.to_json()
        rep.result["z_retraction"] = z.to_json()
        rep.say(f"retraction: {'witnessed' if r.holds else 'refuted for this witness'}"
                + ("" if r.holds else f" (witness {r.witness}: {r.detail})"))
        rep.say(f"Z-retraction: {'witnessed' if z.holds else 'refuted for this witness'}"
                + ("" if z.holds else f" ({z.detail})"))
    else:
        rep.result["iso"] = {"verdict": "NO-INVERSE"}
        rep.say("isomorphism: no inverse supplied; retraction checks skipped")
    det = check_detectability(w, args.detect_bound)
    rep.result["detectability"] = {s: _membership_json(res) for s, res in det.items()}
    for s, res in det.items():
        if res.found:
            rep.say(f"detectability {s}: certificate {s} = {res.expression} (length {res.length})")
        elif res.stabilized:
            rep.say(f"detectability {s}: not in B{{phi(t)}} (span closed at dimension {res.span_dim})")
            rep.worst(EXIT_REFUTED)
        else:
            rep.say(f"detectability {s}: not found up to length {res.bound}")
            rep.worst(EXIT_INCONCLUSIVE)


def cmd_derivation(args, rep: Report):
    rep.add_input(args.input)
    A, ders, highers = load_derivations(read_json(args.input), Path(args.input).parent)
    rep.result["algebra"] = {"name": A.name, "field": A.field.tag, "dimension": A.dim}
    rows = []
    for d in ders:
        nil = is_locally_nilpotent(d)
        rows.append({"name": d.name, "leibniz": True, "locally_nilpotent": nil.nilpotent, "index": nil.index})
        rep.say(f"{d.name}: Leibniz verified; " + (f"locally nilpotent, index {nil.index}" if nil
                                                    else "not locally nilpotent"))
    rep.result["derivations"] = rows
    hrows = []
    for h in highers:
        res = hs_automorphism(h)
        hrows.append({"name": h.name, "hasse_schmidt": True, "G": [element_to_json(i, ("t",)) for i in res.witness.images],
                      "automorphism": res.automorphism, "determinant": str(res.determinant)})
        rep.say(f"{h.name}: Hasse-Schmidt identity verified; G is "
                f"{'an automorphism' if res.automorphism else 'not an automorphism'}")
    rep.result["higher_derivations"] = hrows
    if args.exp:
        pick = [d for d in ders if d.name == args.exp] if args.exp is not True else ders[:1]
        if not pick:
            raise InputError(f"no derivation named {args.exp!r}")
        res = exp_automorphism(pick[0])
        wj = witness_to_json(res.witness)
        rep.result["exp"] = {"derivation": pick[0].name, "verdict": res.report.verdict, "witness": wj}
        rep.say(f"exp({pick[0].name}, t): {res.report.verdict}")
        if args.witness_out:
            Path(args.witness_out).write_text(dump_json(wj))
            rep.say(f"witness written to {args.witness_out}")
    if args.ml_family:
        ml = ml_over_family(A, list(ders) + list(highers))
        rep.result["ml_relative_to_family"] = {"ML": [str(e) for e in ml.ml], "ML_Z": [str(e) for e in ml.ml_z]}
        rep.say(f"ML relative to family: span{{{', '.join(map(str, ml.ml))}}}")
        rep.say(f"ML_Z relative to family: span{{{', '.join(map(str, ml.ml_z))}}}")


# -- entry point ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ncalg", description="Exact computations with finite-dimensional "
                                "algebras, path algebras, orders and polynomial-extension witnesses.")
    p.add_argument("--version", action="version", version=f"ncalg {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the JSON report to this path")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized splitting (default 0)")
    common.add_argument("--json", action="store_true", help="print the JSON report instead of the summary")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("center", parents=[common], help="center of a quiver path algebra or an algebra")
    c.add_argument("input")
    c.add_argument("--degree", type=int, help="brute-force degree bound (default 3 * #vertices)")
    c.add_argument("--closed-form", action="store_true", help="report the closed form and compare")
    c.set_defaults(func=cmd_center)

    g = sub.add_parser("growth", parents=[common], help="growth of a path algebra")
    g.add_argument("input")
    g.add_argument("--depth", type=int, help="probe depth for the empirical method")
    g.add_argument("--counts", type=int, default=10, help="list path counts up to this length")
    g.set_defaults(func=cmd_growth)

    a = sub.add_parser("analyze", parents=[common], help="radical, central idempotents, units")
    a.add_argument("input")
    a.add_argument("--radical", action="store_true")
    a.add_argument("--idempotents", action="store_true")
    a.add_argument("--units-probe", action="store_true")
    a.set_defaults(func=cmd_analyze)

    z = sub.add_parser("azumaya", parents=[common], help="discriminant and non-Azumaya locus of an order")
    z.add_argument("input")
    z.add_argument("--sample-points", help="comma-separated points for fiber checks")
    z.add_argument("--extension-check", type=int, metavar="N", help="check invariance over k[x, t1..tN]")
    z.set_defaults(func=cmd_azumaya)

    w = sub.add_parser("witness", parents=[common], help="verify a homomorphism witness")
    w.add_argument("input")
    w.add_argument("--detect-bound", type=int, default=4, help="word-length bound for detectability")
    w.set_defaults(func=cmd_witness)

    d = sub.add_parser("derivation", parents=[common], help="derivations, exp, ML relative to a family")
    d.add_argument("input")
    d.add_argument("--exp", nargs="?", const=True, metavar="NAME",
                   help="exp(d, t) of the named (default first) derivation")
    d.add_argument("--witness-out", help="write the exp witness file here")
    d.add_argument("--ml-family", action="store_true", help="ML and ML_Z relative to all listed maps")
    d.set_defaults(func=cmd_derivation)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    rep = Report(args.command, argv)
    try:
        args.func(args, rep)
    except (InputError, FormatError, QuiverError, AlgebraError, AzumayaError, DerivationError,
            WitnessError, ValueError) as exc:
        rep.code = EXIT_INPUT
        rep.result["error"] = str(exc)
        rep.say(f"error: {exc}")
    except OSError as exc:
        rep.code = EXIT_INPUT
        rep.result["error"] = f"cannot read {exc.filename}: {exc.strerror}"
        rep.say(f"error: {rep.result['error']}")
    if args.out:
        Path(args.out).write_text(dump_json(rep.to_json()))
    if args.json:
        sys.stdout.write(dump_json(rep.to_json()))
    else:
        stream = sys.stderr if rep.code == EXIT_INPUT else sys.stdout
        for line in rep.lines:
            print(line, file=stream)
    return rep.code


if __name__ == "__main__":
    sys.exit(main())
