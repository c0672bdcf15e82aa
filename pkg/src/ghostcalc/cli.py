"""Command-line front end: ``ghostcalc VERB [options]``.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time

from .algebra import LieSuperalgebra, validate_algebra
from .automorphism import GradedAutomorphism
from .errors import FieldMismatch, GhostCalcError, NotDominant, ParseError, UnsupportedAlgebra
from .families import build_algebra
from .fields import Field, format_scalar
from .ghost import (GhostElement, a_phi_element, central_subset_sum_element, covered_class, hc_image,
                    invariance_failures, limit_to_center, minimal_component_count, projectivity_data,
                    semisimplicity_test, solve_in_A_phi, v_g, v_g_generic_solve, vandermonde_decompose)
from .hc import clifford_poly_bH, hc_project_group, hc_project_pair, group_variables, t_g_polynomial
from .modules import (T_g_action_check, build_kac_module, graded_constant_check, is_irreducible,
                      irreducible_quotient, twisted_trace_poly, check_brackets, highest_weight_irreducible)
from .pairs import diagonal_pair
from .parsing import parse_element
from .roots import make_borel
from .superpoly import SuperPolynomial, rational_factorization

VERBS = ["algebra-info", "validate", "vg", "aphi", "ppoly", "hc", "tg", "bh", "zfull-decompose",
         "central-element", "limit-center", "semisimple", "kac", "check-graded", "ptrace", "tg-action",
         "verify-suite"]


class UsageError(Exception):
    pass


class VerificationFailure(Exception):
    def __init__(self, message, results=None):
        super().__init__(message)
        self.results = results


# ---------------------------------------------------------------------------
# argument handling
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ghostcalc", description="Exact ghost-centre computations for small Lie superalgebras.")
    p.add_argument("verb", choices=VERBS)
    p.add_argument("--algebra", default="gl(1|1)", help="built-in name such as gl(2|1) or gl,2,1, or a JSON file")
    p.add_argument("--field", default=None, help="Q, cyclotomic:M or ratfun-c")
    p.add_argument("--borel", default="standard", help="'standard' or a JSON file with a positivity vector")
    p.add_argument("--ordering", default="hc", choices=["hc", "coset", "kac", "basis"])
    p.add_argument("--json", action="store_true", help="print the full JSON report")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--grid", type=int, default=None, help="radius of the dominant weight grid")
    p.add_argument("--element", help="element expression")
    p.add_argument("--element-file", help="file holding an element expression or serialized element")
    p.add_argument("--phi", default="delta", help="identity, delta, c, scale:VALUE or matrix:a,b;c,d")
    p.add_argument("--z", default="1", help="element of the centre of U(g_0) for aphi")
    p.add_argument("--target", help="HC target polynomial in the Cartan generators")
    p.add_argument("--M", type=int, default=None, help="number of Vandermonde components")
    p.add_argument("--weight", help="highest weight, comma separated")
    p.add_argument("--level", default="quick", choices=["quick", "full"])
    p.add_argument("--solve", action="store_true", help="vg: use the linear solver")
    p.add_argument("--timing", action="store_true", help="include wall-clock timings (not byte-stable)")
    return p


def load_algebra(spec: str) -> LieSuperalgebra:
    if spec.endswith(".json") and os.path.exists(spec):
        with open(spec) as fh:
            return LieSuperalgebra.from_json(json.load(fh))
    return build_algebra(spec)


def load_borel(g, spec: str):
    if spec == "standard":
        return make_borel(g, "standard")
    if not os.path.exists(spec):
        raise UsageError(f"--borel expects 'standard' or a JSON file, got {spec!r}")
    with open(spec) as fh:
        data = json.load(fh)
    vec = data["positivity"] if isinstance(data, dict) else data
    return make_borel(g, [_q(x) for x in vec])


def _q(x):
    from .fields import Q

    return Q(str(x))


def parse_phi(text: str, field: Field) -> GradedAutomorphism:
    t = text.strip()
    if t == "identity":
        return GradedAutomorphism.identity()
    if t == "delta":
        return GradedAutomorphism.delta()
    if t == "c":
        return GradedAutomorphism.scale(field.parameter())
    if t.startswith("scale:") or (t.startswith("scale(") and t.endswith(")")):
        from .parsing import parse_scalar

        return GradedAutomorphism.scale(parse_scalar(t[6:].rstrip(")") if t[5] == "(" else t[6:], field))
    if t.startswith("matrix:"):
        rows = [[_q(x) for x in r.split(",")] for r in t[7:].split(";")]
        return GradedAutomorphism.from_matrix(rows)
    raise UsageError(f"unknown automorphism {text!r}")


def default_field(args, phi_text=None) -> Field:
    if args.field:
        return Field.parse(args.field)
    if phi_text == "c" or args.verb in ("limit-center",):
        return Field.parse("ratfun-c")
    return Field.parse("Q")


def read_element(args, g, field):
    text = args.element
    if args.element_file:
        with open(args.element_file) as fh:
            raw = fh.read()
        try:
            data = json.loads(raw)
        except json.JSONDecodeError:
            text = raw.strip()
        else:
            from .parsing import parse_serialized

            return parse_serialized(data, g, field)
    if text is None:
        raise UsageError("this verb needs --element or --element-file")
    return parse_element(text, g, field, args.ordering)


def polynomial_from_text(text: str, g, field) -> SuperPolynomial:
    """Parse a polynomial in the Cartan generators (they commute in U(g))."""
    a = parse_element(text, g, field, "hc")
    seq = a.uea.ordering.sequence
    names = g.cartan_names
    pos = {c: k for k, c in enumerate(g.cartan_even)}
    terms = {}
    for m, c in a.terms.items():
        exps = [0] * len(names)
        for p in m:
            i = seq[p]
            if i not in pos:
                raise UsageError(f"target must only involve Cartan generators {', '.join(names)}")
            exps[pos[i]] += 1
        terms[(tuple(exps), ())] = c
    return SuperPolynomial(names, (), terms)


def parse_weight(text: str | None, g):
    if text is None:
        raise UsageError("this verb needs --weight")
    parts = [x for x in text.replace("|", ",").split(",") if x.strip()]
    if len(parts) != len(g.cartan_even):
        raise UsageError(f"--weight needs {len(g.cartan_even)} coordinates")
    return tuple(_q(x.strip()) for x in parts)


# ---------------------------------------------------------------------------
# verbs
# ---------------------------------------------------------------------------

def _ghost_json(x: GhostElement) -> dict:
    return x.to_dict()


def cmd_algebra_info(args, g, field, borel):
    return {
        "name": g.name,
        "dimension": {"even": len(g.even_indices), "odd": len(g.odd_indices)},
        "basis": [{"name": b.name, "parity": "odd" if b.parity else "even", "z_degree": b.z_degree,
                   "weight": None if b.weight is None else [format_scalar(x) for x in b.weight]}
                  for b in g.basis],
        "type_one": g.is_type_one,
        "cartan_even": g.is_cartan_even,
        "ghost_class": covered_class(g),
        "borel": borel.to_dict() if borel is not None else None,
    }


def cmd_validate(args, g, field, borel):
    report = validate_algebra(g)
    out = report.to_dict()
    if not report.ok:
        raise VerificationFailure("algebra validation failed", out)
    return out


def cmd_vg(args, g, field, borel):
    ghost = v_g_generic_solve(g) if args.solve else v_g(g)
    cert = ghost.certificate_failures()
    out = {"element": str(ghost.representative), "terms": ghost.representative.serialize(),
           "source": ghost.source, "certified": not cert, "certificate_failures": cert,
           "counit": format_scalar(ghost.counit()),
           "weight": None if ghost.weight is None else [format_scalar(x) for x in ghost.weight]}
    if cert:
        raise VerificationFailure("ghost certificate failed", out)
    return out


def cmd_aphi(args, g, field, borel):
    phi = parse_phi(args.phi, field)
    if args.target:
        res = solve_in_A_phi(g, phi, polynomial_from_text(args.target, g, field), borel=borel)
    else:
        z = parse_element(args.z, g, field, "hc")
        res = a_phi_element(phi, z, borel=borel)
    return _ghost_json(res)


def cmd_ppoly(args, g, field, borel):
    data = projectivity_data(g, borel)
    out = {"polynomial": data.polynomial.to_json(), "cartan_even": g.is_cartan_even,
           "ghost": str(data.ghost.element), "factorization": rational_factorization(data.polynomial)}
    if data.split is not None:
        out.update({"p1": data.p1.to_json(), "b_H": data.b_H.to_json(),
                    "degree_bound": data.degree_bound})
    return out


def cmd_hc(args, g, field, borel):
    a = read_element(args, g, field)
    if g.is_cartan_even:
        image = hc_project_group(a, borel)
        route = "group"
    else:
        image = group_variables(hc_project_pair(a, diagonal_pair(g, borel)), g)
        route = "diagonal pair"
    return {"element": str(a), "route": route, "hc": image.to_json()}


def cmd_tg(args, g, field, borel):
    return {"t_g": t_g_polynomial(borel).to_json(), "rho": [format_scalar(x) for x in borel.rho]}


def cmd_bh(args, g, field, borel):
    return {"b_H": clifford_poly_bH(g).to_json(), "odd_cartan": [g.basis[i].name for i in g.cartan_odd]}


def cmd_zfull(args, g, field, borel):
    a = read_element(args, g, field)
    phi = parse_phi(args.phi, field)
    bad = invariance_failures(phi, a)
    if bad:
        raise VerificationFailure(f"input is not ad_phi-invariant (fails at {bad})", {"failures": bad})
    u = GhostElement(a, phi, True)
    M = args.M or len(g.g_minus) + 1
    res = vandermonde_decompose(u, M, borel, strict=False)
    report = minimal_component_count(u, borel=borel)
    out = {
        "element": str(a), "M": M, "exact": res.exact,
        "components": [{"automorphism": c.automorphism.describe(), "element": str(c.element)}
                       for c in res.components],
        "coefficients": [format_scalar(x) for x in res.coefficients],
        "residual": None if res.residual is None else str(res.residual),
        "minimal_M": report["minimal_M"],
        "attempts": {str(k): v for k, v in report["attempts"].items()},
        "half_odd_dim": format_scalar(report["half_odd_dim"]),
        "minimal_is_half_odd_dim": report["minimal_is_half_odd_dim"],
    }
    if not res.exact:
        raise VerificationFailure(f"reconstruction with M = {M} is not exact", out)
    return out


def cmd_central(args, g, field, borel):
    z = central_subset_sum_element(g, borel=borel)
    return {"element": str(z), "terms": z.serialize(), "certified": True, "hc": hc_image(z, borel).to_json()}


def cmd_limit(args, g, field, borel):
    target = polynomial_from_text(args.target, g, field) if args.target else t_g_polynomial(borel)
    z = limit_to_center(g, target, borel)
    return {"target": str(target), "element": str(z), "terms": z.serialize(), "certified": True}


def cmd_semisimple(args, g, field, borel):
    r = semisimplicity_test(g)
    return {"semisimple": r.semisimple, "counit": None if r.counit is None else format_scalar(r.counit),
            "reason": r.reason}


def _module(args, g, borel):
    lam = parse_weight(args.weight, g)
    if g.is_type_one:
        return build_kac_module(g, lam, borel)
    return highest_weight_irreducible(g, lam, borel)


def cmd_kac(args, g, field, borel):
    M = _module(args, g, borel)
    out = M.to_dict()
    out["irreducible"] = is_irreducible(M)
    out["bracket_failures"] = [list(x) for x in check_brackets(M)]
    if out["bracket_failures"]:
        raise VerificationFailure("module fails the bracket relations", out)
    return out


def cmd_check_graded(args, g, field, borel):
    M = _module(args, g, borel)
    a = read_element(args, g, field)
    res = graded_constant_check(a, M)
    out = {"module": M.label, "element": str(a), **res.to_dict()}
    if not res.ok:
        raise VerificationFailure("element does not act by graded constants", out)
    return out


def cmd_ptrace(args, g, field, borel):
    M = _module(args, g, borel)
    if not is_irreducible(M):
        M = irreducible_quotient(M)
    return {"module": M.label, **twisted_trace_poly(M).to_dict(),
            "graded_dimensions": {str(k): v for k, v in M.graded_dimensions().items()}}


def cmd_tg_action(args, g, field, borel):
    M = _module(args, g, borel)
    if not is_irreducible(M):
        M = irreducible_quotient(M)
    r = T_g_action_check(M)
    out = {"module": M.label, "dimension": M.dim, **r.to_dict()}
    if not r.consistent:
        raise VerificationFailure("T_g action disagrees with the projectivity polynomial", out)
    return out


def cmd_verify(args, g, field, borel):
    from .verify import LEVELS, verify_suite

    if args.grid is not None:
        LEVELS[args.level] = dict(LEVELS[args.level], grid=args.grid)
    results = verify_suite(args.level, args.seed)
    out = {"level": args.level, "criteria": [r.to_dict(args.timing) for r in results],
           "lines": [r.line() for r in results]}
    if not all(r.passed for r in results):
        raise VerificationFailure("verification suite failed", out)
    return out


HANDLERS = {
    "algebra-info": cmd_algebra_info, "validate": cmd_validate, "vg": cmd_vg, "aphi": cmd_aphi,
    "ppoly": cmd_ppoly, "hc": cmd_hc, "tg": cmd_tg, "bh": cmd_bh, "zfull-decompose": cmd_zfull,
    "central-element": cmd_central, "limit-center": cmd_limit, "semisimple": cmd_semisimple,
    "kac": cmd_kac, "check-graded": cmd_check_graded, "ptrace": cmd_ptrace, "tg-action": cmd_tg_action,
    "verify-suite": cmd_verify,
}

NEEDS_BOREL = {"algebra-info", "aphi", "ppoly", "hc", "tg", "zfull-decompose", "central-element",
               "limit-center", "kac", "check-graded", "ptrace", "tg-action"}


def _summary(verb, result) -> str:
    if verb == "verify-suite":
        return "\n".join(result["lines"])
    lines = []
    for key in ("element", "polynomial", "t_g", "b_H", "hc", "semisimple", "text", "classification"):
        if key in result:
            v = result[key]
            if isinstance(v, dict) and "text" in v:
                v = v["text"]
            lines.append(f"{key}: {v}")
    return "\n".join(lines) or json.dumps(result, sort_keys=True, default=format_scalar)


def run(argv=None, out=sys.stdout, err=sys.stderr) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.perf_counter()
    report = {"command": {"verb": args.verb, "argv": list(argv) if argv is not None else sys.argv[1:]}}
    code = 0
    try:
        random.seed(args.seed)
        field = default_field(args, args.phi if args.verb in ("aphi", "zfull-decompose") else None)
        g = None if args.verb == "verify-suite" else load_algebra(args.algebra)
        borel = load_borel(g, args.borel) if g is not None and args.verb in NEEDS_BOREL and g.has_weights else None
        if g is not None:
            report["algebra"] = {"name": g.name, "fingerprint": g.fingerprint()}
        report["field"] = str(field)
        result = HANDLERS[args.verb](args, g, field, borel)
        report["results"] = result
        report["ok"] = True
    except VerificationFailure as exc:
        report.update({"ok": False, "error": str(exc), "results": exc.results})
        code = 1
    except (UsageError, ParseError, UnsupportedAlgebra, FieldMismatch, NotDominant, ValueError, KeyError,
            OSError) as exc:
        report.update({"ok": False, "error": f"{type(exc).__name__}: {exc}"})
        code = 2
    except GhostCalcError as exc:
        report.update({"ok": False, "error": f"{type(exc).__name__}: {exc}"})
        code = 1
    if args.timing:
        report["timing_seconds"] = round(time.perf_counter() - start, 3)
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True, default=format_scalar), file=out)
    elif code == 0:
        print(_summary(args.verb, report["results"]), file=out)
    else:
        if report.get("results") and args.verb == "verify-suite":
            print(_summary(args.verb, report["results"]), file=out)
        print(f"error: {report['error']}", file=err)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
