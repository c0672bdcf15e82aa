"""Acceptance checks shared by the test suite and the ``verify-suite`` command."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from .automorphism import GradedAutomorphism
from .algebra import validate_algebra
from .errors import DecompositionMismatch
from .families import build_algebra, mat_add, mat_mul
from .fields import ONE, ZERO, Q, RatFun, format_scalar
from .ghost import (GhostElement, a_phi_element, center_of_even_part, central_subset_sum_element,
                    hc_image, invariance_failures, limit_to_center, minimal_component_count, projectivity_data,
                    projectivity_polynomial, semisimplicity_test, v_g_closed_form, v_g_generic_solve,
                    vandermonde_decompose)
from .hc import (atypicality_locus_test, check_degree_bound, clifford_poly_bH, coroot_polynomial,
                 rho_shifted_weyl_check, t_g_polynomial)
from .modules import (build_kac_module, dominant_grid, expected_kac_trace, graded_constant_check,
                      irreducible_quotient, is_irreducible, T_g_action_check, twisted_trace_poly)
from .pairs import diagonal_pair
from .pbw import default_borel, default_uea, named_ordering
from .superpoly import SuperPolynomial, product

BUILT_INS = ["gl(1|1)", "gl(2|1)", "gl(1|2)", "gl(2|2)", "sl(2|1)", "osp(1|2)", "osp(1|4)",
             "osp(2|2)", "osp(2|4)", "q(1)", "abelian(0|1)", "abelian(0|2)", "abelian(3|2)"]

LEVELS = {
    # quick keeps every check but shrinks the sampled sizes
    "quick": {"grid": 2, "random_elements": 40, "random_words": 100},
    "full": {"grid": 5, "random_elements": 200, "random_words": 500},
}


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number}. {self.title}"

    def to_dict(self, timing: bool = False) -> dict:
        out = {"number": self.number, "title": self.title, "passed": self.passed,
               "details": _jsonable(self.details)}
        if timing:
            out["seconds"] = round(self.seconds, 3)
        return out


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    if isinstance(x, SuperPolynomial):
        return str(x)
    return format_scalar(x)


# ---------------------------------------------------------------------------
# random inputs
# ---------------------------------------------------------------------------

def random_word(g, rng: random.Random, max_length: int) -> tuple:
    return tuple(rng.randrange(g.dim) for _ in range(rng.randint(0, max_length)))


def random_element(g, rng: random.Random, max_degree: int = 8, terms: int = 3, uea=None):
    U = uea or default_uea(g)
    total = U.zero()
    for _ in range(terms):
        coeff = Q(rng.randint(-5, 5), rng.randint(1, 4))
        if coeff:
            total = total + U.word(random_word(g, rng, max_degree), coeff)
    return total


def matrix_of_word(g, word) -> dict:
    even_dim, odd_dim, mats = g.representation
    size = even_dim + odd_dim
    out = {(i, i): ONE for i in range(size)}
    for i in word:
        out = mat_mul(out, mats[i])
    return out


def matrix_of_element(a) -> dict:
    g = a.algebra
    total = {}
    for m, c in a.terms.items():
        total = mat_add(total, matrix_of_word(g, a.uea.monomial_word(m)), scales=(1, c))
    return total


# ---------------------------------------------------------------------------
# criteria
# ---------------------------------------------------------------------------

def criterion_closed_forms(level="full") -> CriterionResult:
    names = [f"abelian(0|{n})" for n in range(1, 5)] + ["gl(1|1)", "gl(2|1)", "osp(1|2)", "osp(1|4)"]
    details, ok = {}, True
    for name in names:
        g = build_algebra(name)
        closed = v_g_closed_form(g)
        solved = v_g_generic_solve(g)
        ratio = closed.ratio_to(solved)
        cert = closed.certificate_failures()
        good = ratio is not None and ratio != 0 and not cert
        ok &= good
        details[name] = {"closed_form": str(closed.representative), "ratio_to_solver": ratio,
                         "certificate_failures": cert, "ok": good}
    return CriterionResult(1, "closed-form ghosts match the linear solver and pass the certificate", ok, details)


def criterion_semisimplicity(level="full") -> CriterionResult:
    expect = {"osp(1|2)": (True, Q(1)), "osp(1|4)": (True, Q(3)),
              "gl(1|1)": (False, ZERO), "gl(2|1)": (False, ZERO), "abelian(0|1)": (False, ZERO)}
    details, ok = {}, True
    for name, (semi, eps) in expect.items():
        r = semisimplicity_test(build_algebra(name))
        good = r.semisimple == semi and r.counit == eps
        ok &= good
        details[name] = {"semisimple": r.semisimple, "counit": r.counit, "ok": good}
    return CriterionResult(2, "semisimplicity criterion through the counit of v_g", ok, details)


def _zero_set_matches_atypical(g, p, radius):
    borel = default_borel(g)
    bad = []
    for lam in dominant_grid(g, radius, borel):
        if (p.evaluate(list(lam)) == 0) != atypicality_locus_test(lam, borel):
            bad.append(lam)
    return bad


def criterion_projectivity(level="full") -> CriterionResult:
    radius = LEVELS[level]["grid"]
    details, ok = {}, True
    g = build_algebra("gl(1|1)")
    p = projectivity_polynomial(g)
    h = SuperPolynomial.linear(g.cartan_names, [1, 1])
    ratio = p.ratio_to(h)
    bad = _zero_set_matches_atypical(g, p, radius)
    good = ratio is not None and ratio != 0 and not bad
    ok &= good
    details["gl(1|1)"] = {"p": str(p), "ratio_to_h1+h2": ratio, "grid_mismatches": bad, "ok": good}

    g = build_algebra("gl(2|1)")
    borel = default_borel(g)
    p = projectivity_polynomial(g)
    coroots = product([coroot_polynomial(borel, a) for a in borel.odd_positive], g.cartan_names)
    lead = p.leading_part()
    lead_ratio = lead.ratio_to(coroots)
    bad = _zero_set_matches_atypical(g, p, radius)
    hyperplanes = {}
    for a in borel.odd_positive:
        pts = [lam for lam in dominant_grid(g, radius, borel)
               if borel.pairing(tuple(x + r for x, r in zip(lam, borel.rho)), a) == 0]
        hyperplanes[str(a)] = {"points": len(pts), "vanishes": all(p.evaluate(list(l)) == 0 for l in pts)}
    good = (lead_ratio is not None and lead_ratio != 0 and not bad
            and all(v["points"] > 0 and v["vanishes"] for v in hyperplanes.values()))
    ok &= good
    details["gl(2|1)"] = {"p": str(p), "leading_ratio_to_coroot_product": lead_ratio,
                          "grid_mismatches": bad, "hyperplanes": hyperplanes, "ok": good}
    return CriterionResult(3, "projectivity polynomial and the atypical locus", ok, details)


def criterion_degree_bound(level="full", seed=0) -> CriterionResult:
    count = LEVELS[level]["random_elements"]
    rng = random.Random(seed)
    details, ok = {}, True
    for name in ["gl(1|1)", "gl(2|1)", "osp(1|2)", "q(1)"]:
        g = build_algebra(name)
        pair = None if g.is_cartan_even else diagonal_pair(g)
        failures = 0
        for _ in range(count):
            a = random_element(g, rng, 8)
            if not check_degree_bound(a, pair=pair):
                failures += 1
        ok &= failures == 0
        details[name] = {"samples": count, "failures": failures,
                         "route": "group" if pair is None else "diagonal pair"}
    return CriterionResult(4, "HC degree bound on random elements", ok, details)


def criterion_ghost_centre(level="full") -> CriterionResult:
    details, ok = {}, True
    for name in ["gl(1|1)", "gl(2|1)"]:
        g = build_algebra(name)
        borel = default_borel(g)
        tg = t_g_polynomial(borel)
        zs = center_of_even_part(g, 4)
        for phi in (GradedAutomorphism.delta(), GradedAutomorphism.scale(RatFun.c())):
            bad = []
            for k, z in enumerate(zs):
                p = a_phi_element(phi, z, borel=borel).hc_image
                if not (tg.divides(p) and rho_shifted_weyl_check(p, borel)):
                    bad.append(str(z))
            ok &= not bad
            details[f"{name} {phi.describe()}"] = {"centre_elements": len(zs), "failures": bad}
    return CriterionResult(5, "ghost-centre HC images divisible by t_g and shifted Weyl invariant", ok, details)


def gl11_vandermonde_input() -> GhostElement:
    g = build_algebra("gl(1|1)")
    U = default_uea(g)
    c = RatFun.c()
    u = U.word(("y", "x")) + (U.gen("h1") + U.gen("h2")).scale(c * (ONE - c).inverse())
    return GhostElement(u, GradedAutomorphism.scale(c), False)


def criterion_vandermonde(level="full") -> CriterionResult:
    u = gl11_vandermonde_input()
    member = not invariance_failures(u.automorphism, u.element)
    res2 = vandermonde_decompose(u, 2)
    try:
        vandermonde_decompose(u, 1)
        m1_fails, residual = False, None
    except DecompositionMismatch as exc:
        m1_fails, residual = True, str(exc.residual)
    report = minimal_component_count(u)
    kinds = [comp.automorphism.describe() for comp in res2.components]
    good = member and res2.exact and m1_fails and report["minimal_M"] == 2
    details = {
        "input": str(u.element),
        "in_A_c": member,
        "M=2": {"exact": res2.exact, "components": [str(c.element) for c in res2.components],
                "automorphisms": kinds, "coefficients": res2.coefficients},
        "M=1": {"fails": m1_fails, "residual": residual},
        "minimal_M": report["minimal_M"],
        "half_odd_dim": report["half_odd_dim"],
        "minimal_is_half_odd_dim": report["minimal_is_half_odd_dim"],
    }
    return CriterionResult(6, "Vandermonde decomposition of an A_c element of gl(1|1)", good, details)


def _ueas_proportional(a, b):
    a_terms, b_terms = a.terms, b.in_uea(a.uea).terms
    if set(a_terms) != set(b_terms) or not a_terms:
        return None
    m = next(iter(a_terms))
    r = a_terms[m] / b_terms[m]
    return r if all(a_terms[k] == r * b_terms[k] for k in a_terms) else None


def criterion_central_elements(level="full") -> CriterionResult:
    details, ok = {}, True
    for name in ["gl(1|1)", "gl(2|1)"]:
        g = build_algebra(name)
        borel = default_borel(g)
        z = central_subset_sum_element(g)       # raises unless central with HC ~ t_g
        tg = t_g_polynomial(borel)
        hc_ratio = hc_image(z, borel).ratio_to(tg)
        limit = limit_to_center(g, tg, borel)
        ratio = _ueas_proportional(limit, z)
        good = hc_ratio is not None and ratio is not None
        ok &= good
        details[name] = {"element": str(z), "hc_ratio_to_t_g": hc_ratio, "limit": str(limit),
                         "limit_ratio": ratio, "ok": good}
    return CriterionResult(7, "explicit central elements and the limit c -> 1", ok, details)


def _oracle_elements(g, borel):
    out = []
    for phi in (GradedAutomorphism.delta(), GradedAutomorphism.scale(RatFun.c())):
        for z in center_of_even_part(g, 1):
            a = a_phi_element(phi, z, borel=borel)
            out.append((phi, a.element, a.hc_image))
    z = central_subset_sum_element(g)
    out.append((GradedAutomorphism.identity(), z, hc_image(z, borel)))
    return out


def _twist_scalar(phi):
    if phi.kind == "delta":
        return -ONE
    if phi.kind == "scale":
        return phi.scalar
    return ONE


def _power(x, j):
    out = ONE
    for _ in range(j):
        out = out * x
    return out


def oracle_check_weight(g, lam, borel, elements, T, p) -> dict:
    """All representation-oracle checks at one dominant weight."""
    from .ghost import TWIST_EXPONENT

    typical = not atypicality_locus_test(lam, borel)
    K = build_kac_module(g, lam, borel)
    irreducible = is_irreducible(K)
    out = {"typical": typical, "kac_irreducible": irreducible, "ok": irreducible == typical}
    L = K if irreducible else irreducible_quotient(K)
    if typical:
        for phi, a, image in elements:
            res = graded_constant_check(a, K)
            if not res.ok:
                out["ok"] = False
                out.setdefault("graded_failures", []).append(str(a))
                continue
            value = image.evaluate(list(lam))
            s = _twist_scalar(phi)
            for d, scalar in res.scalars.items():
                j = int(-d)
                factor = _power(s, j) if TWIST_EXPONENT > 0 else _power(_inverse(s), j)
                if scalar != factor * value:
                    out["ok"] = False
                    out.setdefault("scalar_mismatches", []).append((str(a), d))
        trace = twisted_trace_poly(K)
        expected = expected_kac_trace(K.info["dim_L0"], len(g.g_plus))
        if trace != expected:
            out["ok"] = False
            out["trace"] = str(trace)
    report = T_g_action_check(L, T, p)
    out["T_g"] = report.classification
    if not report.consistent or (report.classification == "invertible") != typical:
        out["ok"] = False
    return out


def _inverse(x):
    return x.inverse() if hasattr(x, "inverse") else ONE / x


def criterion_representation_oracle(level="full") -> CriterionResult:
    radius = LEVELS[level]["grid"]
    details, ok = {}, True
    for name in ["gl(1|1)", "gl(2|1)"]:
        g = build_algebra(name)
        borel = default_borel(g)
        elements = _oracle_elements(g, borel)
        data = projectivity_data(g, borel)
        T, p = data.ghost.element, data.polynomial
        grid = dominant_grid(g, radius, borel)
        bad, typical_count = [], 0
        for lam in grid:
            r = oracle_check_weight(g, lam, borel, elements, T, p)
            typical_count += r["typical"]
            if not r["ok"]:
                bad.append({"weight": list(lam), **r})
        ok &= not bad
        details[name] = {"weights": len(grid), "typical": typical_count, "ghost_elements": len(elements),
                         "failures": bad[:5], "failure_count": len(bad)}
    return CriterionResult(8, "representation oracle on typical Kac modules", ok, details)


def criterion_appendix(level="full") -> CriterionResult:
    radius = LEVELS[level]["grid"]
    g = build_algebra("q(1)")
    data = projectivity_data(g)
    bh = clifford_poly_bH(g)
    h = SuperPolynomial.variable(g.cartan_names, "h")
    bh_ratio = bh.ratio_to(h)
    p = data.polynomial
    zeros = [x for x in range(-radius, radius + 1) if p.evaluate([Q(x)]) == 0]
    good = (bh_ratio is not None and bh_ratio != 0 and not p.is_zero()
            and p.degree() <= data.degree_bound and zeros == [0])
    details = {"b_H": str(bh), "p_1": str(data.p1), "p": str(p), "degree": p.degree(),
               "degree_bound": data.degree_bound, "zero_set_on_grid": zeros}
    return CriterionResult(9, "non-Cartan-even path for q(1)", good, details)


def criterion_engine(level="full", seed=0) -> CriterionResult:
    count = LEVELS[level]["random_words"]
    rng = random.Random(seed)
    details, ok = {}, True
    for name in ["gl(1|1)", "gl(2|1)"]:
        g = build_algebra(name)
        U = default_uea(g)
        mismatches = 0
        for _ in range(count):
            w = random_word(g, rng, 6)
            if matrix_of_word(g, w) != matrix_of_element(U.word(w)):
                mismatches += 1
        trips = 0
        for _ in range(20):
            a = random_element(g, rng, 6)
            b = a.reorder(named_ordering(g, "coset")).reorder(named_ordering(g, "kac")).reorder(U.ordering)
            trips += b.terms != a.terms
        ok &= mismatches == 0 and trips == 0
        details[name] = {"words": count, "matrix_mismatches": mismatches, "round_trip_failures": trips}
    invalid = [n for n in BUILT_INS if not validate_algebra(build_algebra(n)).ok]
    ok &= not invalid
    details["validation_failures"] = invalid
    return CriterionResult(10, "PBW engine against the supermatrix oracle", ok, details)


CRITERIA = [criterion_closed_forms, criterion_semisimplicity, criterion_projectivity,
            criterion_degree_bound, criterion_ghost_centre, criterion_vandermonde,
            criterion_central_elements, criterion_representation_oracle, criterion_appendix,
            criterion_engine]


def run_criterion(fn, level="full", seed=0) -> CriterionResult:
    t = time.perf_counter()
    kwargs = {"level": level}
    if "seed" in fn.__code__.co_varnames:
        kwargs["seed"] = seed
    try:
        res = fn(**kwargs)
    except Exception as exc:        # a crash counts as a failure of that criterion
        number = CRITERIA.index(fn) + 1
        res = CriterionResult(number, fn.__name__.replace("criterion_", "").replace("_", " "), False,
                              {"error": f"{type(exc).__name__}: {exc}"})
    res.seconds = time.perf_counter() - t
    return res


def verify_suite(level: str = "quick", seed: int = 0, only=None) -> list[CriterionResult]:
    if level not in LEVELS:
        raise ValueError(f"unknown level {level!r}; expected quick or full")
    chosen = CRITERIA if not only else [CRITERIA[i - 1] for i in only]
    return [run_criterion(fn, level, seed) for fn in chosen]
