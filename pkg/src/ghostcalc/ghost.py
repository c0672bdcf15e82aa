"""Ghost distributions: v_g, the twisted-invariant spaces A_phi and their HC images."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement

from .automorphism import GradedAutomorphism, fixed_point_free_on_odd
from .errors import (BudgetExceeded, CentralityError, DecompositionMismatch, GhostDimensionError,
                     InjectivityViolation, InvarianceError, MembershipError, NormalizationError,
                     Unsupported)
from .fields import ONE, ZERO, Q, RatFun, root_of_unity
from .fields import _pdivmod, _pgcd, _pmul
from .hc import (HCSplit, clifford_poly_bH, group_variables, hc_project_group, hc_project_pair,
                 split_top_odd, t_g_polynomial)
from .linalg import nullspace, rank, solve
from .pairs import diagonal_pair
from .pbw import (UEAElement, coset_ordering, default_borel, default_uea, reduce_mod_right_subalgebra,
                  twisted_adjoint, twisted_adjoint_monomial)
from .superpoly import SuperPolynomial


@dataclass
class CosetGhost:
    algebra: object
    representative: UEAElement      # coset ordering, odd monomials times scalars
    weight: tuple
    source: str = ""

    def certificate_failures(self) -> list:
        """Basis elements u with u * v_g not in U(g) g_0 (empty when valid)."""
        g = self.algebra
        bad = []
        for u in range(g.dim):
            prod = self.representative.lmul_gen(u)
            if not reduce_mod_right_subalgebra(prod, g.even_indices).is_zero():
                bad.append(g.basis[u].name)
        return bad

    def counit(self):
        return self.representative.counit()

    def ratio_to(self, other: "CosetGhost"):
        """Scalar r with self = r * other, or None."""
        a, b = self.representative.terms, other.representative.in_uea(self.representative.uea).terms
        if set(a) != set(b) or not a:
            return None
        m = next(iter(a))
        r = a[m] / b[m]
        return r if all(a[k] == r * b[k] for k in a) else None


@dataclass
class GhostElement:
    element: UEAElement
    automorphism: GradedAutomorphism
    certified: bool = False
    hc_image: object = None
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        hc = self.hc_image
        if isinstance(hc, HCSplit):
            hc_out = {"even_part": hc.even_part.to_json(), "xi": list(hc.xi)}
        elif hc is not None:
            hc_out = hc.to_json()
        else:
            hc_out = None
        return {
            "element": str(self.element),
            "terms": self.element.serialize(),
            "automorphism": self.automorphism.describe(),
            "certified": self.certified,
            "hc": hc_out,
            "notes": list(self.notes),
        }


# ---------------------------------------------------------------------------
# v_g
# ---------------------------------------------------------------------------

def _coset_uea(g):
    return g.uea(coset_ordering(g))


def _odd_weight_sum(g):
    n = len(g.cartan_even)
    w = [ZERO] * n
    for i in g.odd_indices:
        bw = g.basis[i].weight
        if bw is None:
            return None
        for k in range(n):
            w[k] += bw[k]
    return tuple(w)


def ber_obstructions(g) -> list:
    """Even basis vectors acting nontrivially on the top exterior power of g_1."""
    bad = []
    for x in g.even_indices:
        tr = ZERO
        for o in g.odd_indices:
            tr += g.bracket(x, o).get(o, ZERO)
        if tr != 0:
            bad.append(g.basis[x].name)
    return bad


def _odd_bracket_central(g) -> bool:
    for i in g.odd_indices:
        for j in g.odd_indices:
            br = g.bracket(i, j)
            if br and any(g.bracket_vec(br, {k: ONE}) for k in range(g.dim)):
                return False
    return True


def _type_one_hypothesis(g) -> bool:
    """[g_alpha, g_-alpha] acts trivially on the top power of the odd part for every odd weight alpha."""
    if not g.has_weights:
        return False
    plus = g.odd_indices
    for i in g.odd_indices:
        wi = g.basis[i].weight
        for j in g.odd_indices:
            if any(a + b != 0 for a, b in zip(wi, g.basis[j].weight)):
                continue
            tr = ZERO
            for h, c in g.bracket(i, j).items():
                for o in plus:
                    tr += c * g.bracket(h, o).get(o, ZERO)
            if tr != 0:
                return False
    return True


def _ordered_product(U, indices) -> UEAElement:
    return U.word(tuple(indices))


def covered_class(g) -> str | None:
    if g.family == "osp1":
        return "osp1"
    if g.is_type_one and _type_one_hypothesis(g):
        return "type-one"
    if _odd_bracket_central(g) and not ber_obstructions(g):
        return "central-odd"
    return None


def v_g_closed_form(g, borel=None) -> CosetGhost:
    """Closed-form ghost for the three covered classes, in coset normal form."""
    U = _coset_uea(g)
    kind = covered_class(g)
    if kind == "osp1":
        n = g.params[0]
        rep = U.one()
        for i in range(1, n + 1):
            t = U.word((f"u{i}", f"v{i}"))
            rep = rep * (t + Q(2 * i - 1))
    elif kind == "type-one":
        rep = _ordered_product(U, g.g_minus + g.g_plus)
    elif kind == "central-odd":
        rep = _ordered_product(U, g.odd_indices)
    else:
        raise Unsupported(f"{g.name} is outside the closed-form classes; use v_g_generic_solve")
    rep = reduce_mod_right_subalgebra(rep, g.even_indices)
    return CosetGhost(g, rep, _odd_weight_sum(g), source=kind)


def v_g_generic_solve(g) -> CosetGhost:
    """Solve u * v in U(g) g_0 for all u over the span of odd coset monomials."""
    bad = ber_obstructions(g)
    if bad:
        raise GhostDimensionError(f"top exterior power of the odd part is not trivial (acted on by {bad})", 0)
    U = _coset_uea(g)
    r = len(g.odd_indices)
    monos = [m for k in range(r + 1) for m in combinations(range(r), k)]
    col = {m: i for i, m in enumerate(monos)}
    even = g.even_indices
    rows = {}
    for u in range(g.dim):
        for m in monos:
            prod = UEAElement(U, {m: ONE}).lmul_gen(u)
            red = reduce_mod_right_subalgebra(prod, even)
            for mono, c in red.terms.items():
                rows.setdefault((u, mono), {})[col[m]] = c
    ns = nullspace(list(rows.values()), len(monos))
    if len(ns) != 1:
        raise GhostDimensionError(f"ghost solution space of {g.name} has dimension {len(ns)}", len(ns))
    vec = ns[0]
    top = col[tuple(range(r))]
    lead = vec.get(top, ZERO)
    if lead == 0:
        raise GhostDimensionError("solution has no top odd component")
    rep = U.element({monos[i]: c / lead for i, c in vec.items()})
    return CosetGhost(g, rep, _odd_weight_sum(g), source="solve")


def v_g(g) -> CosetGhost:
    cache = g._derived
    if "v_g" not in cache:
        try:
            cache["v_g"] = v_g_closed_form(g)
        except Unsupported:
            cache["v_g"] = v_g_generic_solve(g)
    return cache["v_g"]


@dataclass
class SemisimplicityReport:
    semisimple: bool
    counit: object
    reason: str

    def __bool__(self):
        return self.semisimple


def semisimplicity_test(g) -> SemisimplicityReport:
    bad = ber_obstructions(g)
    if bad:
        return SemisimplicityReport(False, None, f"Ber of the odd part is nontrivial (moved by {', '.join(bad)})")
    if not g.odd_indices:
        return SemisimplicityReport(True, ONE, "purely even")
    ghost = v_g(g)
    eps = ghost.counit()
    if eps != 0:
        return SemisimplicityReport(True, eps, "counit of v_g is nonzero")
    return SemisimplicityReport(False, eps, "counit of v_g vanishes")


# ---------------------------------------------------------------------------
# A_phi
# ---------------------------------------------------------------------------

def invariance_failures(phi, a: UEAElement) -> list:
    g = a.algebra
    return [g.basis[u].name for u in range(g.dim) if not twisted_adjoint(phi, u, a).is_zero()]


def hc_image(a: UEAElement, borel=None):
    g = a.algebra
    if g.is_cartan_even:
        return hc_project_group(a, borel)
    pair = diagonal_pair(g, borel)
    return group_variables(hc_project_pair(a, pair), g)


def a_phi_element(phi, z: UEAElement | None = None, g=None, borel=None, certify: bool = True) -> GhostElement:
    """ad_phi(v_g)(z) for z in the centre of U(g_0), certified phi-invariant."""
    if z is None:
        if g is None:
            raise ValueError("pass z or the algebra")
        z = default_uea(g).one()
    g = z.algebra
    if not fixed_point_free_on_odd(phi, g):
        raise Unsupported(f"{phi.describe()} has odd fixed points on {g.name}")
    seq = z.uea.ordering.sequence
    if any(g.is_odd(seq[p]) for m in z.terms for p in m):
        raise ValueError("z must lie in U(g_0)")
    ghost = v_g(g)
    gu = ghost.representative.uea
    result = z.uea.zero()
    for m, c in ghost.representative.terms.items():
        result = result + twisted_adjoint_monomial(phi, gu.monomial_word(m), z).scale(c)
    if not z.is_zero() and result.is_zero():
        raise InjectivityViolation("z -> ad_phi(v_g)(z) sent a nonzero element to zero")
    out = GhostElement(result, phi, False, None)
    if certify:
        bad = invariance_failures(phi, result)
        if bad:
            raise InvarianceError(f"ad_phi-invariance fails for generators {bad}", bad)
        out.certified = True
    out.hc_image = hc_image(result, borel)
    return out


# ---------------------------------------------------------------------------
# projectivity polynomial
# ---------------------------------------------------------------------------

@dataclass
class ProjectivityData:
    polynomial: SuperPolynomial
    ghost: GhostElement
    split: HCSplit | None = None
    p1: SuperPolynomial | None = None
    b_H: SuperPolynomial | None = None
    degree_bound: object = None


def projectivity_data(g, borel=None) -> ProjectivityData:
    borel = borel or default_borel(g)
    T = a_phi_element(GradedAutomorphism.delta(), g=g, borel=borel)
    if g.is_cartan_even:
        return ProjectivityData(T.hc_image, T)
    pair = diagonal_pair(g, borel)
    image = group_variables(hc_project_pair(T.element, pair), g)
    split = split_top_odd(image)
    p1 = split.even_part
    bh = clifford_poly_bH(g)
    p = p1 * bh
    # dim of the odd part of the Borel: odd positive root vectors plus odd Cartan
    bound = len([i for i in borel.nplus if g.is_odd(i)]) + len(g.cartan_odd)
    if p.degree() > bound:
        raise InvarianceError(f"projectivity polynomial of degree {p.degree()} exceeds {bound}")
    return ProjectivityData(p, T, split, p1, bh, bound)


def projectivity_polynomial(g, borel=None) -> SuperPolynomial:
    return projectivity_data(g, borel).polynomial


# ---------------------------------------------------------------------------
# centre of U(g_0) and solving in A_phi
# ---------------------------------------------------------------------------

def center_of_even_part(g, max_degree: int) -> list[UEAElement]:
    """Basis of the centre of U(g_0) in PBW degree <= max_degree."""
    key = ("centre", max_degree)
    if key in g._derived:
        return g._derived[key]
    U = default_uea(g)
    pos = U.ordering.position
    even = sorted(pos[i] for i in g.even_indices)
    n = len(g.cartan_even)
    seq = U.ordering.sequence

    def weight(m):
        w = [ZERO] * n
        for p in m:
            bw = g.basis[seq[p]].weight
            for k in range(n):
                w[k] += bw[k]
        return w

    monos = []
    for d in range(max_degree + 1):
        for m in combinations_with_replacement(even, d):
            if not g.has_weights or all(x == 0 for x in weight(m)):
                monos.append(m)
    rows = {}
    for j, m in enumerate(monos):
        elem = UEAElement(U, {m: ONE})
        for x in g.even_indices:
            comm = elem.lmul_gen(x) - elem.rmul_gen(x)
            for mono, c in comm.terms.items():
                rows.setdefault((x, mono), {})[j] = c
    ns = nullspace(list(rows.values()), len(monos))
    basis = [U.element({monos[i]: c for i, c in v.items()}) for v in ns]
    g._derived[key] = basis
    return basis


def _poly_rows(polys):
    keys = sorted({k for p in polys for k in p.terms})
    idx = {k: i for i, k in enumerate(keys)}
    return keys, idx


def _phi_key(phi):
    return (phi.kind, str(phi.scalar), phi.matrix)


def a_phi_family(g, phi, max_degree: int, borel=None) -> list[GhostElement]:
    """a_phi_element over the centre basis of U(g_0) up to max_degree (cached)."""
    cache = g._derived.setdefault("a_phi", {})
    out = []
    for z in center_of_even_part(g, max_degree):
        key = (_phi_key(phi), tuple(sorted((m, str(c)) for m, c in z.terms.items())))
        if key not in cache:
            cache[key] = a_phi_element(phi, z, borel=borel)
        out.append(cache[key])
    return out


def check_membership(g, target: SuperPolynomial, borel=None) -> None:
    """Raise MembershipError unless t_g divides the target (type-I basic algebras)."""
    if target.is_zero():
        return
    borel = borel or default_borel(g)
    if g.is_type_one and borel.form_inverse is not None:
        tg = t_g_polynomial(borel)
        if not tg.divides(target):
            raise MembershipError(f"target {target} is not divisible by t_g = {tg}")


def solve_in_A_phi(g, phi, target: SuperPolynomial, budget: int | None = None, borel=None) -> GhostElement:
    """The unique element of A_phi (within the degree budget) with HC image ``target``."""
    borel = borel or default_borel(g)
    check_membership(g, target, borel)
    U = default_uea(g)
    if target.is_zero():
        return GhostElement(U.zero(), phi, True, target)
    if budget is None:
        shift = 0
        if g.is_type_one and borel.form_inverse is not None:
            shift = t_g_polynomial(borel).even_degree()
        budget = max(0, target.even_degree() - shift)
    family = a_phi_family(g, phi, budget, borel)
    polys = [a.hc_image for a in family]
    keys, idx = _poly_rows(polys + [target])
    cols = [{idx[k]: v for k, v in p.terms.items()} for p in polys]
    # rows of the system: one per monomial key
    rows = [{} for _ in keys]
    for j, colv in enumerate(cols):
        for r, v in colv.items():
            rows[r][j] = v
    if rank(cols) != len(cols):
        raise InjectivityViolation("HC images of the A_phi family are linearly dependent")
    rhs = [target.terms.get(k, ZERO) for k in keys]
    sol = solve(rows, rhs, len(cols))
    if sol is None:
        raise BudgetExceeded(f"target not reached with centre elements of degree <= {budget}")
    elem = U.zero()
    for j, x in sol.items():
        elem = elem + family[j].element.scale(x)
    bad = invariance_failures(phi, elem)
    if bad:
        raise InvarianceError(f"combination fails ad_phi-invariance at {bad}", bad)
    image = hc_image(elem, borel)
    if image != target:
        raise InvarianceError("HC image of the solved element differs from the target")
    return GhostElement(elem, phi, True, image)


# ---------------------------------------------------------------------------
# centre elements
# ---------------------------------------------------------------------------

def centrality_failures(a: UEAElement) -> list:
    """Basis vectors whose supercommutator with a is nonzero."""
    g = a.algebra
    parts = list(a.split_parity().values())
    bad = []
    for x in range(g.dim):
        gen = a.uea.gen(x)
        if any(not part.commutator(gen).is_zero() for part in parts):
            bad.append(g.basis[x].name)
    return bad


def central_subset_sum_element(g, sign: str = "expanded", borel=None) -> UEAElement:
    """Alternating sum over subsets I of u_{I^c} V u~_I with V = v_1...v_N.

    ``sign="expanded"`` uses (-1)^{l + sum I}, the sign produced by expanding
    ad_c(u_1...u_N)(V) and letting c -> 1.  ``sign="displayed"`` uses
    (-1)^{N l + sum I}; the two agree for N = 1.
    """
    U = default_uea(g)
    if not g.odd_indices:
        return U.one()
    if not g.is_type_one:
        raise Unsupported(f"{g.name} has no type-I grading")
    if sign not in ("expanded", "displayed"):
        raise ValueError(f"unknown sign convention {sign!r}")
    us, vs = g.g_plus, g.g_minus
    N = len(us)
    V = U.word(vs)
    total = U.zero()
    for l in range(N + 1):
        for I in combinations(range(1, N + 1), l):
            e = (l if sign == "expanded" else N * l) + sum(I)
            comp = [i for i in range(1, N + 1) if i not in I]
            left = U.word([us[i - 1] for i in comp])
            right = U.word([us[i - 1] for i in reversed(I)])
            total = total + (left * V * right).scale(-1 if e % 2 else 1)
    bad = centrality_failures(total)
    if bad:
        raise CentralityError(f"subset-sum element fails to commute with {bad}", bad)
    borel = borel or default_borel(g)
    if borel.form_inverse is not None:
        image = hc_image(total, borel)
        if not image.is_proportional_to(t_g_polynomial(borel)):
            raise CentralityError(f"HC image {image} is not proportional to t_g")
    return total


def _evaluate_at_one(x):
    if isinstance(x, RatFun):
        try:
            return x.evaluate(ONE)
        except ZeroDivisionError:
            raise NormalizationError(f"coefficient {x} has a pole at c = 1") from None
    return x


def limit_to_center(g, p: SuperPolynomial, borel=None) -> UEAElement:
    """Limit c -> 1 of the element of A_c with HC image p; asserted central with HC = p."""
    U = default_uea(g)
    if p.is_zero():
        return U.zero()
    fam = solve_in_A_phi(g, GradedAutomorphism.scale(RatFun.c()), p, borel=borel)
    z = fam.element.map_coefficients(_evaluate_at_one)
    bad = centrality_failures(z)
    if bad:
        raise CentralityError(f"limit fails to commute with {bad}", bad)
    if hc_image(z, borel) != p:
        raise NormalizationError("limit element has the wrong HC image")
    return z


def product_into_twisted(a: GhostElement, b: GhostElement) -> GhostElement:
    """a in A_phi, b in A_psi  ->  ab in A_{psi o phi}, certified."""
    g = a.element.algebra
    chi = b.automorphism.compose(a.automorphism, g)
    prod = a.element * b.element
    bad = invariance_failures(chi, prod)
    if bad:
        raise InvarianceError(f"product fails invariance under {chi.describe()} at {bad}", bad)
    return GhostElement(prod, chi, True, hc_image(prod))


# ---------------------------------------------------------------------------
# Vandermonde decomposition of A_c elements
# ---------------------------------------------------------------------------

# elements of A_s act on module degree -j by s**(TWIST_EXPONENT * j) times HC(lambda)
TWIST_EXPONENT = -1


def _split_over_c(p: SuperPolynomial):
    """p = sum_k c^k / D(c) * w_k with w_k free of c; returns (D, [(k, w_k)])."""
    dens = [v.den for v in p.terms.values() if isinstance(v, RatFun)]
    D = (ONE,)
    for d in dens:
        g = _pgcd(D, d)
        D = _pmul(D, _pdivmod(d, g)[0])
    layers = {}
    for key, v in p.terms.items():
        if isinstance(v, RatFun):
            num = _pmul(v.num, _pdivmod(D, v.den)[0])
        else:
            num = _pmul((v,), D)
        for k, a in enumerate(num):
            if a != 0:
                layers.setdefault(k, {})[key] = a
    return D, [(k, p.like(t)) for k, t in sorted(layers.items())]


@dataclass
class VandermondeResult:
    components: list           # GhostElements, one per root of unity zeta^i
    coefficients: list         # a_i
    M: int
    exact: bool
    residual: UEAElement | None = None


def _solve_vandermonde(s, M: int):
    zetas = [root_of_unity(M, i) for i in range(M)]
    rows, rhs = [], []
    for j in range(M):
        # the module-degree -j equation: sum_i a_i (zeta^i)^(-j) = s^(-j)
        rows.append({i: _inv_power(zetas[i], j) for i in range(M)})
        rhs.append(ONE if j == 0 else _inv_power(s, j))
    sol = solve(rows, rhs, M)
    return [sol.get(i, ZERO) for i in range(M)], zetas


def _inv_power(x, j):
    if j == 0:
        return ONE
    inv = x.inverse() if hasattr(x, "inverse") else ONE / x
    out = inv
    for _ in range(j - 1):
        out = out * inv
    return out


def vandermonde_decompose(u: GhostElement, M: int, borel=None, strict: bool = True) -> VandermondeResult:
    """Split u in A_s into components in A_{zeta_M^i} and verify the reconstruction."""
    g = u.element.algebra
    phi = u.automorphism
    U = default_uea(g)
    if phi.kind == "identity":
        comps = [u] + [GhostElement(U.zero(), GradedAutomorphism.scale(root_of_unity(M, i)) if M > 1 else phi,
                                    True, None) for i in range(1, M)]
        return VandermondeResult(comps, [ONE] + [ZERO] * (M - 1), M, True)
    if phi.kind == "delta":
        s = -ONE
    elif phi.kind == "scale":
        s = phi.scalar
    else:
        raise Unsupported("Vandermonde decomposition needs a scale or delta automorphism")
    p = u.hc_image if u.hc_image is not None else hc_image(u.element, borel)
    D, layers = _split_over_c(p)
    coeffs, zetas = _solve_vandermonde(s, M)
    comps = []
    for i in range(M):
        comp = U.zero()
        for k, w in layers:
            if i == 0:
                base = limit_to_center(g, w, borel)
            else:
                base = solve_in_A_phi(g, _scale_or_delta(zetas[i]), w, borel=borel).element
            weight = RatFun((ZERO,) * k + (ONE,), D) if (k or len(D) > 1) else ONE
            comp = comp + base.scale(weight)
        auto = GradedAutomorphism.identity() if i == 0 else _scale_or_delta(zetas[i])
        comps.append(GhostElement(comp.scale(coeffs[i]), auto, True, None))
    total = U.zero()
    for comp in comps:
        total = total + comp.element
    residual = u.element - total
    exact = residual.is_zero()
    for comp in comps:
        if not comp.element.is_zero():
            bad = invariance_failures(comp.automorphism, comp.element)
            if bad:
                raise InvarianceError(f"component in A_{comp.automorphism.describe()} fails at {bad}", bad)
            comp.hc_image = hc_image(comp.element, borel)
    result = VandermondeResult(comps, coeffs, M, exact, None if exact else residual)
    if strict and not exact:
        raise DecompositionMismatch(f"reconstruction with M = {M} leaves a nonzero residual", residual)
    return result


def _scale_or_delta(z):
    if z == -1:
        return GradedAutomorphism.delta()
    return GradedAutomorphism.scale(z)


def minimal_component_count(u: GhostElement, max_M: int | None = None, borel=None) -> dict:
    """Smallest M with exact reconstruction, compared with dim g_1 / 2."""
    g = u.element.algebra
    max_M = max_M or len(g.g_minus) + 1
    attempts = {}
    minimal = None
    for M in range(1, max_M + 1):
        res = vandermonde_decompose(u, M, borel, strict=False)
        attempts[M] = res.exact
        if res.exact and minimal is None:
            minimal = M
    half = Q(len(g.odd_indices), 2)
    return {
        "attempts": attempts,
        "minimal_M": minimal,
        "default_M": len(g.g_minus) + 1,
        "half_odd_dim": half,
        "minimal_is_half_odd_dim": minimal is not None and minimal == half,
    }
