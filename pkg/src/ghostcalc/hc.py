"""Harish-Chandra projections and the polynomials built from root data."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotCartanEven, NotGhostImage, Unsupported
from .fields import ONE, ZERO, Q
from .linalg import det
from .pairs import IwasawaPairPresentation, check_presentation
from .pbw import UEAElement, default_borel
from .roots import BorelChoice
from .superpoly import SuperPolynomial, product


@dataclass
class HCSplit:
    even_part: SuperPolynomial     # p_gamma, no odd variables
    xi: tuple                      # names of the odd variables in the top monomial

    def reconstruct(self) -> SuperPolynomial:
        p = self.even_part
        odd_idx = tuple(range(len(self.xi)))
        terms = {(e, odd_idx): c for (e, _), c in p.terms.items()}
        return SuperPolynomial(p.even_vars, self.xi, terms)


def _poly_from_block(a: UEAElement, start: int, stop: int, even_vars, odd_vars, n_even: int) -> SuperPolynomial:
    """Keep monomials supported on positions [start, stop); the first n_even are even."""
    terms = {}
    for m, c in a.terms.items():
        if all(start <= p < stop for p in m):
            exps = [0] * len(even_vars)
            odd = []
            for p in m:
                r = p - start
                if r < n_even:
                    exps[r] += 1
                else:
                    odd.append(r - n_even)
            terms[(tuple(exps), tuple(odd))] = c
    return SuperPolynomial(even_vars, odd_vars, terms)


def hc_project_group(a: UEAElement, borel: BorelChoice | None = None) -> SuperPolynomial:
    """Projection U(g) -> S(h) along n^- U(g) + U(g) n^+ (no rho shift)."""
    g = a.algebra
    if not g.is_cartan_even:
        raise NotCartanEven(f"{g.name} is not Cartan-even; use hc_project_pair")
    borel = borel or default_borel(g)
    b = a.reorder(borel.hc_ordering())
    start = len(borel.nminus)
    stop = start + len(borel.zero_block)
    return _poly_from_block(b, start, stop, g.cartan_names, (), len(g.cartan_even))


def hc_project_pair(a: UEAElement, pair: IwasawaPairPresentation) -> SuperPolynomial:
    """Projection along n U + U k onto the supersymmetric algebra on a."""
    check_presentation(pair)
    if a.algebra is not pair.host:
        a = pair.embed(a)
    b = a.in_uea(pair.uea())
    start = len(pair.n)
    stop = start + len(pair.a)
    return _poly_from_block(b, start, stop, pair.a_even_names, pair.a_odd_names, len(pair.a_even))


def group_variables(pair_poly: SuperPolynomial, g) -> SuperPolynomial:
    """Rename a.<h> variables of the diagonal pair to the Cartan names of g."""
    strip = lambda names: tuple(n[2:] if n.startswith("a.") else n for n in names)
    return pair_poly.rename(strip(pair_poly.even_vars), strip(pair_poly.odd_vars))


def coroot_polynomial(borel: BorelChoice, alpha, shift=ZERO) -> SuperPolynomial:
    h = borel.coroots.get(tuple(alpha))
    if h is None:
        raise Unsupported(f"no coroot recorded for {alpha}")
    return SuperPolynomial.linear(borel.algebra.cartan_names, h, shift)


def t_g_polynomial(borel: BorelChoice) -> SuperPolynomial:
    """prod over odd positive roots of (h_alpha + (rho, alpha))."""
    g = borel.algebra
    if borel.form_inverse is None:
        raise Unsupported(f"{g.name} has no invariant form")
    factors = [coroot_polynomial(borel, a, borel.pairing(borel.rho, a)) for a in borel.odd_positive]
    return product(factors, g.cartan_names)


def atypicality_locus_test(lam, borel: BorelChoice) -> bool:
    """True iff (lam + rho, alpha) = 0 for an isotropic odd positive root alpha."""
    if borel.form_inverse is None:
        raise Unsupported(f"{borel.algebra.name} has no invariant form")
    shifted = tuple(Q(x) + r for x, r in zip(lam, borel.rho))
    for a in dict.fromkeys(borel.odd_positive):
        if borel.is_isotropic(a) and borel.pairing(shifted, a) == 0:
            return True
    return False


def clifford_poly_bH(g) -> SuperPolynomial:
    """det(lambda([u_i, u_j])) over the odd Cartan basis, as a polynomial on h_0."""
    names = g.cartan_names
    odd = g.cartan_odd
    if not odd:
        return SuperPolynomial.constant(names, ONE)
    rows = []
    for i in odd:
        row = []
        for j in odd:
            br = g.bracket(i, j)
            if any(k not in g.cartan_even for k in br):
                raise Unsupported("odd Cartan brackets leave the even Cartan part")
            row.append(SuperPolynomial.linear(names, [br.get(k, ZERO) for k in g.cartan_even]))
        rows.append(row)
    result = det(rows)
    if not isinstance(result, SuperPolynomial):
        result = SuperPolynomial.constant(names, result)
    return result


def split_top_odd(p: SuperPolynomial) -> HCSplit:
    """Write p = p_gamma * xi with xi the ordered product of all odd variables."""
    top = tuple(range(len(p.odd_vars)))
    even_terms = {}
    for (e, o), c in p.terms.items():
        if o != top:
            raise NotGhostImage("image is not divisible by the top odd monomial")
        even_terms[(e, ())] = c
    return HCSplit(SuperPolynomial(p.even_vars, (), even_terms), p.odd_vars)


def check_degree_bound(a: UEAElement, pair: IwasawaPairPresentation | None = None,
                       borel: BorelChoice | None = None) -> bool:
    """deg HC(a) <= filtration_degree(a) / 2, odd variables counting 1/2."""
    if a.is_zero():
        return True
    if pair is None:
        image = hc_project_group(a, borel)
    else:
        image = hc_project_pair(a, pair)
    return image.degree() <= Q(a.filtration_degree(), 2)


def rho_shifted_weyl_check(p: SuperPolynomial, borel: BorelChoice) -> bool:
    """p(w.lam) = p(lam) for every simple even reflection w (rho-shifted action)."""
    g = borel.algebra
    if borel.form_inverse is None:
        raise Unsupported(f"no Weyl group action implemented for {g.name}")
    names = g.cartan_names
    if p.even_vars != names:
        raise ValueError("polynomial is not written in the Cartan variables of the algebra")
    n = len(names)
    for alpha in borel.simple_even_roots():
        aa = borel.pairing(alpha, alpha)
        if aa == 0:
            raise Unsupported("isotropic even root")
        beta = [sum((borel.form_inverse[i][j] * alpha[j] for j in range(n)), ZERO) for i in range(n)]
        # (lam + rho, alpha) as a linear polynomial in the h-variables
        pair_lin = SuperPolynomial.linear(names, beta, borel.pairing(borel.rho, alpha))
        images = {}
        for k in range(n):
            hk = SuperPolynomial.variable(names, names[k])
            images[names[k]] = hk - pair_lin.scale(2 * alpha[k] / aa)
        if p.substitute(images) != p:
            return False
    return True


def evaluate_at_weight(p: SuperPolynomial, lam):
    return p.evaluate([Q(x) for x in lam])
