"""Finite-dimensional graded modules used as an independent check on ghost elements.

Action matrices are sparse: ``gens[u]`` maps a column index to the sparse
image vector of that basis vector under generator ``u``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement

from .errors import NotDominant, OracleViolation, Unsupported
from .fields import ONE, ZERO, Q, RatFun, format_scalar, to_q
from .fields import _pdivmod, _pgcd, _pmul
from .linalg import Echelon, rank, vec_add
from .pbw import UEAElement, default_borel, kac_ordering


@dataclass
class GradedModule:
    algebra: object
    degrees: list
    parities: list
    weights: list
    gens: list                       # one sparse matrix per algebra basis vector
    highest_weight: tuple
    label: str = ""
    info: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.degrees)

    def graded_dimensions(self) -> dict:
        out = {}
        for d in self.degrees:
            out[d] = out.get(d, 0) + 1
        return dict(sorted(out.items(), reverse=True))

    def apply_gen(self, u: int, vec: dict, coeff=ONE) -> dict:
        out = {}
        cols = self.gens[u]
        for j, x in vec.items():
            img = cols.get(j)
            if img:
                vec_add(out, img, x * coeff)
        return out

    def apply_word(self, word, vec: dict) -> dict:
        """Rightmost generator acts first."""
        for u in reversed(word):
            if not vec:
                break
            vec = self.apply_gen(u, vec)
        return vec

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "dimension": self.dim,
            "highest_weight": [format_scalar(x) for x in self.highest_weight],
            "graded_dimensions": {str(k): v for k, v in self.graded_dimensions().items()},
            "info": self.info,
        }


# ---------------------------------------------------------------------------
# acting with enveloping algebra elements
# ---------------------------------------------------------------------------

def _rational_layers(a: UEAElement):
    """a = sum_k c^k / D * a_k with rational a_k; returns (D, {k: terms})."""
    dens = [v.den for v in a.terms.values() if isinstance(v, RatFun)]
    if not dens:
        return None, {0: a.terms}
    D = (ONE,)
    for d in dens:
        D = _pmul(D, _pdivmod(d, _pgcd(D, d))[0])
    layers = {}
    for m, v in a.terms.items():
        num = _pmul(v.num, _pdivmod(D, v.den)[0]) if isinstance(v, RatFun) else _pmul((v,), D)
        for k, x in enumerate(num):
            if x != 0:
                layers.setdefault(k, {})[m] = x
    return D, layers


def _act_terms(terms: dict, uea, M: GradedModule, vec: dict) -> dict:
    seq = uea.ordering.sequence
    memo = {(): vec}

    def suffix(m):
        r = memo.get(m)
        if r is None:
            r = M.apply_gen(seq[m[0]], suffix(m[1:]))
            memo[m] = r
        return r

    out = {}
    for m, c in terms.items():
        img = suffix(m)
        if img:
            vec_add(out, img, c)
    return out


def act(a: UEAElement, M: GradedModule) -> list:
    """Matrix of a on M as a list of sparse columns (rational coefficients only)."""
    if any(isinstance(v, RatFun) for v in a.terms.values()):
        raise Unsupported("use act_layers for coefficients in c")
    return [_act_terms(a.terms, a.uea, M, {j: ONE}) for j in range(M.dim)]


def act_layers(a: UEAElement, M: GradedModule):
    """(D, {k: columns}) with the matrix of a equal to sum_k c^k/D * columns_k."""
    D, layers = _rational_layers(a)
    return D, {k: [_act_terms(t, a.uea, M, {j: ONE}) for j in range(M.dim)] for k, t in layers.items()}


def act_on_vector(a: UEAElement, M: GradedModule, vec: dict) -> dict:
    return _act_terms(a.terms, a.uea, M, vec)


def check_brackets(M: GradedModule) -> list:
    """Pairs (x, y) where rho(x)rho(y) -/+ rho(y)rho(x) != rho([x, y])."""
    g = M.algebra
    bad = []
    for x in range(g.dim):
        for y in range(x, g.dim):
            sign = -1 if g.is_odd(x) and g.is_odd(y) else 1
            br = g.bracket(x, y)
            for j in range(M.dim):
                e = {j: ONE}
                lhs = M.apply_gen(x, M.apply_gen(y, e))
                vec_add(lhs, M.apply_gen(y, M.apply_gen(x, e)), -sign)
                for k, c in br.items():
                    vec_add(lhs, M.apply_gen(k, e), -c)
                if lhs:
                    bad.append((g.basis[x].name, g.basis[y].name))
                    break
    return bad


def check_degree_shifts(M: GradedModule) -> list:
    g = M.algebra
    bad = []
    for u in range(g.dim):
        d = g.basis[u].z_degree
        for j, img in M.gens[u].items():
            if any(M.degrees[i] != M.degrees[j] + d for i in img):
                bad.append(g.basis[u].name)
                break
    return bad


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def _even_chain(g, lam, borel):
    """Irreducible g_0-module of highest weight lam for g_0 = Cartan (+ one sl(2))."""
    n = len(g.cartan_even)
    zero = set(g.z_block(0)) if g.is_type_one else set(g.even_indices)
    ep = [i for i in borel.nplus if i in zero]
    em = [i for i in borel.nminus if i in zero]
    if not ep:
        return [tuple(lam)], {}, None
    if len(ep) != 1 or len(em) != 1:
        raise Unsupported(f"even part of {g.name} has more than one positive root")
    e, f = ep[0], em[0]
    alpha = g.basis[e].weight
    H = g.bracket(e, f)
    if any(k not in g.cartan_even for k in H):
        raise Unsupported("[e, f] is not in the Cartan subalgebra")
    pos = {c: k for k, c in enumerate(g.cartan_even)}
    lamH = sum((lam[pos[k]] * c for k, c in H.items()), ZERO)
    alphaH = sum((alpha[pos[k]] * c for k, c in H.items()), ZERO)
    d = 2 * lamH / alphaH
    if d.denominator != 1 or d < 0:
        raise NotDominant(f"highest weight {tuple(format_scalar(x) for x in lam)} is not dominant integral")
    d = int(d)
    weights = [tuple(lam[i] - k * alpha[i] for i in range(n)) for k in range(d + 1)]
    # f w_k = w_{k+1};  e w_k = (k lam(H) - alpha(H) k(k-1)/2) w_{k-1}
    action = {f: {k: {k + 1: ONE} for k in range(d)},
              e: {k: {k - 1: k * lamH - alphaH * Q(k * (k - 1), 2)} for k in range(1, d + 1)}}
    return weights, action, (e, f)


def _straightening_table(g):
    """u * v_I in the kac ordering, reduced modulo terms containing g_1 (lambda independent)."""
    cache = g._derived.get("kac_table")
    if cache is not None:
        return cache
    U = g.uea(kac_ordering(g))
    seq = U.ordering.sequence
    minus = g.g_minus
    plus = set(g.g_plus)
    subsets = [I for k in range(len(minus) + 1) for I in combinations(range(len(minus)), k)]
    pos_of = {U.ordering.position[minus[i]]: i for i in range(len(minus))}
    table = {}
    for I in subsets:
        base = U.word([minus[i] for i in I])
        for u in range(g.dim):
            prod = base.lmul_gen(u)
            rows = []
            for m, c in prod.terms.items():
                word = [seq[p] for p in m]
                if any(x in plus for x in word):
                    continue
                J = tuple(pos_of[p] for p in m if p in pos_of)
                even = tuple(x for x in word if x not in minus)
                rows.append((J, even, c))
            table[(u, I)] = rows
    g._derived["kac_table"] = (subsets, table)
    return subsets, table


def build_kac_module(g, lam, borel=None) -> GradedModule:
    """Lambda(g_{-1}) tensor L_0(lam) with the induced action."""
    if not g.is_type_one:
        raise Unsupported(f"{g.name} has no type-I grading")
    borel = borel or default_borel(g)
    lam = tuple(to_q(x) for x in lam)
    if len(lam) != len(g.cartan_even):
        raise ValueError(f"weight needs {len(g.cartan_even)} coordinates")
    l0_weights, l0_action, _ = _even_chain(g, lam, borel)
    cartan_pos = {c: k for k, c in enumerate(g.cartan_even)}

    def act_even(word, k):
        vec = {k: ONE}
        for x in reversed(word):
            out = {}
            for j, a in vec.items():
                if x in cartan_pos:
                    w = l0_weights[j][cartan_pos[x]]
                    if w != 0:
                        vec_add(out, {j: w}, a)
                else:
                    img = l0_action.get(x, {}).get(j)
                    if img:
                        vec_add(out, img, a)
            vec = out
            if not vec:
                break
        return vec

    subsets, table = _straightening_table(g)
    d0 = len(l0_weights)
    index = {(I, k): n for n, (I, k) in enumerate((I, k) for I in subsets for k in range(d0))}
    n_c = len(g.cartan_even)
    degrees, parities, weights = [], [], []
    for I in subsets:
        shift = [ZERO] * n_c
        for i in I:
            bw = g.basis[g.g_minus[i]].weight
            for t in range(n_c):
                shift[t] += bw[t]
        for k in range(d0):
            degrees.append(-len(I))
            parities.append(len(I) % 2)
            weights.append(tuple(l0_weights[k][t] + shift[t] for t in range(n_c)))
    gens = []
    for u in range(g.dim):
        cols = {}
        for I in subsets:
            rows = table[(u, I)]
            for k in range(d0):
                img = {}
                for J, even, c in rows:
                    for k2, a in act_even(even, k).items():
                        vec_add(img, {index[(J, k2)]: ONE}, c * a)
                if img:
                    cols[index[(I, k)]] = img
        gens.append(cols)
    M = GradedModule(g, degrees, parities, weights, gens, lam,
                     label=f"Kac{tuple(format_scalar(x) for x in lam)}")
    M.info["dim_L0"] = d0
    return M


def _verma_depth(g, borel, i):
    eta = borel.positivity
    w = g.basis[i].weight
    return -sum((a * b for a, b in zip(w, eta)), ZERO)


def truncated_verma(g, lam, depth, borel=None) -> GradedModule:
    """Span of n^- monomials of depth <= depth applied to the highest weight vector.

    Images leaving the truncation are dropped, so only the low-depth part of
    the action is exact.
    """
    borel = borel or default_borel(g)
    if not g.is_cartan_even:
        raise Unsupported("highest weight modules need a Cartan-even algebra")
    lam = tuple(to_q(x) for x in lam)
    order = borel.hc_ordering()
    U = g.uea(order)
    seq = order.sequence
    nminus_pos = [order.position[i] for i in borel.nminus]
    depth_of = {p: _verma_depth(g, borel, seq[p]) for p in nminus_pos}
    unit = min(depth_of.values()) if depth_of else ONE
    monos = []
    max_len = int(depth / unit) if depth_of else 0
    for length in range(max_len + 1):
        for m in combinations_with_replacement(nminus_pos, length):
            if any(g.is_odd(seq[p]) and m.count(p) > 1 for p in set(m)):
                continue
            if sum((depth_of[p] for p in m), ZERO) <= depth:
                monos.append(m)
    monos.sort(key=lambda m: (sum((depth_of[p] for p in m), ZERO), m))
    index = {m: i for i, m in enumerate(monos)}
    n0 = len(borel.nminus)
    ncart = len(borel.zero_block)
    cart_pos = {n0 + t: g.cartan_even.index(seq[n0 + t]) for t in range(ncart)}
    n_c = len(g.cartan_even)
    weights, parities = [], []
    for m in monos:
        w = list(lam)
        for p in m:
            bw = g.basis[seq[p]].weight
            for t in range(n_c):
                w[t] += bw[t]
        weights.append(tuple(w))
        parities.append(sum(g.parity(seq[p]) for p in m) % 2)
    gens = []
    for u in range(g.dim):
        cols = {}
        for m in monos:
            prod = UEAElement(U, {m: ONE}).lmul_gen(u)
            img = {}
            for mono, c in prod.terms.items():
                low = tuple(p for p in mono if p < n0)
                rest = mono[len(low):]
                if any(p >= n0 + ncart for p in rest):
                    continue
                val = c
                for p in rest:
                    val = val * lam[cart_pos[p]]
                if val != 0 and low in index:
                    vec_add(img, {index[low]: ONE}, val)
            if img:
                cols[index[m]] = img
        gens.append(cols)
    degrees = [-sum((depth_of[p] for p in m), ZERO) for m in monos]
    M = GradedModule(g, degrees, parities, weights, gens, lam, label=f"Verma<={depth}")
    M.info["depth"] = depth
    return M


# ---------------------------------------------------------------------------
# irreducible quotients
# ---------------------------------------------------------------------------

def _covector_pullback(M, u, f: dict) -> dict:
    """The covector v -> f(rho(u) v)."""
    out = {}
    for j, img in M.gens[u].items():
        s = ZERO
        for i, x in img.items():
            y = f.get(i)
            if y is not None:
                s += x * y
        if s != 0:
            out[j] = s
    return out


def _covector_span(M, start: int = 0):
    """Reduced basis of the smallest rho^T-stable space containing the start covector."""
    blocks = {}
    queue = [{start: ONE}]
    found = []
    while queue:
        f = queue.pop()
        j = next(iter(f))
        key = (M.weights[j], M.degrees[j])
        ech = blocks.setdefault(key, Echelon())
        if ech.add(f) is None:
            continue
        found.append(key)
        for u in range(M.algebra.dim):
            h = _covector_pullback(M, u, f)
            if h:
                queue.append(h)
    basis = []
    for key in sorted(blocks, key=lambda k: (-k[1], tuple(-x for x in k[0]))):
        for p in sorted(blocks[key].rows):
            basis.append((key, p, blocks[key].rows[p]))
    return basis


def irreducible_quotient(M: GradedModule, start: int = 0) -> GradedModule:
    """M modulo its largest submodule missing the basis vector ``start``."""
    basis = _covector_span(M, start)
    where = {}
    for n, (key, p, row) in enumerate(basis):
        where[(key, p)] = n
    gens = []
    for u in range(M.algebra.dim):
        cols = {}
        for i, (key, p, row) in enumerate(basis):
            h = _covector_pullback(M, u, row)
            if not h:
                continue
            j = next(iter(h))
            hkey = (M.weights[j], M.degrees[j])
            # coordinates in a reduced echelon basis are the pivot entries
            for (k2, p2), n in where.items():
                if k2 == hkey:
                    x = h.get(p2)
                    if x is not None and x != 0:
                        cols.setdefault(n, {})[i] = x
        gens.append(cols)
    degrees = [key[1] for key, _, _ in basis]
    weights = [key[0] for key, _, _ in basis]
    parities = [M.parities[p] for _, p, _ in basis]
    L = GradedModule(M.algebra, degrees, parities, weights, gens, M.highest_weight,
                     label=f"L{tuple(format_scalar(x) for x in M.highest_weight)}")
    L.info = dict(M.info)
    L.info["quotient_of"] = M.label
    return L


def is_irreducible(M: GradedModule) -> bool:
    return len(_covector_span(M)) == M.dim


def highest_weight_irreducible(g, lam, borel=None, max_depth=64) -> GradedModule:
    """L(lam) from truncated Verma modules, enlarging the truncation until stable."""
    borel = borel or default_borel(g)
    steps = [_verma_depth(g, borel, i) for i in borel.nminus]
    reach = max(steps) if steps else ONE
    depth = 4 * reach
    while True:
        V = truncated_verma(g, lam, depth, borel)
        span = _covector_span(V)
        top = max((-key[1] for key, _, _ in span), default=ZERO)
        if top + 2 * reach <= depth:
            L = irreducible_quotient(V)
            # grade by depth in units of the smallest step
            L.info["depth_bound"] = depth
            return L
        if depth > max_depth:
            raise Unsupported(f"L{lam} did not stabilize below depth {max_depth}; it may be infinite-dimensional")
        depth *= 2


def kac_irreducible(g, lam, borel=None) -> GradedModule:
    K = build_kac_module(g, lam, borel)
    if is_irreducible(K):
        K.info["irreducible"] = True
        return K
    L = irreducible_quotient(K)
    L.info["irreducible"] = True
    return L


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------

@dataclass
class GradedConstantResult:
    ok: bool
    scalars: dict                  # degree -> scalar
    witness: int | None = None

    def to_dict(self) -> dict:
        return {"ok": self.ok,
                "scalars": {str(k): format_scalar(v) for k, v in self.scalars.items()},
                "witness": self.witness}


def _diag_scalars(cols, M):
    """Per-degree scalar if cols act diagonally by a constant on each degree, else a witness."""
    scalars = {}
    for j, img in enumerate(cols):
        x = img.get(j, ZERO)
        if any(i != j for i in img):
            return None, j
        d = M.degrees[j]
        if d in scalars and scalars[d] != x:
            return None, j
        scalars[d] = x
    return scalars, None


def graded_constant_check(a: UEAElement, M: GradedModule) -> GradedConstantResult:
    D, layers = act_layers(a, M)
    per_layer = {}
    for k, cols in layers.items():
        sc, witness = _diag_scalars(cols, M)
        if sc is None:
            return GradedConstantResult(False, {}, witness)
        per_layer[k] = sc
    degrees = sorted(set(M.degrees), reverse=True)
    out = {}
    for d in degrees:
        if D is None:
            out[d] = sum((per_layer[k].get(d, ZERO) for k in per_layer), ZERO)
        else:
            num = [ZERO] * (max(per_layer, default=0) + 1)
            for k, sc in per_layer.items():
                num[k] = sc.get(d, ZERO)
            out[d] = RatFun(tuple(num), D)
            if out[d].is_constant():
                out[d] = out[d].constant_value()
    return GradedConstantResult(True, out)


@dataclass
class TwistedTracePoly:
    coefficients: tuple            # coefficient of c^i at index i

    def evaluate(self, c):
        return sum((to_q(x) * to_q(c) ** i for i, x in enumerate(self.coefficients)), ZERO)

    @property
    def degree(self) -> int:
        nz = [i for i, x in enumerate(self.coefficients) if x != 0]
        return nz[-1] if nz else -1

    def __eq__(self, other):
        if isinstance(other, TwistedTracePoly):
            a, b = list(self.coefficients), list(other.coefficients)
            n = max(len(a), len(b))
            return a + [0] * (n - len(a)) == b + [0] * (n - len(b))
        return NotImplemented

    def __str__(self):
        return str(RatFun(tuple(Q(x) for x in self.coefficients)))

    def to_dict(self) -> dict:
        return {"coefficients": list(self.coefficients), "text": str(self),
                "at_1": int(self.evaluate(1)), "at_minus_1": int(self.evaluate(-1))}


def twisted_trace_poly(M: GradedModule) -> TwistedTracePoly:
    dims = M.graded_dimensions()
    top = max(-d for d in dims) if dims else 0
    coeffs = [0] * (int(top) + 1)
    for d, n in dims.items():
        i = int(-d)
        coeffs[i] = (-1) ** i * n
    return TwistedTracePoly(tuple(coeffs))


def expected_kac_trace(dim_l0: int, dim_g1: int) -> TwistedTracePoly:
    """dim L_0 * (1 - c)^dim_g1."""
    from math import comb

    return TwistedTracePoly(tuple((-1) ** i * comb(dim_g1, i) * dim_l0 for i in range(dim_g1 + 1)))


@dataclass
class TgActionReport:
    classification: str           # zero | invertible
    p_value: object
    consistent: bool

    def to_dict(self) -> dict:
        return {"classification": self.classification, "p_value": format_scalar(self.p_value),
                "consistent": self.consistent}


def T_g_action_check(M: GradedModule, T: UEAElement | None = None, p=None) -> TgActionReport:
    """Classify the action of T_g on an irreducible module and compare with p(lambda)."""
    from .ghost import a_phi_element, projectivity_polynomial
    from .automorphism import GradedAutomorphism

    g = M.algebra
    if T is None:
        T = a_phi_element(GradedAutomorphism.delta(), g=g).element
    cols = act(T, M)
    if not any(cols):
        kind = "zero"
    elif rank(_transpose(cols, M.dim)) == M.dim:
        kind = "invertible"
    else:
        raise OracleViolation(f"T_g acts on {M.label} neither by zero nor invertibly")
    if p is None:
        p = projectivity_polynomial(g)
    value = p.evaluate(list(M.highest_weight))
    return TgActionReport(kind, value, (value != 0) == (kind == "invertible"))


def _transpose(cols, n):
    rows = [dict() for _ in range(n)]
    for j, img in enumerate(cols):
        for i, x in img.items():
            rows[i][j] = x
    return rows


def dominant_grid(g, radius: int = 5, borel=None):
    """Integral weights with coordinates in [-radius, radius] that are dominant for g_0."""
    from itertools import product as iproduct

    borel = borel or default_borel(g)
    n = len(g.cartan_even)
    out = []
    for lam in iproduct(range(-radius, radius + 1), repeat=n):
        try:
            _even_chain(g, tuple(Q(x) for x in lam), borel)
        except NotDominant:
            continue
        out.append(tuple(Q(x) for x in lam))
    return out
