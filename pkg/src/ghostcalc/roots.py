"""Root data, Borel choices and the even Weyl group action."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import AmbiguousPositivity, Unsupported
from .fields import ONE, ZERO, Q, format_scalar
from .linalg import Decomposer, Echelon, rank


def _invert(matrix):
    n = len(matrix)
    cols = [{i: matrix[i][j] for i in range(n) if matrix[i][j] != 0} for j in range(n)]
    dec = Decomposer(cols)
    inv = []
    for i in range(n):
        coords = dec.coordinates({i: ONE})
        inv.append([coords.get(j, ZERO) for j in range(n)])
    # inv[i] = coordinates of e_i in terms of columns: column-combination gives B^{-1} transposed
    return tuple(tuple(inv[j][i] for j in range(n)) for i in range(n))


def weight_str(w) -> str:
    return "(" + ", ".join(format_scalar(x) for x in w) + ")"


@dataclass
class BorelChoice:
    algebra: object
    positivity: tuple
    even_positive: tuple          # positive even roots, repeated by multiplicity
    odd_positive: tuple
    nplus: tuple                  # basis indices of positive root vectors
    nminus: tuple
    zero_block: tuple             # weight-zero basis indices (Cartan)
    rho: tuple
    coroots: dict                 # root -> coordinates on the even Cartan basis
    form_inverse: tuple | None = None
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def positive_roots(self) -> tuple:
        return tuple(dict.fromkeys(self.even_positive + self.odd_positive))

    def pairing(self, mu, nu):
        if self.form_inverse is None:
            raise Unsupported(f"{self.algebra.name} has no invariant form")
        binv = self.form_inverse
        total = ZERO
        for i, a in enumerate(mu):
            if a == 0:
                continue
            for j, b in enumerate(nu):
                if b != 0 and binv[i][j] != 0:
                    total += a * binv[i][j] * b
        return total

    def is_isotropic(self, alpha) -> bool:
        return self.pairing(alpha, alpha) == 0

    def root_vectors(self, alpha) -> tuple:
        return tuple(b.index for b in self.algebra.basis if b.weight == tuple(alpha))

    def hc_ordering(self):
        from .pbw import Ordering

        if "hc" not in self._cache:
            seq = self.nminus + self.zero_block + self.nplus
            self._cache["hc"] = Ordering(self.algebra, seq, "hc",
                                         {"n-": self.nminus, "cartan": self.zero_block, "n+": self.nplus})
        return self._cache["hc"]

    def simple_even_roots(self) -> tuple:
        ev = tuple(dict.fromkeys(self.even_positive))
        sums = {tuple(x + y for x, y in zip(a, b)) for a in ev for b in ev}
        return tuple(a for a in ev if a not in sums)

    def simple_roots(self) -> tuple:
        pos = self.positive_roots
        sums = {tuple(x + y for x, y in zip(a, b)) for a in pos for b in pos}
        return tuple(a for a in pos if a not in sums)

    def to_dict(self) -> dict:
        return {
            "positivity": [format_scalar(x) for x in self.positivity],
            "even_positive": [weight_str(a) for a in self.even_positive],
            "odd_positive": [weight_str(a) for a in self.odd_positive],
            "rho": weight_str(self.rho),
            "coroots": {weight_str(a): weight_str(h) for a, h in self.coroots.items()},
        }


def make_borel(g, positivity=None) -> BorelChoice:
    """Positive system defined by a Cartan element eta: alpha > 0 iff alpha(eta) > 0."""
    if not g.has_weights:
        raise Unsupported(f"{g.name} has no weight basis for its Cartan subalgebra")
    if positivity is None or positivity == "standard":
        eta = g.positivity
        if eta is None:
            eta = tuple(ZERO for _ in g.cartan_even)
    else:
        eta = tuple(Q(x) for x in positivity)
    if len(eta) != len(g.cartan_even):
        raise AmbiguousPositivity("positivity vector has the wrong length")
    even_pos, odd_pos, nplus, nminus, zero = [], [], [], [], []
    keyed_plus, keyed_minus = [], []
    for b in g.basis:
        if all(x == 0 for x in b.weight):
            zero.append(b.index)
            continue
        val = sum((a * e for a, e in zip(b.weight, eta)), ZERO)
        if val == 0:
            raise AmbiguousPositivity(f"positivity functional vanishes on the root {weight_str(b.weight)} of {b.name}")
        if val > 0:
            (odd_pos if b.is_odd else even_pos).append(b.weight)
            keyed_plus.append((val, b.index))
        else:
            keyed_minus.append((val, b.index))
    nplus = tuple(i for _, i in sorted(keyed_plus))
    nminus = tuple(i for _, i in sorted(keyed_minus))
    # Cartan-even basis first, then any remaining weight-zero vectors
    zero = tuple(i for i in g.cartan_even) + tuple(i for i in zero if i not in g.cartan_even)
    n = len(g.cartan_even)
    rho = [ZERO] * n
    for a in even_pos:
        for k in range(n):
            rho[k] += a[k] / 2
    for a in odd_pos:
        for k in range(n):
            rho[k] -= a[k] / 2
    form = g.cartan_form()
    binv = None
    coroots = {}
    if form is not None and n:
        binv = _invert(form)
        for a in dict.fromkeys(even_pos + odd_pos):
            coroots[a] = tuple(sum((binv[k][j] * a[j] for j in range(n)), ZERO) for k in range(n))
    else:
        for a in dict.fromkeys(even_pos + odd_pos):
            h = _bracket_coroot(g, a)
            if h is not None:
                coroots[a] = h
    return BorelChoice(g, eta, tuple(even_pos), tuple(odd_pos), nplus, nminus, zero,
                       tuple(rho), coroots, binv)


def _bracket_coroot(g, alpha):
    neg = tuple(-x for x in alpha)
    pos_vecs = [b.index for b in g.basis if b.weight == tuple(alpha)]
    neg_vecs = [b.index for b in g.basis if b.weight == neg]
    for i in pos_vecs:
        for j in neg_vecs:
            br = g.bracket(i, j)
            if br:
                return tuple(br.get(h, ZERO) for h in g.cartan_even)
    return None


def root_bracket_span(borel: BorelChoice, alpha) -> int:
    """dim [g_alpha, g_-alpha]."""
    g = borel.algebra
    neg = tuple(-x for x in alpha)
    vecs = [g.bracket(i, j) for i in borel.root_vectors(alpha) for j in borel.root_vectors(neg)]
    return rank(v for v in vecs if v)


def root_pairing_nondegenerate(borel: BorelChoice, alpha) -> bool:
    """The pairing g_alpha x g_-alpha -> [g_alpha, g_-alpha] ~ k is nondegenerate."""
    g = borel.algebra
    neg = tuple(-x for x in alpha)
    pos_vecs = borel.root_vectors(alpha)
    neg_vecs = borel.root_vectors(neg)
    if len(pos_vecs) != len(neg_vecs):
        return False
    span = Echelon()
    basis_vec = None
    for i in pos_vecs:
        for j in neg_vecs:
            br = g.bracket(i, j)
            if br and span.add(br) is not None and basis_vec is None:
                basis_vec = br
    if len(span) != 1:
        return False
    # express each bracket as a multiple of the spanning vector
    k = min(basis_vec)
    matrix = [[g.bracket(i, j).get(k, ZERO) / basis_vec[k] for j in neg_vecs] for i in pos_vecs]
    from .linalg import dense_rank

    return dense_rank(matrix) == len(pos_vecs)


def reflect(borel: BorelChoice, alpha, lam):
    """Linear reflection s_alpha(lam) for an even root with (alpha, alpha) != 0."""
    aa = borel.pairing(alpha, alpha)
    if aa == 0:
        raise Unsupported("cannot reflect in an isotropic root")
    f = 2 * borel.pairing(lam, alpha) / aa
    return tuple(x - f * a for x, a in zip(lam, alpha))


def dot_action(borel: BorelChoice, alpha, lam):
    """rho-shifted action w.lam = w(lam + rho) - rho."""
    shifted = tuple(x + r for x, r in zip(lam, borel.rho))
    w = reflect(borel, alpha, shifted)
    return tuple(x - r for x, r in zip(w, borel.rho))
