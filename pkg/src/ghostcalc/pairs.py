"""Iwasawa-type presentations g = k + a + n of a host algebra.

The main instance is the diagonal pair (g x g, g): k is the diagonal copy of
g, a is the anti-diagonal copy of a Cartan subalgebra and n collects
(n^-, 0) and (0, n^+).  Its enveloping algebra modulo U k realizes U(g).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import BasisVector, LieSuperalgebra
from .errors import NoIwasawa
from .fields import ONE, ZERO, Q
from .linalg import Decomposer
from .pbw import Ordering, UEAElement, default_borel


@dataclass
class IwasawaPairPresentation:
    host: LieSuperalgebra
    k: tuple
    a_even: tuple
    a_odd: tuple
    t_even: tuple
    t_odd: tuple
    n: tuple
    source: LieSuperalgebra | None = None
    _embed: dict = field(default_factory=dict, repr=False)
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def a(self) -> tuple:
        return self.a_even + self.a_odd

    def problems(self) -> list:
        """Violations of the partition and closure conditions (empty if fine)."""
        h = self.host
        out = []
        parts = [set(self.k), set(self.a), set(self.n)]
        if sum(len(p) for p in parts) != h.dim or set().union(*parts) != set(range(h.dim)):
            out.append("k, a, n do not partition the basis")
        if not set(self.t_even) | set(self.t_odd) <= set(self.k):
            out.append("t is not contained in k")
        for name, block in (("k", self.k), ("n", self.n)):
            s = set(block)
            for i in block:
                for j in block:
                    if any(x not in s for x in h.bracket(i, j)):
                        out.append(f"{name} is not closed under the bracket")
                        break
                else:
                    continue
                break
        for i in self.a_even:
            if h.is_odd(i):
                out.append("a_even contains an odd vector")
        for i in self.a_odd:
            if not h.is_odd(i):
                out.append("a_odd contains an even vector")
        return out

    def ordering(self) -> Ordering:
        if "ordering" not in self._cache:
            seq = self.n + self.a_even + self.a_odd + self.k
            self._cache["ordering"] = Ordering(self.host, seq, "pair",
                                               {"n": self.n, "a": self.a, "k": self.k})
        return self._cache["ordering"]

    def uea(self):
        return self.host.uea(self.ordering())

    @property
    def a_even_names(self) -> tuple:
        return tuple(self.host.basis[i].name for i in self.a_even)

    @property
    def a_odd_names(self) -> tuple:
        return tuple(self.host.basis[i].name for i in self.a_odd)

    def embed(self, u: UEAElement) -> UEAElement:
        """Image of u in U(host) under x -> (x, 0); only for pairs built by diagonal_pair."""
        if self.source is None or u.algebra is not self.source:
            raise NoIwasawa("this presentation carries no embedding of the given algebra")
        U = self.uea()
        gens = {}
        total = U.zero()
        for m, c in u.terms.items():
            word = u.uea.monomial_word(m)
            prod = U.one()
            for i in word:
                img = gens.get(i)
                if img is None:
                    img = U.vector(self._embed[i])
                    gens[i] = img
                prod = prod * img
            total = total + prod.scale(c)
        return total


def diagonal_pair(g: LieSuperalgebra, borel=None) -> IwasawaPairPresentation:
    """The presentation of (g x g, diagonal g) adapted to a Borel of g."""
    cache = g._derived.setdefault("diagonal_pairs", {})
    borel = borel or default_borel(g)
    key = borel.positivity
    if key in cache:
        return cache[key]
    n = g.dim
    # vectors in g x g: index i is (x_i, 0), index n + i is (0, x_i)
    vecs, basis_meta = [], []

    def add(name, parity, vec):
        basis_meta.append((name, parity))
        vecs.append(vec)

    for i in borel.nminus:
        add(f"n.{g.basis[i].name}", g.parity(i), {i: ONE})
    for i in borel.nplus:
        add(f"n.{g.basis[i].name}'", g.parity(i), {n + i: ONE})
    half = Q(1, 2)
    cartan_even = [i for i in borel.zero_block if not g.is_odd(i)]
    cartan_odd = [i for i in borel.zero_block if g.is_odd(i)]
    for i in cartan_even + cartan_odd:
        add(f"a.{g.basis[i].name}", g.parity(i), {i: half, n + i: -half})
    for i in range(n):
        add(f"k.{g.basis[i].name}", g.parity(i), {i: ONE, n + i: ONE})
    dec = Decomposer(vecs)

    def bracket2(u, v):
        out = {}
        for i, a in u.items():
            for j, b in v.items():
                side_i, xi = divmod(i, n)
                side_j, xj = divmod(j, n)
                if side_i != side_j:
                    continue
                for k, cval in g.bracket(xi, xj).items():
                    key_ = side_i * n + k
                    out[key_] = out.get(key_, ZERO) + a * b * cval
        return {k: v for k, v in out.items() if v != 0}

    brackets = {}
    for i, u in enumerate(vecs):
        for j, v in enumerate(vecs):
            br = bracket2(u, v)
            if br:
                coords = dec.coordinates(br)
                if coords is None:
                    raise NoIwasawa("adapted basis of g x g is not closed")
                brackets[(i, j)] = coords
    basis = [BasisVector(i, name, parity, 0, None) for i, (name, parity) in enumerate(basis_meta)]
    n_count = len(borel.nminus) + len(borel.nplus)
    a_even = tuple(range(n_count, n_count + len(cartan_even)))
    a_odd = tuple(range(n_count + len(cartan_even), n_count + len(cartan_even) + len(cartan_odd)))
    k_start = n_count + len(cartan_even) + len(cartan_odd)
    k = tuple(range(k_start, k_start + n))
    k_pos = {g_index: k_start + g_index for g_index in range(n)}
    host = LieSuperalgebra(f"{g.name}x{g.name}", basis, brackets,
                           cartan_even=[k_pos[i] for i in cartan_even] + list(a_even),
                           cartan_odd=[k_pos[i] for i in cartan_odd] + list(a_odd),
                           family="diagonal-pair")
    pair = IwasawaPairPresentation(host, k, a_even, a_odd,
                                   tuple(k_pos[i] for i in cartan_even), tuple(k_pos[i] for i in cartan_odd),
                                   tuple(range(n_count)), source=g)
    for i in range(n):
        pair._embed[i] = dec.coordinates({i: ONE})
    bad = pair.problems()
    if bad:
        raise NoIwasawa("; ".join(bad))
    cache[key] = pair
    return pair


def check_presentation(pair: IwasawaPairPresentation) -> None:
    bad = pair.problems()
    if bad:
        raise NoIwasawa("; ".join(bad))
