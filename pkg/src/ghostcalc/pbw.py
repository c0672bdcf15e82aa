"""PBW normal forms in U(g).

A monomial is a non-decreasing tuple of *positions* in a generator ordering;
odd positions occur at most once.  ``UEA`` holds the rewriting tables and memo
caches for one (algebra, ordering) pair, ``UEAElement`` is an immutable sparse
combination of monomials with exact coefficients.
"""

from __future__ import annotations

import threading

from .errors import FieldMismatch, OrderingMismatch
from .fields import ONE, RatFun, ZERO, format_scalar, is_rational, scalar_sum, to_q

MIXED = "mixed"
INHOMOGENEOUS = "inhomogeneous"

_RATIONAL = type(ZERO)


class Ordering:
    """A total order on the basis, optionally tagged with named blocks."""

    def __init__(self, algebra, sequence, name: str = "custom", blocks: dict | None = None):
        seq = tuple(sequence)
        if sorted(seq) != list(range(algebra.dim)):
            raise OrderingMismatch(f"ordering {name!r} is not a permutation of the basis of {algebra.name}")
        self.algebra = algebra
        self.sequence = seq
        self.name = name
        self.blocks = dict(blocks or {})
        self.position = {idx: p for p, idx in enumerate(seq)}

    def suffix_block(self, indices) -> bool:
        """True when ``indices`` occupy exactly the last positions."""
        k = len(set(indices))
        return set(self.sequence[len(self.sequence) - k:]) == set(indices)

    def __repr__(self):
        return f"Ordering({self.name}: " + " < ".join(self.algebra.basis[i].name for i in self.sequence) + ")"


def coset_ordering(g) -> Ordering:
    """Odd generators first (lowest z-degree first), even generators last."""
    odd = sorted(g.odd_indices, key=lambda i: (g.basis[i].z_degree, i))
    even = list(g.even_indices)
    return Ordering(g, odd + even, "coset", {"odd": tuple(odd), "even": tuple(even)})


def kac_ordering(g) -> Ordering:
    """g_{-1} < g_0 < g_1 for a type-I grading."""
    minus, zero, plus = g.g_minus, g.z_block(0), g.g_plus
    return Ordering(g, minus + zero + plus, "kac", {"g-1": minus, "g0": zero, "g1": plus})


def named_ordering(g, name: str, borel=None) -> Ordering:
    if name == "hc":
        if borel is None:
            borel = default_borel(g)
        return borel.hc_ordering()
    if name == "coset":
        return coset_ordering(g)
    if name == "kac":
        return kac_ordering(g)
    if name == "basis":
        return Ordering(g, range(g.dim), "basis")
    raise OrderingMismatch(f"unknown ordering {name!r}")


def default_borel(g):
    from .roots import make_borel

    b = g._derived.get("default_borel")
    if b is None:
        b = make_borel(g)
        g._derived["default_borel"] = b
    return b


def default_uea(g) -> "UEA":
    return g.uea(named_ordering(g, "hc"))


class UEA:
    """Normal-ordering context for one algebra and one generator ordering."""

    def __init__(self, ordering: Ordering):
        g = ordering.algebra
        self.algebra = g
        self.ordering = ordering
        seq = ordering.sequence
        pos = ordering.position
        self.odd = tuple(g.is_odd(i) for i in seq)
        self.names = tuple(g.basis[i].name for i in seq)
        self.br = {}
        for (i, j), vec in g.bracket_table().items():
            self.br[(pos[i], pos[j])] = tuple(sorted((pos[k], to_q(v)) for k, v in vec.items()))
        self._lmul = {}
        self._mmul = {}
        self._word = {}
        self._lock = threading.RLock()

    # -- core rewriting ------------------------------------------------------
    def lmul(self, p: int, m: tuple) -> dict:
        """Normal form of generator p times normal monomial m (rational coefficients)."""
        key = (p, m)
        res = self._lmul.get(key)
        if res is not None:
            return res
        if not m or p < m[0]:
            res = {(p,) + m: ONE}
        elif p == m[0]:
            if not self.odd[p]:
                res = {(p,) + m: ONE}
            else:
                # p p rest = 1/2 [p, p] rest
                res = {}
                rest = m[1:]
                for k, c in self.br.get((p, p), ()):
                    _acc(res, self.lmul(k, rest), c / 2)
        else:
            a, rest = m[0], m[1:]
            sign = -1 if (self.odd[p] and self.odd[a]) else 1
            res = {}
            for mono, c in self.lmul(p, rest).items():
                _acc(res, self.lmul(a, mono), c * sign)
            for k, c in self.br.get((p, a), ()):
                _acc(res, self.lmul(k, rest), c)
        with self._lock:
            self._lmul[key] = res
        return res

    def mono_mul(self, m1: tuple, m2: tuple) -> dict:
        if not m1:
            return {m2: ONE}
        if not m2:
            return {m1: ONE}
        key = (m1, m2)
        res = self._mmul.get(key)
        if res is not None:
            return res
        if len(m1) == 1:
            res = self.lmul(m1[0], m2)
        else:
            res = {}
            for mono, c in self.mono_mul(m1[1:], m2).items():
                _acc(res, self.lmul(m1[0], mono), c)
        with self._lock:
            self._mmul[key] = res
        return res

    def word_normal_form(self, word: tuple) -> dict:
        """Normal form of a product of basis indices (not positions)."""
        word = tuple(word)
        res = self._word.get(word)
        if res is not None:
            return res
        pos = self.ordering.position
        res = {(): ONE}
        for idx in reversed(word):
            nxt = {}
            p = pos[idx]
            for mono, c in res.items():
                _acc(nxt, self.lmul(p, mono), c)
            res = nxt
        with self._lock:
            self._word[word] = res
        return res

    # -- constructors ---------------------------------------------------------
    def element(self, terms: dict) -> "UEAElement":
        return UEAElement(self, {m: c for m, c in terms.items() if c != 0})

    def zero(self) -> "UEAElement":
        return UEAElement(self, {})

    def one(self, coeff=ONE) -> "UEAElement":
        return self.scalar(coeff)

    def scalar(self, coeff) -> "UEAElement":
        coeff = to_q(coeff)
        return UEAElement(self, {(): coeff} if coeff != 0 else {})

    def gen(self, index, coeff=ONE) -> "UEAElement":
        if isinstance(index, str):
            index = self.algebra.index(index)
        coeff = to_q(coeff)
        return UEAElement(self, {(self.ordering.position[index],): coeff} if coeff != 0 else {})

    def word(self, word, coeff=ONE) -> "UEAElement":
        """Normal-ordered product of the given basis indices (or names)."""
        idx = tuple(self.algebra.index(w) if isinstance(w, str) else w for w in word)
        coeff = to_q(coeff)
        if coeff == 0:
            return self.zero()
        return UEAElement(self, {m: c * coeff for m, c in self.word_normal_form(idx).items()})

    def vector(self, vec: dict) -> "UEAElement":
        """Embed an element of g (sparse basis vector) as a degree-one element."""
        pos = self.ordering.position
        return UEAElement(self, {(pos[i],): to_q(c) for i, c in vec.items() if c != 0})

    def monomial_word(self, m: tuple) -> tuple:
        seq = self.ordering.sequence
        return tuple(seq[p] for p in m)

    def monomial_str(self, m: tuple) -> str:
        if not m:
            return "1"
        parts = []
        i = 0
        while i < len(m):
            j = i
            while j < len(m) and m[j] == m[i]:
                j += 1
            name = self.names[m[i]]
            parts.append(name if j - i == 1 else f"{name}^{j - i}")
            i = j
        return "*".join(parts)

    def monomial_degree(self, m: tuple) -> int:
        return sum(1 if self.odd[p] else 2 for p in m)

    def monomial_parity(self, m: tuple) -> int:
        return sum(1 for p in m if self.odd[p]) % 2


def _acc(acc: dict, src: dict, scale):
    for m, c in src.items():
        x = acc.get(m)
        x = c * scale if x is None else x + c * scale
        if x == 0:
            del acc[m]
        else:
            acc[m] = x


def normal_order(word, coeff, target) -> "UEAElement":
    """Normal form of coeff * (product of the word's generators) under ``target``."""
    uea = target if isinstance(target, UEA) else target.algebra.uea(target)
    return uea.word(word, coeff)


class _Accumulator:
    """Sums scalar contributions per monomial, deferring rational-function work."""

    def __init__(self):
        self.fast = {}
        self.slow = {}

    def add(self, m, x):
        if type(x) is _RATIONAL:
            y = self.fast.get(m)
            self.fast[m] = x if y is None else y + x
        else:
            self.slow.setdefault(m, []).append(x)

    def result(self) -> dict:
        out = {m: c for m, c in self.fast.items() if c != 0}
        for m, xs in self.slow.items():
            if m in out:
                xs = xs + [out.pop(m)]
            s = scalar_sum(xs)
            if s != 0:
                out[m] = s
        return out


class UEAElement:
    """Sparse exact element of U(g) in PBW normal form."""

    __slots__ = ("uea", "terms")

    def __init__(self, uea: UEA, terms: dict):
        self.uea = uea
        self.terms = terms

    # -- structure -------------------------------------------------------
    @property
    def algebra(self):
        return self.uea.algebra

    @property
    def ordering(self) -> Ordering:
        return self.uea.ordering

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def counit(self):
        return self.terms.get((), ZERO)

    def coefficient(self, word) -> object:
        """Coefficient of the normal monomial given as a word of basis names/indices."""
        pos = self.uea.ordering.position
        idx = [self.algebra.index(w) if isinstance(w, str) else w for w in word]
        return self.terms.get(tuple(sorted(pos[i] for i in idx)), ZERO)

    def parity(self):
        ps = {self.uea.monomial_parity(m) for m in self.terms}
        if not ps:
            return 0
        return ps.pop() if len(ps) == 1 else MIXED

    def split_parity(self) -> dict:
        parts = {0: {}, 1: {}}
        for m, c in self.terms.items():
            parts[self.uea.monomial_parity(m)][m] = c
        return {p: UEAElement(self.uea, t) for p, t in parts.items() if t}

    def filtration_degree(self) -> int:
        """Doubled PBW degree: even generators count 2, odd generators 1."""
        if not self.terms:
            return 0
        return max(self.uea.monomial_degree(m) for m in self.terms)

    def weight(self):
        g = self.algebra
        seq = self.uea.ordering.sequence
        weights = set()
        n = len(g.cartan_even)
        for m in self.terms:
            w = [ZERO] * n
            for p in m:
                bw = g.basis[seq[p]].weight
                if bw is None:
                    return INHOMOGENEOUS
                for k in range(n):
                    w[k] += bw[k]
            weights.add(tuple(w))
        if not weights:
            return tuple(ZERO for _ in range(n))
        return weights.pop() if len(weights) == 1 else INHOMOGENEOUS

    # -- conversions -----------------------------------------------------
    def in_uea(self, uea: UEA) -> "UEAElement":
        if uea is self.uea:
            return self
        if uea.algebra is not self.uea.algebra:
            raise FieldMismatch("elements belong to different algebras")
        acc = _Accumulator()
        for m, c in self.terms.items():
            for mono, r in uea.word_normal_form(self.uea.monomial_word(m)).items():
                acc.add(mono, c * r)
        return UEAElement(uea, acc.result())

    def reorder(self, ordering) -> "UEAElement":
        if isinstance(ordering, str):
            ordering = named_ordering(self.algebra, ordering)
        return self.in_uea(self.algebra.uea(ordering))

    def map_coefficients(self, f) -> "UEAElement":
        out = {}
        for m, c in self.terms.items():
            x = f(c)
            if x != 0:
                out[m] = x
        return UEAElement(self.uea, out)

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, UEAElement):
            return other.in_uea(self.uea)
        return self.uea.scalar(other)

    def __add__(self, other):
        other = self._coerce(other)
        acc = _Accumulator()
        for m, c in self.terms.items():
            acc.add(m, c)
        for m, c in other.terms.items():
            acc.add(m, c)
        return UEAElement(self.uea, acc.result())

    __radd__ = __add__

    def __neg__(self):
        return UEAElement(self.uea, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, s) -> "UEAElement":
        s = to_q(s)
        if s == 0:
            return self.uea.zero()
        out = {}
        for m, c in self.terms.items():
            x = c * s
            if x != 0:
                out[m] = x
        return UEAElement(self.uea, out)

    def __mul__(self, other):
        if not isinstance(other, UEAElement):
            return self.scale(other)
        other = other.in_uea(self.uea)
        acc = _Accumulator()
        mm = self.uea.mono_mul
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                cab = ca * cb
                for m, r in mm(ma, mb).items():
                    acc.add(m, cab * r if r != 1 else cab)
        return UEAElement(self.uea, acc.result())

    def __rmul__(self, other):
        if isinstance(other, UEAElement):
            return other.__mul__(self)
        return self.scale(other)

    def __truediv__(self, s):
        return self.scale(ONE / to_q(s))

    def __pow__(self, n: int):
        out = self.uea.one()
        for _ in range(n):
            out = out * self
        return out

    def lmul_gen(self, index, coeff=ONE) -> "UEAElement":
        """(coeff * generator) * self."""
        p = self.uea.ordering.position[index]
        acc = _Accumulator()
        for m, c in self.terms.items():
            cc = c * coeff
            for mono, r in self.uea.lmul(p, m).items():
                acc.add(mono, cc * r if r != 1 else cc)
        return UEAElement(self.uea, acc.result())

    def rmul_gen(self, index, coeff=ONE) -> "UEAElement":
        """self * (coeff * generator)."""
        p = (self.uea.ordering.position[index],)
        acc = _Accumulator()
        for m, c in self.terms.items():
            cc = c * coeff
            for mono, r in self.uea.mono_mul(m, p).items():
                acc.add(mono, cc * r if r != 1 else cc)
        return UEAElement(self.uea, acc.result())

    def commutator(self, other) -> "UEAElement":
        """Supercommutator for homogeneous arguments, ordinary commutator otherwise."""
        other = self._coerce(other)
        pa, pb = self.parity(), other.parity()
        sign = -1 if (pa == 1 and pb == 1) else 1
        return self * other - (other * self).scale(sign)

    def __eq__(self, other):
        if isinstance(other, UEAElement):
            if other.algebra is not self.algebra:
                return False
            other = other.in_uea(self.uea)
            return self.terms == other.terms
        try:
            return self.terms == self.uea.scalar(other).terms
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        raise TypeError("UEAElement is not hashable")

    # -- output ----------------------------------------------------------
    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: (-self.uea.monomial_degree(t[0]), t[0]))

    def serialize(self) -> list:
        """Sorted [monomial, coefficient] string pairs."""
        return [[self.uea.monomial_str(m), format_scalar(c)] for m, c in self.sorted_terms()]

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for m, c in self.sorted_terms():
            mono = self.uea.monomial_str(m)
            neg, body = _coefficient_text(c)
            text = body if mono == "1" else (mono if body == "1" else f"{body}*{mono}")
            if mono == "1" and body == "1":
                text = "1"
            if not out:
                out.append(("-" if neg else "") + text)
            else:
                out.append((" - " if neg else " + ") + text)
        return "".join(out)

    def __repr__(self):
        return f"UEAElement({self})"


def _coefficient_text(c):
    """(is_negative, text) with compound coefficients parenthesized."""
    if is_rational(c) and not isinstance(c, RatFun):
        from .fields import Cyclotomic

        if isinstance(c, Cyclotomic):
            c = c.to_rational()
        c = to_q(c)
        if c < 0:
            return True, format_scalar(-c)
        return False, format_scalar(c)
    if isinstance(c, RatFun) and c.is_constant():
        return _coefficient_text(c.constant_value())
    text = format_scalar(c)
    if text.startswith("-") and not any(ch in text[1:] for ch in " /+-"):
        return True, text[1:]
    if not any(ch in text for ch in " /+-"):
        return False, text
    return False, f"({text})"


def reduce_mod_right_subalgebra(a: UEAElement, sub) -> UEAElement:
    """Canonical representative of a modulo U(g)*sub (sub must be the last block)."""
    if not a.ordering.suffix_block(sub):
        raise OrderingMismatch("ordering does not place the subalgebra generators last")
    cut = a.algebra.dim - len(set(sub))
    return UEAElement(a.uea, {m: c for m, c in a.terms.items() if not m or m[-1] < cut})


def twisted_adjoint(phi, u, v: UEAElement) -> UEAElement:
    """ad_phi(u)(v) = u v - (-1)^{|u||v|} v phi(u), split over the parity parts of v.

    ``u`` is a basis index (or name).
    """
    g = v.algebra
    if isinstance(u, str):
        u = g.index(u)
    image = phi.image(g, u)
    u_odd = g.is_odd(u)
    total = v.uea.zero()
    for par, part in v.split_parity().items():
        left = part.lmul_gen(u)
        right = None
        for k, s in image.items():
            term = part.rmul_gen(k, s)
            right = term if right is None else right + term
        sign = -1 if (u_odd and par == 1) else 1
        total = total + left - (right.scale(sign) if sign != 1 else right)
    return total


def twisted_adjoint_monomial(phi, word, v: UEAElement) -> UEAElement:
    """ad_phi(w_1) o ... o ad_phi(w_k) (v): the rightmost letter acts first."""
    out = v
    for u in reversed(tuple(word)):
        out = twisted_adjoint(phi, u, out)
    return out


def twisted_adjoint_element(phi, a: UEAElement, v: UEAElement) -> UEAElement:
    """Linear extension of twisted_adjoint_monomial over the PBW terms of a."""
    total = v.uea.zero()
    for m, c in a.terms.items():
        total = total + twisted_adjoint_monomial(phi, a.uea.monomial_word(m), v).scale(c)
    return total
