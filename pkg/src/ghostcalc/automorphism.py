"""Automorphisms of g fixing the even part pointwise."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import Unsupported
from .fields import ONE, format_scalar, to_q
from .linalg import det, vec_add


@dataclass(frozen=True)
class GradedAutomorphism:
    """``kind`` is one of identity, delta, scale or matrix.

    scale(s) multiplies g_{-1} by s and g_1 by 1/s.  matrix(A) acts on the odd
    part of an abelian algebra through A (columns indexed by the odd basis).
    """

    kind: str
    scalar: object = None
    matrix: tuple | None = None

    @classmethod
    def identity(cls):
        return cls("identity")

    @classmethod
    def delta(cls):
        return cls("delta")

    @classmethod
    def scale(cls, s):
        s = to_q(s)
        if s == 0:
            raise ValueError("scale automorphism needs a nonzero scalar")
        return cls("scale", s)

    @classmethod
    def from_matrix(cls, rows):
        return cls("matrix", matrix=tuple(tuple(to_q(x) for x in r) for r in rows))

    def describe(self) -> str:
        if self.kind == "scale":
            return f"scale({format_scalar(self.scalar)})"
        if self.kind == "matrix":
            return "matrix(" + ";".join(",".join(format_scalar(x) for x in r) for r in self.matrix) + ")"
        return self.kind

    def _check(self, g):
        if self.kind == "scale" and not g.is_type_one:
            raise Unsupported(f"scale automorphisms need a type-I grading; {g.name} has none")
        if self.kind == "matrix":
            if g.family != "abelian" and any(g.bracket(i, j) for i in g.odd_indices for j in range(g.dim)):
                raise Unsupported("matrix automorphisms are only supported on abelian odd parts")
            if len(self.matrix) != len(g.odd_indices):
                raise Unsupported("matrix size does not match the odd part")

    def image(self, g, i: int) -> dict:
        """phi(basis vector i) as a sparse vector."""
        b = g.basis[i]
        if not b.is_odd or self.kind == "identity":
            return {i: ONE}
        if self.kind == "delta":
            return {i: -ONE}
        self._check(g)
        if self.kind == "scale":
            if b.z_degree == -1:
                return {i: self.scalar}
            if b.z_degree == 1:
                return {i: ONE / self.scalar}
            return {i: ONE}
        odd = g.odd_indices
        col = odd.index(i)
        return {odd[r]: self.matrix[r][col] for r in range(len(odd)) if self.matrix[r][col] != 0}

    def apply(self, g, x: dict) -> dict:
        out = {}
        for i, a in x.items():
            vec_add(out, self.image(g, i), a)
        return out

    def compose(self, other: "GradedAutomorphism", g=None) -> "GradedAutomorphism":
        """self o other (apply ``other`` first)."""
        if other.kind == "identity":
            return self
        if self.kind == "identity":
            return other
        if self.kind == "delta" and other.kind == "delta":
            return GradedAutomorphism.identity()
        if self.kind in ("delta", "scale") and other.kind in ("delta", "scale"):
            s1 = -ONE if self.kind == "delta" else self.scalar
            s2 = -ONE if other.kind == "delta" else other.scalar
            prod = s1 * s2
            if prod == 1:
                return GradedAutomorphism.identity()
            if prod == -1:
                return GradedAutomorphism.delta()
            return GradedAutomorphism.scale(prod)
        if g is None:
            raise Unsupported("composing matrix automorphisms needs the algebra")
        n = len(g.odd_indices)
        a, b = _as_matrix(self, n), _as_matrix(other, n)
        return GradedAutomorphism.from_matrix(
            [[sum((a[i][k] * b[k][j] for k in range(n)), to_q(0)) for j in range(n)] for i in range(n)])


def _as_matrix(phi, n):
    if phi.kind == "matrix":
        return phi.matrix
    s = ONE if phi.kind == "identity" else -ONE
    if phi.kind == "scale":
        raise Unsupported("cannot mix scale and matrix automorphisms")
    return tuple(tuple(s if i == j else to_q(0) for j in range(n)) for i in range(n))


def apply_automorphism(phi: GradedAutomorphism, g, x: dict) -> dict:
    return phi.apply(g, x)


def fixed_point_free_on_odd(phi: GradedAutomorphism, g) -> bool:
    """True iff 1 is not an eigenvalue of phi on the odd part."""
    odd = g.odd_indices
    if not odd:
        return True
    if phi.kind == "identity":
        return False
    if phi.kind == "delta":
        return True
    if phi.kind == "scale":
        phi._check(g)
        return phi.scalar != 1
    n = len(odd)
    shifted = [[phi.matrix[i][j] - (ONE if i == j else 0) for j in range(n)] for i in range(n)]
    return det(shifted) != 0


def preserves_brackets(phi: GradedAutomorphism, g) -> list:
    """Basis pairs (i, j) with phi[x_i, x_j] != [phi x_i, phi x_j]; empty when phi is an automorphism."""
    bad = []
    for i in range(g.dim):
        pi = phi.image(g, i)
        for j in range(g.dim):
            lhs = phi.apply(g, g.bracket(i, j))
            rhs = g.bracket_vec(pi, phi.image(g, j))
            vec_add(lhs, rhs, -ONE)
            if lhs:
                bad.append((g.basis[i].name, g.basis[j].name))
    return bad
