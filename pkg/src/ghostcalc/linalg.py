"""Sparse exact linear algebra over any of the scalar fields.

Vectors are ``dict[int, scalar]`` with no zero entries.  ``Echelon`` keeps a
fully reduced row basis so reduction of a new vector is a single pass.
"""

from __future__ import annotations

from itertools import permutations

from .fields import ONE, ZERO, Cyclotomic


def _inv(x):
    if isinstance(x, Cyclotomic):
        return x.inverse()
    if hasattr(x, "inverse"):
        return x.inverse()
    return ONE / x


def vec_add(acc: dict, v: dict, scale=ONE) -> dict:
    """acc += scale * v, in place; returns acc."""
    for k, x in v.items():
        y = acc.get(k)
        y = x * scale if y is None else y + x * scale
        if y == 0:
            acc.pop(k, None)
        else:
            acc[k] = y
    return acc


def vec_scale(v: dict, s) -> dict:
    if s == 0:
        return {}
    return {k: x * s for k, x in v.items()}


class Echelon:
    """Incrementally built reduced row echelon basis."""

    def __init__(self):
        self.rows: dict[int, dict] = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: dict) -> dict:
        out = dict(v)
        for p in [k for k in v if k in self.rows]:
            x = out.get(p)
            if x is not None and x != 0:
                vec_add(out, self.rows[p], -x)
        return out

    def add(self, v: dict) -> int | None:
        """Insert v; return its pivot column or None if dependent."""
        r = self.reduce(v)
        if not r:
            return None
        p = min(r)
        inv = _inv(r[p])
        r = {k: x * inv for k, x in r.items()}
        for q, row in self.rows.items():
            x = row.get(p)
            if x is not None:
                vec_add(row, r, -x)
        self.rows[p] = r
        return p

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)


def rank(rows) -> int:
    e = Echelon()
    for r in rows:
        e.add(r)
    return len(e)


def nullspace(rows, ncols: int) -> list[dict]:
    """Basis of {x : r.x = 0 for all rows r}, one vector per free column."""
    e = Echelon()
    for r in rows:
        e.add(r)
    pivots = e.rows
    basis = []
    for f in range(ncols):
        if f in pivots:
            continue
        v = {f: ONE}
        for p, row in pivots.items():
            x = row.get(f)
            if x is not None:
                v[p] = -x
        basis.append(v)
    return basis


def solve(rows, rhs, ncols: int) -> dict | None:
    """One solution of A x = b (free variables zero) or None if inconsistent.

    ``rows`` are the rows of A as sparse dicts, ``rhs`` the list of b entries.
    """
    e = Echelon()
    for r, b in zip(rows, rhs):
        aug = dict(r)
        if b != 0:
            aug[ncols] = b
        e.add(aug)
    if ncols in e.rows:
        return None
    sol = {}
    for p, row in e.rows.items():
        x = row.get(ncols)
        if x is not None and x != 0:
            sol[p] = x
    return sol


def det(matrix):
    """Determinant of a small square matrix over any commutative ring.

    Leibniz expansion, fine for the tiny matrices used here (n <= 6).
    """
    n = len(matrix)
    if n == 0:
        return ONE
    total = None
    for perm in permutations(range(n)):
        sign = _perm_sign(perm)
        term = None
        for i, j in enumerate(perm):
            a = matrix[i][j]
            if a == 0:
                term = None
                break
            term = a if term is None else term * a
        else:
            if term is None:
                continue
            term = term if sign > 0 else -term
            total = term if total is None else total + term
    return ZERO if total is None else total


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def dense_rank(matrix) -> int:
    return rank({j: x for j, x in enumerate(row) if x != 0} for row in matrix)


class Decomposer:
    """Coordinates of vectors with respect to a fixed linearly independent list."""

    def __init__(self, vectors):
        self.dim = len(vectors)
        self._ech = Echelon()
        # track combinations via extra columns placed after a large offset
        offset = 1 + max((max(v) for v in vectors if v), default=0)
        self._offset = offset
        for i, v in enumerate(vectors):
            aug = dict(v)
            aug[offset + i] = ONE
            self._ech.add(aug)
        for p in self._ech.rows:
            if p >= offset:
                raise ValueError("vectors are linearly dependent")

    def coordinates(self, v: dict) -> dict | None:
        """Sparse coordinate vector, or None when v is outside the span."""
        if any(k >= self._offset for k in v):
            return None
        r = self._ech.reduce(v)
        if any(k < self._offset for k in r):
            return None
        # r = v - sum coords_i * (b_i + e_i)  restricted to tail gives -coords
        return {k - self._offset: -x for k, x in r.items()}
