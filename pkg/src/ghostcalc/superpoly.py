"""Polynomials in commuting even and anticommuting odd variables.

A term key is ``(exps, odd)`` where ``exps`` is a tuple of exponents for the
even variables and ``odd`` a sorted tuple of odd-variable indices.  Even
variables have degree 1 and odd variables degree 1/2.
"""

from __future__ import annotations

from .fields import ONE, ZERO, Q, format_scalar, scalar_sum, to_q


def _merge_odd(a: tuple, b: tuple):
    """Sign and sorted union of two odd monomials, or (0, None) if they overlap."""
    if not a:
        return 1, b
    if not b:
        return 1, a
    if set(a) & set(b):
        return 0, None
    inversions = sum(1 for x in a for y in b if x > y)
    return (-1 if inversions % 2 else 1), tuple(sorted(a + b))


class SuperPolynomial:
    __slots__ = ("even_vars", "odd_vars", "terms")

    def __init__(self, even_vars, odd_vars=(), terms=None):
        self.even_vars = tuple(even_vars)
        self.odd_vars = tuple(odd_vars)
        self.terms = {k: v for k, v in (terms or {}).items() if v != 0}

    # -- constructors ----------------------------------------------------
    def _zero_exps(self):
        return tuple(0 for _ in self.even_vars)

    def like(self, terms=None) -> "SuperPolynomial":
        return SuperPolynomial(self.even_vars, self.odd_vars, terms)

    @classmethod
    def constant(cls, even_vars, value, odd_vars=()) -> "SuperPolynomial":
        p = cls(even_vars, odd_vars)
        value = to_q(value)
        if value != 0:
            p.terms[(p._zero_exps(), ())] = value
        return p

    @classmethod
    def variable(cls, even_vars, name, odd_vars=()) -> "SuperPolynomial":
        p = cls(even_vars, odd_vars)
        if name in p.even_vars:
            e = [0] * len(p.even_vars)
            e[p.even_vars.index(name)] = 1
            p.terms[(tuple(e), ())] = ONE
        elif name in p.odd_vars:
            p.terms[(p._zero_exps(), (p.odd_vars.index(name),))] = ONE
        else:
            raise KeyError(f"unknown variable {name!r}")
        return p

    @classmethod
    def linear(cls, even_vars, coeffs, const=ZERO) -> "SuperPolynomial":
        p = cls(even_vars)
        for k, a in enumerate(coeffs):
            if a != 0:
                e = [0] * len(p.even_vars)
                e[k] = 1
                p.terms[(tuple(e), ())] = to_q(a)
        if const != 0:
            p.terms[(p._zero_exps(), ())] = to_q(const)
        return p

    # -- structure -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self):
        """Total degree with odd variables counted as 1/2; -1 for zero."""
        if not self.terms:
            return Q(-1)
        return max(Q(sum(e)) + Q(len(o), 2) for e, o in self.terms)

    def even_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e, _ in self.terms)

    def homogeneous_part(self, degree) -> "SuperPolynomial":
        d = Q(degree)
        return self.like({k: v for k, v in self.terms.items() if Q(sum(k[0])) + Q(len(k[1]), 2) == d})

    def leading_part(self) -> "SuperPolynomial":
        return self.homogeneous_part(self.degree()) if self.terms else self.like()

    def has_odd(self) -> bool:
        return any(o for _, o in self.terms)

    def _check(self, other):
        if self.even_vars != other.even_vars or self.odd_vars != other.odd_vars:
            raise ValueError("polynomials over different variable sets")

    def _coerce(self, other):
        if isinstance(other, SuperPolynomial):
            self._check(other)
            return other
        return SuperPolynomial.constant(self.even_vars, other, self.odd_vars)

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for k, v in other.terms.items():
            x = t.get(k)
            t[k] = v if x is None else x + v
        return self.like(t)

    __radd__ = __add__

    def __neg__(self):
        return self.like({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, s) -> "SuperPolynomial":
        s = to_q(s)
        return self.like({k: v * s for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, SuperPolynomial):
            return self.scale(other)
        self._check(other)
        acc = {}
        for (e1, o1), a in self.terms.items():
            for (e2, o2), b in other.terms.items():
                sign, o = _merge_odd(o1, o2)
                if sign == 0:
                    continue
                key = (tuple(x + y for x, y in zip(e1, e2)), o)
                acc.setdefault(key, []).append(a * b if sign > 0 else -(a * b))
        return self.like({k: scalar_sum(v) for k, v in acc.items()})

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        out = SuperPolynomial.constant(self.even_vars, ONE, self.odd_vars)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, SuperPolynomial):
            return (self.even_vars == other.even_vars and self.odd_vars == other.odd_vars
                    and self.terms == other.terms)
        try:
            return self == self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        raise TypeError("SuperPolynomial is not hashable")

    # -- evaluation and substitution --------------------------------------
    def evaluate(self, point):
        """Value at an even point (sequence aligned with even_vars or a name dict)."""
        if self.has_odd():
            raise ValueError("cannot evaluate a polynomial with odd variables at a point")
        if isinstance(point, dict):
            point = [point[v] for v in self.even_vars]
        vals = []
        for (e, _), c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = t * (to_q(x) ** k)
            vals.append(t)
        return scalar_sum(vals)

    def substitute(self, images: dict) -> "SuperPolynomial":
        """Replace even variables by polynomials (over a common variable set)."""
        result = None
        for (e, o), c in self.terms.items():
            term = None
            for name, k in zip(self.even_vars, e):
                if not k:
                    continue
                img = images.get(name)
                if img is None:
                    raise KeyError(f"no image for variable {name}")
                factor = img ** k
                term = factor if term is None else term * factor
            if o:
                raise ValueError("substitution of odd variables is not supported")
            if term is None:
                any_img = next(iter(images.values()))
                term = SuperPolynomial.constant(any_img.even_vars, ONE, any_img.odd_vars)
            term = term.scale(c)
            result = term if result is None else result + term
        if result is None:
            any_img = next(iter(images.values()), None)
            return SuperPolynomial(any_img.even_vars if any_img else self.even_vars,
                                   any_img.odd_vars if any_img else self.odd_vars)
        return result

    def rename(self, even_vars, odd_vars=None) -> "SuperPolynomial":
        return SuperPolynomial(even_vars, self.odd_vars if odd_vars is None else odd_vars, self.terms)

    def map_coefficients(self, f) -> "SuperPolynomial":
        return self.like({k: f(v) for k, v in self.terms.items()})

    # -- division by an even polynomial ------------------------------------
    def _lead_key(self):
        # graded lex on even exponents
        return max(self.terms, key=lambda k: (sum(k[0]), k[0], k[1]))

    def divmod(self, divisor: "SuperPolynomial"):
        """Multivariate division by a single even divisor, graded lex order.

        The remainder is zero iff ``divisor`` divides ``self`` (single divisor,
        exact field coefficients).
        """
        self._check(divisor)
        if divisor.has_odd():
            raise ValueError("divisor must be purely even")
        if not divisor.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        lk = divisor._lead_key()
        lc = divisor.terms[lk]
        inv = lc.inverse() if hasattr(lc, "inverse") else ONE / to_q(lc)
        rem = self.like(dict(self.terms))
        quo = self.like()
        out_rem = self.like()
        while rem.terms:
            k = rem._lead_key()
            c = rem.terms[k]
            if all(a >= b for a, b in zip(k[0], lk[0])):
                e = tuple(a - b for a, b in zip(k[0], lk[0]))
                q = self.like({(e, k[1]): c * inv})
                quo = quo + q
                rem = rem - q * divisor
            else:
                out_rem.terms[k] = c
                del rem.terms[k]
        return quo, out_rem

    def divides(self, other: "SuperPolynomial") -> bool:
        """True iff self divides other."""
        return not other.divmod(self)[1].terms

    def is_proportional_to(self, other: "SuperPolynomial") -> bool:
        if not self.terms or not other.terms:
            return not self.terms and not other.terms
        self._check(other)
        if set(self.terms) != set(other.terms):
            return False
        k = next(iter(self.terms))
        r = self.terms[k] / other.terms[k] if not hasattr(other.terms[k], "inverse") else self.terms[k] * other.terms[k].inverse()
        return all(self.terms[j] == r * other.terms[j] for j in self.terms)

    def ratio_to(self, other: "SuperPolynomial"):
        """The scalar r with self = r * other, or None."""
        if not self.is_proportional_to(other) or not other.terms:
            return None
        k = next(iter(other.terms))
        b = other.terms[k]
        return self.terms[k] * (b.inverse() if hasattr(b, "inverse") else ONE / b)

    # -- output ----------------------------------------------------------
    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0][0]) - len(t[0][1]), [-x for x in t[0][0]], t[0][1]))

    def monomial_str(self, key) -> str:
        e, o = key
        parts = []
        for name, k in zip(self.even_vars, e):
            if k == 1:
                parts.append(name)
            elif k > 1:
                parts.append(f"{name}^{k}")
        parts.extend(self.odd_vars[i] for i in o)
        return "*".join(parts) if parts else "1"

    def __str__(self):
        if not self.terms:
            return "0"
        from .pbw import _coefficient_text

        out = []
        for key, c in self.sorted_terms():
            mono = self.monomial_str(key)
            neg, body = _coefficient_text(c)
            if mono == "1":
                text = body
            else:
                text = mono if body == "1" else f"{body}*{mono}"
            out.append((("-" if neg else "") if not out else (" - " if neg else " + ")) + text)
        return "".join(out)

    __repr__ = __str__

    def to_json(self) -> dict:
        return {
            "variables": {"even": list(self.even_vars), "odd": list(self.odd_vars)},
            "terms": [[self.monomial_str(k), format_scalar(c)] for k, c in self.sorted_terms()],
            "text": str(self),
        }


def product(polys, even_vars, odd_vars=()) -> SuperPolynomial:
    out = SuperPolynomial.constant(even_vars, ONE, odd_vars)
    for p in polys:
        out = out * p
    return out


def rational_factorization(p: SuperPolynomial) -> dict | None:
    """Factor an even polynomial with rational coefficients; None when that does not apply."""
    import sympy

    if p.has_odd() or p.is_zero() or not all(isinstance(c, type(ONE)) for c in p.terms.values()):
        return None
    symbols = tuple(sympy.Symbol(name) for name in p.even_vars)
    expr = sympy.Integer(0)
    for (exps, _), c in p.terms.items():
        term = sympy.Rational(int(c.numerator), int(c.denominator))
        for s, e in zip(symbols, exps):
            term *= s ** e
        expr += term
    constant, factors = sympy.factor_list(expr, *symbols) if symbols else (expr, [])
    parts = [{"factor": str(f.as_expr()), "multiplicity": m, "degree": int(sympy.Poly(f, *symbols).total_degree())}
             for f, m in factors]
    return {"constant": str(constant), "factors": parts,
            "all_linear": all(part["degree"] == 1 for part in parts)}
