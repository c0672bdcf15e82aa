"""Exact scalar fields: rationals, cyclotomic fields and rational functions in c.

Rationals are gmpy2 ``mpq`` values.  ``Cyclotomic`` stores a residue modulo the
M-th cyclotomic polynomial and ``RatFun`` a reduced quotient of polynomials in
the formal parameter ``c`` whose coefficients may themselves be rational or
cyclotomic.  Mixed arithmetic promotes upward (Q -> Q(zeta) -> K(c)).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from gmpy2 import mpq

from .errors import FieldMismatch

Q = mpq
ZERO = mpq(0)
ONE = mpq(1)

_RATIONAL_TYPES = (int, type(mpq(0)), Fraction)


def is_rational(x) -> bool:
    return isinstance(x, _RATIONAL_TYPES) or (isinstance(x, Cyclotomic) and x.is_rational())


def to_q(x):
    """Coerce ints and Fractions to mpq, leave other scalars alone."""
    if isinstance(x, (int, Fraction)):
        return mpq(x)
    return x


# ---------------------------------------------------------------------------
# dense univariate polynomials, coefficient tuples low -> high
# ---------------------------------------------------------------------------

def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _padd(a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        if i < len(a) and i < len(b):
            out.append(a[i] + b[i])
        elif i < len(a):
            out.append(a[i])
        else:
            out.append(b[i])
    return _trim(out)


def _pneg(a):
    return tuple(-x for x in a)


def _psub(a, b):
    return _padd(a, _pneg(b))


def _pscale(a, s):
    if s == 0:
        return ()
    return _trim(x * s for x in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return _trim(out)


def _pdivmod(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    n = len(b)
    if len(a) < n:
        return (), _trim(a)
    lead = b[-1]
    inv = _inv(lead)
    quot = [ZERO] * (len(a) - n + 1)
    for shift in range(len(a) - n, -1, -1):
        f = a[shift + n - 1] * inv
        if f == 0:
            continue
        quot[shift] = f
        for i, y in enumerate(b):
            a[shift + i] = a[shift + i] - f * y
    return _trim(quot), _trim(a[:n - 1])


def _inv(x):
    return x.inverse() if isinstance(x, Cyclotomic) else ONE / x


def _pmonic(a):
    if not a:
        return a
    lead = a[-1]
    if lead == 1:
        return a
    inv = _inv(lead)
    return _trim(x * inv for x in a)


def _pgcd(a, b):
    while b:
        _, r = _pdivmod(a, b)
        a, b = b, r
    return _pmonic(a)


def _pxgcd(a, b):
    """Return (g, s, t) with s*a + t*b = g monic."""
    r0, r1 = a, b
    s0, s1 = (ONE,), ()
    t0, t1 = (), (ONE,)
    while r1:
        q, r = _pdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _psub(s0, _pmul(q, s1))
        t0, t1 = t1, _psub(t0, _pmul(q, t1))
    lead = r0[-1]
    inv = _inv(lead)
    return _pscale(r0, inv), _pscale(s0, inv), _pscale(t0, inv)


def _peval(a, x):
    acc = ZERO
    for coef in reversed(a):
        acc = acc * x + coef
    return acc


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple:
    """Integer coefficients of the m-th cyclotomic polynomial, low -> high."""
    if m < 1:
        raise ValueError("cyclotomic order must be positive")
    p = (mpq(-1),) + (ZERO,) * (m - 1) + (ONE,)
    for d in range(1, m):
        if m % d == 0:
            p, r = _pdivmod(p, cyclotomic_polynomial(d))
            assert not r
    return p


# ---------------------------------------------------------------------------
# cyclotomic field
# ---------------------------------------------------------------------------

class Cyclotomic:
    """Element of Q(zeta_M) as a reduced residue modulo Phi_M."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs=()):
        phi = cyclotomic_polynomial(order)
        c = _trim(to_q(x) for x in coeffs)
        if len(c) >= len(phi):
            _, c = _pdivmod(c, phi)
        self.order = order
        self.coeffs = c

    @classmethod
    def zeta(cls, order: int, power: int = 1) -> "Cyclotomic":
        power %= order
        return cls(order, (ZERO,) * power + (ONE,))

    def is_rational(self) -> bool:
        return len(self.coeffs) <= 1

    def to_rational(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0] if self.coeffs else ZERO

    def _lift(self, other):
        if isinstance(other, Cyclotomic):
            if other.order != self.order:
                if other.is_rational():
                    return other.coeffs
                if self.is_rational():
                    return None
                raise FieldMismatch(f"cannot combine Q(zeta_{self.order}) with Q(zeta_{other.order})")
            return other.coeffs
        if isinstance(other, _RATIONAL_TYPES):
            return _trim((to_q(other),))
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            if isinstance(other, Cyclotomic):
                return other + self
            return NotImplemented
        return Cyclotomic(self.order, _padd(self.coeffs, o))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.order, _pneg(self.coeffs))

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            if isinstance(other, Cyclotomic):
                return -(other - self)
            return NotImplemented
        return Cyclotomic(self.order, _psub(self.coeffs, o))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            if isinstance(other, Cyclotomic):
                return other * self
            return NotImplemented
        return Cyclotomic(self.order, _pmul(self.coeffs, o))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if not self.coeffs:
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        g, s, _ = _pxgcd(self.coeffs, cyclotomic_polynomial(self.order))
        assert g == (ONE,)
        return Cyclotomic(self.order, s)

    def __truediv__(self, other):
        if isinstance(other, _RATIONAL_TYPES):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return Cyclotomic(self.order, _pscale(self.coeffs, ONE / to_q(other)))
        if isinstance(other, Cyclotomic):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, _RATIONAL_TYPES):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = Cyclotomic(self.order, (ONE,))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Cyclotomic):
            if other.order == self.order:
                return self.coeffs == other.coeffs
            return self.is_rational() and other.is_rational() and self.to_rational() == other.to_rational()
        if isinstance(other, _RATIONAL_TYPES):
            return self.is_rational() and self.to_rational() == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.to_rational())
        return hash((self.order, self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __str__(self):
        return f"cyc{self.order}[" + ", ".join(format_scalar(x) for x in self.coeffs) + "]"

    __repr__ = __str__


# ---------------------------------------------------------------------------
# rational functions in c
# ---------------------------------------------------------------------------

class RatFun:
    """Reduced fraction num/den of polynomials in ``c``, den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num=(), den=(ONE,), _reduced=False):
        num = _trim(to_q(x) for x in num)
        den = _trim(to_q(x) for x in den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            self.num, self.den = (), (ONE,)
            return
        if not _reduced and len(den) > 1:
            g = _pgcd(num, den)
            if len(g) > 1:
                num, _ = _pdivmod(num, g)
                den, _ = _pdivmod(den, g)
        lead = den[-1]
        if lead != 1:
            inv = _inv(lead)
            num = _pscale(num, inv)
            den = _pscale(den, inv)
        self.num, self.den = num, den

    @classmethod
    def c(cls) -> "RatFun":
        return cls((ZERO, ONE))

    @classmethod
    def const(cls, x) -> "RatFun":
        return cls((x,))

    def is_constant(self) -> bool:
        return len(self.den) == 1 and len(self.num) <= 1

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num[0] if self.num else ZERO

    @staticmethod
    def _as_pair(other):
        if isinstance(other, RatFun):
            return other.num, other.den
        if isinstance(other, _RATIONAL_TYPES) or isinstance(other, Cyclotomic):
            return _trim((to_q(other),)), (ONE,)
        return None

    def __add__(self, other):
        o = self._as_pair(other)
        if o is None:
            return NotImplemented
        on, od = o
        if od == self.den:
            if len(od) == 1:
                return RatFun(_padd(self.num, on), od, _reduced=True)
            return RatFun(_padd(self.num, on), od)
        return RatFun(_padd(_pmul(self.num, od), _pmul(on, self.den)), _pmul(self.den, od))

    __radd__ = __add__

    def __neg__(self):
        return RatFun(_pneg(self.num), self.den, _reduced=True)

    def __sub__(self, other):
        o = self._as_pair(other)
        if o is None:
            return NotImplemented
        return self + RatFun(_pneg(o[0]), o[1], _reduced=True)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, _RATIONAL_TYPES) or isinstance(other, Cyclotomic):
            if other == 0:
                return RatFun()
            return RatFun(_pscale(self.num, to_q(other)), self.den, _reduced=True)
        if not isinstance(other, RatFun):
            return NotImplemented
        if len(self.den) == 1 and len(other.den) == 1:
            return RatFun(_pmul(self.num, other.num), (ONE,), _reduced=True)
        # cross-cancel before multiplying to keep degrees low
        g1 = _pgcd(self.num, other.den) if self.num else (ONE,)
        g2 = _pgcd(other.num, self.den) if other.num else (ONE,)
        n1, _ = _pdivmod(self.num, g1)
        d2, _ = _pdivmod(other.den, g1)
        n2, _ = _pdivmod(other.num, g2)
        d1, _ = _pdivmod(self.den, g2)
        return RatFun(_pmul(n1, n2), _pmul(d1, d2), _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "RatFun":
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFun(self.den, self.num, _reduced=True)

    def __truediv__(self, other):
        if isinstance(other, RatFun):
            return self * other.inverse()
        if isinstance(other, _RATIONAL_TYPES) or isinstance(other, Cyclotomic):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            inv = other.inverse() if isinstance(other, Cyclotomic) else ONE / to_q(other)
            return self * inv
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = RatFun((ONE,))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, RatFun):
            return self.num == other.num and self.den == other.den
        if isinstance(other, _RATIONAL_TYPES) or isinstance(other, Cyclotomic):
            if len(self.den) != 1:
                return False
            if not self.num:
                return other == 0
            return len(self.num) == 1 and self.num[0] == other
        return NotImplemented

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_value())
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    def evaluate(self, x):
        d = _peval(self.den, x)
        if d == 0:
            raise ZeroDivisionError(f"pole of {self} at c = {format_scalar(x)}")
        n = _peval(self.num, x)
        if isinstance(d, _RATIONAL_TYPES):
            return n / d
        return n * d.inverse()

    def __str__(self):
        num = _poly_str(self.num)
        if len(self.den) == 1:
            return num
        if _compound(self.num):
            num = f"({num})"
        den = _poly_str(self.den)
        return f"{num}/({den})" if _compound(self.den) else f"{num}/{den}"

    __repr__ = __str__


def _compound(p) -> bool:
    nonzero = [a for a in p if a != 0]
    return len(nonzero) > 1 or any(isinstance(a, Cyclotomic) and not a.is_rational() for a in nonzero)


def _poly_str(p, var: str = "c") -> str:
    if not p:
        return "0"
    parts = []
    for k in range(len(p) - 1, -1, -1):
        a = p[k]
        if a == 0:
            continue
        if isinstance(a, Cyclotomic) and not a.is_rational():
            coef, neg = str(a), False
        else:
            a = a.to_rational() if isinstance(a, Cyclotomic) else a
            neg = a < 0
            coef = format_scalar(-a if neg else a)
        if k == 0:
            body = coef
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if coef == "1" else f"{coef}*{mono}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


# ---------------------------------------------------------------------------
# field descriptors and formatting
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Field:
    """Names a coefficient field: ``Q``, ``cyclotomic:M`` or ``ratfun-c``."""

    kind: str = "Q"
    order: int = 1

    @classmethod
    def parse(cls, text: str) -> "Field":
        t = text.strip()
        if t in ("Q", "QQ", "rationals"):
            return cls("Q")
        if t.startswith("cyclotomic:"):
            try:
                m = int(t.split(":", 1)[1])
            except ValueError:
                raise ValueError(f"bad cyclotomic order in {text!r}") from None
            if m < 1:
                raise ValueError("cyclotomic order must be positive")
            return cls("cyclotomic", m)
        if t in ("ratfun-c", "ratfun"):
            return cls("ratfun")
        raise ValueError(f"unknown field {text!r}; expected Q, cyclotomic:M or ratfun-c")

    def __str__(self):
        if self.kind == "Q":
            return "Q"
        if self.kind == "cyclotomic":
            return f"cyclotomic:{self.order}"
        return "ratfun-c"

    @property
    def has_parameter(self) -> bool:
        return self.kind == "ratfun"

    def zeta(self, power: int = 1):
        if self.kind != "cyclotomic":
            raise FieldMismatch(f"field {self} has no distinguished root of unity")
        return Cyclotomic.zeta(self.order, power)

    def parameter(self) -> RatFun:
        if self.kind != "ratfun":
            raise FieldMismatch("the literal c is only available in the ratfun-c field")
        return RatFun.c()


def root_of_unity(m: int, power: int = 1):
    """zeta_m^power, returned as a rational when m <= 2."""
    power %= m
    if m == 1:
        return ONE
    if m == 2:
        return ONE if power == 0 else -ONE
    return Cyclotomic.zeta(m, power)


def format_scalar(x) -> str:
    if isinstance(x, (int, Fraction)):
        x = mpq(x)
    if isinstance(x, type(ZERO)):
        return str(x)
    return str(x)


def scalar_sort_key(x) -> str:
    return format_scalar(x)


def simplify_scalar(x):
    """Demote constant rational functions and rational cyclotomics."""
    if isinstance(x, RatFun) and x.is_constant():
        x = x.constant_value()
    if isinstance(x, Cyclotomic) and x.is_rational():
        x = x.to_rational()
    return to_q(x)


def scalar_sum(values):
    """Sum a list of scalars; rational functions sharing a denominator are
    added numerator-wise before any gcd work."""
    if not values:
        return ZERO
    plain = ZERO
    by_den = {}
    for v in values:
        if isinstance(v, RatFun):
            if v.is_constant():
                plain = plain + v.constant_value()
            else:
                _add_poly(by_den, v)
        else:
            plain = plain + v
    if not by_den:
        return plain
    total = plain
    for den, num in by_den.items():
        if num:
            total = RatFun(num, den) + total
    return total


def _add_poly(by_den, v):
    acc = by_den.get(v.den)
    by_den[v.den] = v.num if acc is None else _padd(acc, v.num)
