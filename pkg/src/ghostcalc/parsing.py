"""Text input for enveloping algebra elements and scalars.

Grammar::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ['^' integer]
    atom   := rational | generator | 'c' | 'zeta' | cycM[a0, a1, ...] | '(' expr ')'

``c`` is only accepted over ``ratfun-c`` and ``zeta`` / ``cycM[...]`` only over
``cyclotomic:M``.  Output of ``serialize_element`` parses back to the same term map.
"""

from __future__ import annotations

import re

from .errors import ParseError
from .fields import Cyclotomic, Field, Q
from .pbw import UEAElement, named_ordering

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<cyc>cyc\d+\[)|(?P<name>[A-Za-z_][A-Za-z0-9_.']*)|(?P<op>[-+*/^()\[\],]))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[start]!r}", text, start, "a number, name or operator")
        kind = m.lastgroup
        start = m.start(kind)
        out.append((kind, m.group(kind), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text, uea, field: Field):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.uea = uea
        self.field = field
        self.g = uea.ordering.algebra

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg, expected, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.text, tok[2], expected)

    def expect(self, value):
        t = self.peek()
        if t[1] != value:
            self.fail(f"expected {value!r}", repr(value))
        return self.take()

    def parse(self) -> UEAElement:
        if self.peek()[0] == "end":
            self.fail("empty expression", "a term")
        e = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}", "an operator or end of input")
        return e

    def expr(self):
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        total = self.term().scale(sign)
        while self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            t = self.term()
            total = total + t if op == "+" else total - t
        return total

    def term(self):
        value = self.factor()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.take()
            rhs = self.factor()
            if op[1] == "*":
                value = value * rhs
            else:
                scalar = _as_scalar(rhs)
                if scalar is None:
                    self.fail("division by a non-scalar", "a scalar divisor", op)
                if scalar == 0:
                    self.fail("division by zero", "a nonzero divisor", op)
                value = value.scale(scalar.inverse() if hasattr(scalar, "inverse") else Q(1) / scalar)
        return value

    def factor(self):
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            t = self.peek()
            if t[0] != "num" or "/" in t[1]:
                self.fail("exponent must be a nonnegative integer", "an integer exponent")
            self.take()
            base = base ** int(t[1])
        return base

    def atom(self):
        kind, value, pos = self.peek()
        U = self.uea
        if kind == "num":
            self.take()
            if "/" in value and int(value.split("/")[1]) == 0:
                raise ParseError("malformed rational (zero denominator)", self.text, pos, "a rational p/q with q > 0")
            return U.scalar(Q(value))
        if kind == "cyc":
            self.take()
            order = int(value[3:-1])
            if self.field.kind != "cyclotomic" or self.field.order != order:
                raise ParseError(f"literal {value}...] needs the field cyclotomic:{order}", self.text, pos,
                                 f"scalars of field {self.field}")
            coeffs = []
            while True:
                sign = 1
                if self.peek()[1] == "-":
                    self.take()
                    sign = -1
                t = self.peek()
                if t[0] != "num":
                    self.fail("malformed cyclotomic literal", "a rational coefficient")
                self.take()
                coeffs.append(Q(t[1]) * sign)
                if self.peek()[1] == ",":
                    self.take()
                    continue
                self.expect("]")
                break
            return U.scalar(Cyclotomic(order, coeffs))
        if kind == "name":
            self.take()
            if self.g.has_name(value):
                return U.gen(value)
            if value == "c":
                if not self.field.has_parameter:
                    raise ParseError("the literal c needs the field ratfun-c", self.text, pos,
                                     "a generator name")
                return U.scalar(self.field.parameter())
            if value == "zeta":
                if self.field.kind != "cyclotomic":
                    raise ParseError("zeta needs a cyclotomic field", self.text, pos, "a generator name")
                return U.scalar(self.field.zeta())
            raise ParseError(f"unknown symbol {value!r}", self.text, pos,
                             "one of " + ", ".join(b.name for b in self.g.basis))
        if value == "(":
            self.take()
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "end":
            self.fail("unexpected end of input", "a number, generator or '('")
        self.fail(f"unexpected {value!r}", "a number, generator or '('")


def _as_scalar(e: UEAElement):
    if not e.terms:
        return Q(0)
    if set(e.terms) == {()}:
        return e.terms[()]
    return None


def parse_element(text: str, g, field: Field | str = "Q", ordering: str = "hc") -> UEAElement:
    if isinstance(field, str):
        field = Field.parse(field)
    U = g.uea(named_ordering(g, ordering))
    return _Parser(text, U, field).parse()


def parse_scalar(text: str, field: Field | str = "Q"):
    """A scalar expression (no generators) in the given field."""
    from .families import build_abelian

    if isinstance(field, str):
        field = Field.parse(field)
    host = build_abelian(0, 0)
    e = parse_element(text, host, field, "basis")
    return _as_scalar(e)


def element_text(pairs) -> str:
    """Expression text for serialized [monomial, coefficient] pairs."""
    if not pairs:
        return "0"
    parts = []
    for mono, coeff in pairs:
        c = f"({coeff})"
        parts.append(c if mono == "1" else f"{c}*{mono}")
    return " + ".join(parts)


def serialize_element(a: UEAElement) -> dict:
    pairs = a.serialize()
    return {"ordering": a.ordering.name, "terms": pairs, "text": str(a)}


def parse_serialized(data: dict, g, field: Field | str = "Q") -> UEAElement:
    return parse_element(element_text(data["terms"]), g, field, data.get("ordering", "hc"))
