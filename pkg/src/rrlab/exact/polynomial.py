"""Sparse distributed polynomials over an exact field."""

from __future__ import annotations

import re
from typing import Iterable, Mapping, Sequence

from . import monomials as mon
from .monomials import Monomial, MonomialOrder
from .scalars import Field, QQ


class ParseError(ValueError):
    """Malformed input text; ``pos`` is a 0-based character offset."""

    def __init__(self, message: str, pos: int = 0):
        super().__init__(message)
        self.message = message
        self.pos = pos


class PolyRing:
    """The polynomial ring ``k[x_1..x_d]`` with named variables."""

    def __init__(self, field: Field = QQ, names: Sequence[str] = ("x", "y"), order: MonomialOrder | None = None):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        self.field = field
        self.names = names
        self.nvars = len(names)
        self.order = order or mon.degrevlex(self.nvars)

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.field == other.field
                and self.names == other.names)

    def __hash__(self):
        return hash((self.field, self.names))

    def __repr__(self):
        return f"PolyRing({self.field!r}, {list(self.names)})"

    @property
    def gens(self) -> list["Polynomial"]:
        return [self.monomial(mon.variable(i, self.nvars)) for i in range(self.nvars)]

    def var(self, name: str) -> "Polynomial":
        return self.gens[self.names.index(name)]

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    @property
    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {mon.one(self.nvars): c} if c else {})

    def monomial(self, m: Monomial, c=1) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {tuple(m): c} if c else {})

    def __call__(self, value) -> "Polynomial":
        if isinstance(value, Polynomial):
            if value.ring == self:
                return value
            return self.from_dict({m: self.field(c) for m, c in value.items()})
        if isinstance(value, str):
            return self.parse(value)
        return self.constant(value)

    def from_dict(self, terms: Mapping[Monomial, object]) -> "Polynomial":
        f = self.field
        out = {}
        for m, c in terms.items():
            c = f(c)
            if c:
                out[tuple(m)] = c
        return Polynomial(self, out)

    def parse(self, text: str) -> "Polynomial":
        return ExprParser(text, self).parse_all()

    def with_field(self, field: Field) -> "PolyRing":
        return PolyRing(field, self.names)


class Polynomial:
    """An immutable polynomial; terms are held as ``{monomial: coefficient}``.

    The dict has no zero coefficients, so it is a canonical form on its own;
    :meth:`terms` gives the list sorted descending in the ring's order.
    """

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self._terms = terms
        self._hash = None

    # -- access --------------------------------------------------------
    def items(self):
        return self._terms.items()

    def as_dict(self) -> dict:
        return dict(self._terms)

    def terms(self, order: MonomialOrder | None = None) -> list[tuple[Monomial, object]]:
        key = (order or self.ring.order).keyfn
        return sorted(self._terms.items(), key=lambda t: key((0, t[0])), reverse=True)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, m: Monomial):
        return self._terms.get(tuple(m), self.ring.field.zero)

    def lead_term(self, order: MonomialOrder | None = None):
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        key = (order or self.ring.order).keyfn
        m = max(self._terms, key=lambda m: key((0, m)))
        return m, self._terms[m]

    def lead_monomial(self, order=None) -> Monomial:
        return self.lead_term(order)[0]

    def lead_coeff(self, order=None):
        return self.lead_term(order)[1]

    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(m) for m in self._terms)

    def low_degree(self) -> int:
        return min(sum(m) for m in self._terms) if self._terms else -1

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._terms}) <= 1

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def homogeneous_components(self) -> dict[int, "Polynomial"]:
        out: dict[int, dict] = {}
        for m, c in self._terms.items():
            out.setdefault(sum(m), {})[m] = c
        return {d: Polynomial(self.ring, t) for d, t in sorted(out.items())}

    def variables(self) -> set[int]:
        return {i for m in self._terms for i, e in enumerate(m) if e}

    # -- arithmetic ----------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring.nvars != self.ring.nvars:
                raise ValueError("polynomials live in rings with different variable counts")
            return other
        return self.ring.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        red = self.ring.field.reduce
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = red(out.get(m, 0) + c)
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        red = self.ring.field.reduce
        return Polynomial(self.ring, {m: red(-c) for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._coerce(other)
        red = self.ring.field.reduce
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple([a + b for a, b in zip(m1, m2)])
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(self.ring, {m: v for m, v in ((m, red(c)) for m, c in out.items()) if v})

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "Polynomial":
        f = self.ring.field
        c = f(c)
        if not c:
            return self.ring.zero
        return Polynomial(self.ring, {m: f.reduce(v * c) for m, v in self._terms.items()})

    def mul_monomial(self, u: Monomial, c=1) -> "Polynomial":
        f = self.ring.field
        c = f(c)
        if not c:
            return self.ring.zero
        return Polynomial(self.ring, {mon.mul(m, u): f.reduce(v * c) for m, v in self._terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def monic(self) -> "Polynomial":
        if not self._terms:
            return self
        return self.scale(self.ring.field.inv(self.lead_coeff()))

    def substitute(self, values: Mapping[int, "Polynomial"]) -> "Polynomial":
        """Replace variable ``i`` by ``values[i]`` for each key."""
        ring = self.ring
        out = ring.zero
        for m, c in self._terms.items():
            rest = list(m)
            term = ring.constant(c)
            for i, v in values.items():
                if m[i]:
                    term = term * (v ** m[i])
                    rest[i] = 0
            out = out + term.mul_monomial(tuple(rest))
        return out

    def map_coefficients(self, field: Field) -> "Polynomial":
        ring = self.ring.with_field(field)
        return ring.from_dict(dict(self._terms))

    # -- comparison / display -------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring.nvars == other.ring.nvars and self._terms == other._terms
        try:
            return self == self.ring.constant(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __str__(self):
        return format_poly(self.terms(), self.ring.names, self.ring.field)

    def __repr__(self):
        return f"Polynomial({self})"


def format_monomial(m: Monomial, names: Sequence[str]) -> str:
    parts = []
    for e, n in zip(m, names):
        if e == 1:
            parts.append(n)
        elif e:
            parts.append(f"{n}^{e}")
    return "*".join(parts)


def format_poly(terms: Iterable[tuple[Monomial, object]], names: Sequence[str], field: Field) -> str:
    out = []
    for m, c in terms:
        c = field.to_json(c)
        neg = c.startswith("-")
        if neg:
            c = c[1:]
        ms = format_monomial(m, names)
        if not ms:
            body = c
        elif c == "1":
            body = ms
        else:
            body = f"{c}*{ms}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out) if out else "0"


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


class ExprParser:
    """Recursive-descent parser for polynomial expressions.

    Grammar: ``expr := term (("+"|"-") term)*``, ``term := factor (("*"|"/") factor)*``
    (division only by nonzero constants), ``factor := ("+"|"-") factor | atom ("^" int)?``,
    ``atom := int | name | "(" expr ")"``.  Positions in errors are offsets
    into ``text`` plus ``base``.
    """

    def __init__(self, text: str, ring: PolyRing, base: int = 0):
        self.text = text
        self.ring = ring
        self.base = base
        self.tokens = []
        pos = 0
        while True:
            while pos < len(text) and text[pos].isspace():
                pos += 1
            if pos >= len(text):
                break
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ParseError(f"unexpected character {text[pos]!r}", base + pos)
            start = m.start(m.lastindex)
            self.tokens.append((m.group(m.lastindex), m.lastindex, start))
            pos = m.end()
        self.i = 0

    def _peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, 0, len(self.text))

    def _next(self):
        tok = self._peek()
        self.i += 1
        return tok

    def _error(self, msg, tok=None):
        tok = tok or self._peek()
        return ParseError(msg, self.base + tok[2])

    def parse_all(self) -> Polynomial:
        if not self.tokens:
            raise self._error("empty expression")
        p = self.expr()
        if self.i != len(self.tokens):
            raise self._error(f"unexpected token {self._peek()[0]!r}")
        return p

    def expr(self) -> Polynomial:
        p = self.term()
        while self._peek()[0] in ("+", "-"):
            op = self._next()[0]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Polynomial:
        p = self.factor()
        while self._peek()[0] in ("*", "/"):
            op = self._next()
            q = self.factor()
            if op[0] == "*":
                p = p * q
            else:
                if not q.is_constant() or q.is_zero():
                    raise self._error("division only by nonzero constants", op)
                p = p.scale(self.ring.field.inv(q.coefficient(mon.one(self.ring.nvars))))
        return p

    def factor(self) -> Polynomial:
        tok = self._peek()
        if tok[0] in ("+", "-"):
            self._next()
            p = self.factor()
            return -p if tok[0] == "-" else p
        p = self.atom()
        if self._peek()[0] in ("^", "**"):
            self._next()
            e = self._next()
            if e[1] != 1:
                raise self._error("expected integer exponent", e)
            p = p ** int(e[0])
        return p

    def atom(self) -> Polynomial:
        tok = self._next()
        text, kind, _ = tok
        if text is None:
            raise self._error("unexpected end of expression", tok)
        if kind == 1:
            return self.ring.constant(int(text))
        if kind == 2:
            if text not in self.ring.names:
                raise self._error(f"unknown variable {text!r}", tok)
            return self.ring.var(text)
        if text == "(":
            p = self.expr()
            close = self._next()
            if close[0] != ")":
                raise self._error("expected ')'", close)
            return p
        raise self._error(f"unexpected token {text!r}", tok)
