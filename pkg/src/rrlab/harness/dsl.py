"""The session script language: parser, AST and pretty-printer.

Grammar (EBNF)::

    script      = { statement ";" } ;
    statement   = ring_decl | module_decl | command ;
    ring_decl   = "ring" NAME "=" "poly" "(" field ";" NAME { "," NAME } ")"
                  [ "/" "(" poly { "," poly } ")" ] ;
    field       = "Q" | "Fp" [ "<" INT ">" ] ;
    module_decl = "module" NAME "=" module_expr ;
    module_expr = ( "ideal" | "cyclic" ) "(" poly { "," poly } ")"
                | "coker" "(" matrix [ "," int_list ] ")"
                | ( "power" | "ratliff_rush" ) "(" NAME "," INT ")"
                | "sub" "(" NAME "," entry { "," entry } ")"
                | "maximal" "(" ")"
                | NAME ;
    matrix      = "[" row { "," row } "]" ;   row = "[" poly { "," poly } "]" ;
    int_list    = "[" INT { "," INT } "]" ;
    entry       = poly | row ;
    command     = CMD { NAME | INT | "in" } { "--" NAME [ value ] } ;
    value       = NAME | INT | "(" poly ")" ;

``#`` starts a comment running to the end of the line.  A module refers to
the most recently declared ring, and a ring name used as a module is the
ring itself.  Every polynomial must be homogeneous; cokernel shifts are
inferred so that each column is homogeneous unless given explicitly.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field

from ..exact.polynomial import ExprParser, ParseError, PolyRing, Polynomial
from ..exact.scalars import DEFAULT_PRIME, GF, QQ, Field

NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
INT = re.compile(r"\d+")

MODULE_KINDS = ("ideal", "cyclic", "coker", "power", "ratliff_rush", "sub", "maximal", "ref")

# command -> (positional pattern, allowed options); "M" is a module name, "n" an integer
COMMANDS: dict[str, tuple[tuple, tuple]] = {
    "rho": (("M",), ("expect",)),
    "ratliff_rush": (("M", "n"), ("mode",)),
    "superficial": (("M",), ()),
    "mfull": (("M", "in", "M"), ("witness", "expect")),
    "split": (("M", "in", "M"), ("witness",)),
    "closures": (("M",), ()),
    "resolve": (("M",), ("length",)),
    "depth": (("M",), ("expect",)),
    "projdim": (("M",), ("expect",)),
    "reg": (("M",), ("expect",)),
    "graded": (("M",), ()),
    "gdim": (("M",), ("bound", "expect")),
    "verify": (("M",), ("nmax", "gdim")),
    "crosscheck": (("M",), ("degree",)),
    "print": (("M",), ()),
}

# options whose value is a polynomial in the module's ring
POLY_OPTIONS = ("witness",)
FLAG_OPTIONS = ("gdim",)


class ScriptError(ValueError):
    """A diagnostic with a 1-based line and column."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} at {line}:{col}")
        self.message = message
        self.line = line
        self.col = col


@dataclass(frozen=True)
class RingDecl:
    name: str
    field: str                 # "Q" or "Fp<p>"
    variables: tuple
    ideal: tuple = ()
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class ModuleDecl:
    """``args`` by kind: polynomials (ideal, cyclic), ``(rows, shifts)`` (coker),
    ``(source, n)`` (power, ratliff_rush), ``(source, vectors)`` (sub), ``()``
    (maximal) or ``(name,)`` (ref)."""

    name: str
    ring: str
    kind: str
    args: tuple
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Command:
    name: str
    args: tuple
    options: tuple = ()
    pos: int = field(default=0, compare=False)

    def option(self, key: str, default=None):
        for k, v in self.options:
            if k == key:
                return v
        return default


@dataclass(frozen=True)
class SessionScript:
    statements: tuple

    @property
    def rings(self) -> list[RingDecl]:
        return [s for s in self.statements if isinstance(s, RingDecl)]

    @property
    def modules(self) -> list[ModuleDecl]:
        return [s for s in self.statements if isinstance(s, ModuleDecl)]

    @property
    def commands(self) -> list[Command]:
        return [s for s in self.statements if isinstance(s, Command)]


def field_of(spec: str) -> Field:
    if spec == "Q":
        return QQ
    return GF(int(spec[3:-1]))


@dataclass
class _ModInfo:
    ring: str
    rank: int
    shifts: tuple


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.rings: dict[str, PolyRing] = {}
        self.modules: dict[str, _ModInfo] = {}
        self.current: str | None = None

    # -- positions and errors ---------------------------------------------
    def where(self, pos: int) -> tuple[int, int]:
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def error(self, message: str, pos: int | None = None) -> ScriptError:
        return ScriptError(message, *self.where(self.pos if pos is None else pos))

    # -- lexing helpers -----------------------------------------------------
    def skip(self) -> None:
        t = self.text
        while self.pos < len(t):
            if t[self.pos].isspace():
                self.pos += 1
            elif t[self.pos] == "#":
                nl = t.find("\n", self.pos)
                self.pos = len(t) if nl < 0 else nl + 1
            else:
                break

    def at_end(self) -> bool:
        self.skip()
        return self.pos >= len(self.text)

    def peek(self, s: str) -> bool:
        self.skip()
        return self.text.startswith(s, self.pos)

    def accept(self, s: str) -> bool:
        if self.peek(s):
            self.pos += len(s)
            return True
        return False

    def expect(self, s: str) -> None:
        if not self.accept(s):
            found = self.text[self.pos:self.pos + 1] or "end of input"
            raise self.error(f"expected {s!r}, found {found!r}")

    def name(self, what: str = "a name") -> tuple[str, int]:
        self.skip()
        m = NAME.match(self.text, self.pos)
        if not m:
            raise self.error(f"expected {what}")
        self.pos = m.end()
        return m.group(), m.start()

    def peek_name(self) -> str | None:
        self.skip()
        m = NAME.match(self.text, self.pos)
        return m.group() if m else None

    def integer(self) -> int:
        self.skip()
        m = INT.match(self.text, self.pos)
        if not m:
            raise self.error("expected an integer")
        self.pos = m.end()
        return int(m.group())

    def expression(self) -> tuple[str, int]:
        """Raw text up to the next top-level ``,``, ``)``, ``]`` or ``;``."""
        self.skip()
        start = self.pos
        depth = 0
        t = self.text
        while self.pos < len(t):
            c = t[self.pos]
            if c == "(":
                depth += 1
            elif c == ")":
                if depth == 0:
                    break
                depth -= 1
            elif c in ",];[" and depth == 0:
                break
            elif c == "#":
                break
            self.pos += 1
        raw = t[start:self.pos]
        if not raw.strip():
            raise self.error("expected a polynomial", start)
        return raw.rstrip(), start

    def poly(self, ring: PolyRing, raw: str, start: int) -> Polynomial:
        try:
            return ExprParser(raw, ring, start).parse_all()
        except ParseError as exc:
            line, col = self.where(exc.pos)
            msg = exc.message
            if msg.startswith("unknown variable"):
                msg = "unknown name " + msg.split(" ", 2)[2]
            raise ScriptError(msg, line, col) from None

    def homogeneous_poly(self, ring: PolyRing, what: str = "generator") -> tuple[Polynomial, int]:
        raw, start = self.expression()
        p = self.poly(ring, raw, start)
        if not p.is_homogeneous():
            raise self.error(f"inhomogeneous {what}", start)
        return p, start

    def fresh(self, name: str, pos: int) -> None:
        if name in self.rings or name in self.modules:
            raise self.error(f"duplicate name {name!r}", pos)

    def module_ref(self) -> tuple[str, int]:
        name, pos = self.name("a module name")
        if name in self.rings and name not in self.modules:
            self.modules[name] = _ModInfo(name, 1, (0,))
        if name not in self.modules:
            raise self.error(f"unknown name {name!r}", pos)
        return name, pos

    # -- statements ----------------------------------------------------------
    def script(self) -> SessionScript:
        out = []
        while not self.at_end():
            out.append(self.statement())
            self.expect(";")
        return SessionScript(tuple(out))

    def statement(self):
        word, pos = self.name("a statement")
        if word == "ring":
            return self.ring_decl(pos)
        if word == "module":
            return self.module_decl(pos)
        if word in COMMANDS:
            return self.command(word, pos)
        raise self.error(f"unknown command {word!r}", pos)

    def ring_decl(self, pos: int) -> RingDecl:
        name, npos = self.name("a ring name")
        self.fresh(name, npos)
        self.expect("=")
        kw, kpos = self.name("'poly'")
        if kw != "poly":
            raise self.error("expected 'poly'", kpos)
        self.expect("(")
        fname, fpos = self.name("a field (Q or Fp<p>)")
        if fname == "Q":
            fspec = "Q"
        elif fname == "Fp":
            p = DEFAULT_PRIME
            if self.accept("<"):
                p = self.integer()
                self.expect(">")
            try:
                GF(p)
            except ValueError as exc:
                raise self.error(str(exc), fpos) from None
            fspec = f"Fp<{p}>"
        else:
            raise self.error(f"unknown field {fname!r}", fpos)
        self.expect(";")
        names = []
        while True:
            v, vpos = self.name("a variable name")
            if v in names:
                raise self.error(f"duplicate variable {v!r}", vpos)
            names.append(v)
            if not self.accept(","):
                break
        self.expect(")")
        S = PolyRing(field_of(fspec), names)
        ideal = []
        if self.accept("/"):
            self.expect("(")
            while True:
                p, ppos = self.homogeneous_poly(S, "generator")
                if p.is_constant() and p:
                    raise self.error("defining ideal is not proper", ppos)
                if p:
                    ideal.append(str(p))
                if not self.accept(","):
                    break
            self.expect(")")
        self.rings[name] = S
        self.current = name
        return RingDecl(name, fspec, tuple(names), tuple(ideal), pos)

    def module_decl(self, pos: int) -> ModuleDecl:
        name, npos = self.name("a module name")
        self.fresh(name, npos)
        self.expect("=")
        if self.current is None:
            raise self.error("module declared before any ring", pos)
        S = self.rings[self.current]
        kind, kpos = self.name("a module expression")
        if not self.peek("("):
            # a plain reference to a ring or module
            self.pos = kpos
            src, _ = self.module_ref()
            info = self.modules[src]
            self.modules[name] = info
            return ModuleDecl(name, info.ring, "ref", (src,), pos)
        self.expect("(")
        if kind in ("ideal", "cyclic"):
            gens = []
            while True:
                p, _ = self.homogeneous_poly(S)
                gens.append(str(p))
                if not self.accept(","):
                    break
            self.expect(")")
            self.modules[name] = _ModInfo(self.current, 1, (0,))
            return ModuleDecl(name, self.current, kind, tuple(gens), pos)
        if kind == "maximal":
            self.expect(")")
            self.modules[name] = _ModInfo(self.current, 1, (0,))
            return ModuleDecl(name, self.current, kind, (), pos)
        if kind == "coker":
            rows, shifts = self.coker(S)
            self.expect(")")
            self.modules[name] = _ModInfo(self.current, len(shifts), shifts)
            return ModuleDecl(name, self.current, kind, (rows, shifts), pos)
        if kind in ("power", "ratliff_rush"):
            src, spos = self.module_ref()
            self.expect(",")
            n = self.integer()
            self.expect(")")
            info = self.modules[src]
            self.modules[name] = info
            return ModuleDecl(name, info.ring, kind, (src, n), pos)
        if kind == "sub":
            src, spos = self.module_ref()
            info = self.modules[src]
            SR = self.rings[info.ring]
            vecs = []
            while self.accept(","):
                vecs.append(self.vector(SR, info))
            if not vecs:
                raise self.error("sub needs at least one generator")
            self.expect(")")
            self.modules[name] = info
            return ModuleDecl(name, info.ring, kind, (src, tuple(vecs)), pos)
        raise self.error(f"unknown module constructor {kind!r}", kpos)

    def row(self, S: PolyRing) -> tuple[list[Polynomial], list[int]]:
        self.expect("[")
        out, where = [], []
        while True:
            raw, start = self.expression()
            out.append(self.poly(S, raw, start))
            where.append(start)
            if not self.accept(","):
                break
        self.expect("]")
        return out, where

    def vector(self, S: PolyRing, info: _ModInfo) -> tuple:
        start = self.pos
        if self.peek("["):
            entries, where = self.row(S)
        else:
            raw, p0 = self.expression()
            entries, where = [self.poly(S, raw, p0)], [p0]
        if len(entries) != info.rank:
            raise self.error(f"vector has {len(entries)} entries, expected {info.rank}", start)
        deg = None
        for e, s, w in zip(entries, info.shifts, where):
            if not e:
                continue
            if not e.is_homogeneous() or (deg is not None and e.degree() + s != deg):
                raise self.error("inhomogeneous generator", w)
            deg = e.degree() + s
        return tuple(str(e) for e in entries)

    def coker(self, S: PolyRing) -> tuple[tuple, tuple]:
        self.skip()
        mpos = self.pos
        self.expect("[")
        rows, where = [], []
        while True:
            r, w = self.row(S)
            rows.append(r)
            where.append(w)
            if not self.accept(","):
                break
        self.expect("]")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise self.error("matrix rows have different lengths", mpos)
        for r, w in zip(rows, where):
            for e, p in zip(r, w):
                if not e.is_homogeneous():
                    raise self.error("inhomogeneous generator", p)
        explicit = None
        if self.accept(","):
            self.expect("[")
            explicit = [self.integer()]
            while self.accept(","):
                explicit.append(self.integer())
            self.expect("]")
            if len(explicit) != len(rows):
                raise self.error("shift list length differs from the number of rows", mpos)
        shifts = explicit or self.infer_shifts(rows, where)
        # every column must be homogeneous for the shifts
        for j in range(ncols):
            deg = None
            for i, r in enumerate(rows):
                if r[j]:
                    d = r[j].degree() + shifts[i]
                    if deg is not None and d != deg:
                        raise self.error("inhomogeneous generator", where[i][j])
                    deg = d
        return tuple(tuple(str(e) for e in r) for r in rows), tuple(shifts)

    def infer_shifts(self, rows, where) -> list[int]:
        """Breadth-first propagation of ``shift_i - shift_k = deg a_kj - deg a_ij``."""
        nrows = len(rows)
        shifts: list[int | None] = [None] * nrows
        for root in range(nrows):
            if shifts[root] is not None:
                continue
            shifts[root] = 0
            queue = deque([root])
            while queue:
                i = queue.popleft()
                for j, e in enumerate(rows[i]):
                    if not e:
                        continue
                    for k in range(nrows):
                        f = rows[k][j]
                        if not f:
                            continue
                        want = shifts[i] + e.degree() - f.degree()
                        if shifts[k] is None:
                            shifts[k] = want
                            queue.append(k)
                        elif shifts[k] != want:
                            raise self.error("inhomogeneous generator", where[k][j])
        low = min(shifts)
        return [s - low for s in shifts]

    def command(self, word: str, pos: int) -> Command:
        pattern, allowed = COMMANDS[word]
        args = []
        ring = None
        for p in pattern:
            if p == "M":
                m, _ = self.module_ref()
                ring = self.modules[m].ring
                args.append(m)
            elif p == "n":
                args.append(self.integer())
            else:
                kw, kpos = self.name(f"{p!r}")
                if kw != p:
                    raise self.error(f"expected {p!r}", kpos)
                args.append(p)
        opts = []
        while self.accept("--"):
            key, kpos = self.name("an option name")
            if key not in allowed:
                raise self.error(f"unknown option --{key} for {word}", kpos)
            if key in FLAG_OPTIONS:
                opts.append((key, True))
                continue
            self.skip()
            if key in POLY_OPTIONS:
                if self.accept("("):
                    raw, start = self.expression()
                    self.expect(")")
                else:
                    v, start = self.name("a polynomial")
                    raw = v
                p = self.poly(self.rings[ring], raw, start)
                if not p.is_homogeneous():
                    raise self.error("inhomogeneous witness", start)
                opts.append((key, str(p)))
            elif INT.match(self.text, self.pos):
                opts.append((key, self.integer()))
            else:
                opts.append((key, self.name("an option value")[0]))
        return Command(word, tuple(args), tuple(opts), pos)


def parse(text: str) -> SessionScript:
    """Parse a script, raising :class:`ScriptError` with a line:column position."""
    return _Parser(text).script()


# -- pretty printing -----------------------------------------------------------

def _fmt_module(m: ModuleDecl) -> str:
    k, a = m.kind, m.args
    if k in ("ideal", "cyclic"):
        return f"{k}({', '.join(a)})"
    if k == "maximal":
        return "maximal()"
    if k == "ref":
        return a[0]
    if k == "coker":
        rows, shifts = a
        mat = ", ".join("[" + ", ".join(r) + "]" for r in rows)
        return f"coker([{mat}], [{', '.join(map(str, shifts))}])"
    if k in ("power", "ratliff_rush"):
        return f"{k}({a[0]}, {a[1]})"
    if k == "sub":
        vecs = ", ".join("[" + ", ".join(v) + "]" for v in a[1])
        return f"sub({a[0]}, {vecs})"
    raise ValueError(k)


def format_statement(s) -> str:
    if isinstance(s, RingDecl):
        out = f"ring {s.name} = poly({s.field}; {', '.join(s.variables)})"
        if s.ideal:
            out += f" / ({', '.join(s.ideal)})"
        return out + ";"
    if isinstance(s, ModuleDecl):
        return f"module {s.name} = {_fmt_module(s)};"
    parts = [s.name] + [str(a) for a in s.args]
    for k, v in s.options:
        if v is True:
            parts.append(f"--{k}")
        elif k in POLY_OPTIONS:
            parts.append(f"--{k} ({v})")
        else:
            parts.append(f"--{k} {v}")
    return " ".join(parts) + ";"


def format_script(script: SessionScript) -> str:
    return "\n".join(format_statement(s) for s in script.statements) + "\n"
