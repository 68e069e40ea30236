"""Text formats for maps, points, automorphisms and factor lists.

    map    := '[' expr ':' expr ':' expr ']'
    point  := '[' e ':' e ':' e ']' | '(' point (',' (e | 'inf'))+ ')'
    decomp := term (('o' | '∘') term)*      term := map | sigma | rho | tau

Expressions use + - * / ^, parentheses, integer literals, the variables
x, y, z and parameter letters.  Juxtaposition multiplies ("2xz^2").
Division is only allowed by expressions free of x, y, z.
"""
from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from typing import Optional, Sequence

from .exact_algebra import AlgebraError, HomPoly, ProjAut, context, field, xyz_ring
from .bubble import INF, BubblePoint
from .cremona import QUADRATIC, CremonaMap, aut_of

WORDS = {"inf", "sigma", "rho", "tau", "o", "gamma"}
GREEK = {"σ": "sigma", "ρ": "rho", "τ": "tau", "∞": "inf"}
SUPERSCRIPTS = {"⁰": "0", "¹": "1", "²": "2", "³": "3", "⁴": "4", "⁵": "5", "⁶": "6",
                "⁷": "7", "⁸": "8", "⁹": "9"}
ALIASES = {"gamma": "γ"}


class ParseError(ValueError):
    def __init__(self, message: str, text: str = "", pos: int = 0):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} (line {line}, column {col})")
        self.line, self.column, self.reason = line, col, message


@dataclass(frozen=True)
class Token:
    kind: str  # num, id, word, op, end
    value: str
    pos: int


def tokenize(text: str) -> list[Token]:
    toks: list[Token] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in SUPERSCRIPTS:
            j = i
            digits = ""
            while j < n and text[j] in SUPERSCRIPTS:
                digits += SUPERSCRIPTS[text[j]]
                j += 1
            toks.append(Token("op", "^", i))
            toks.append(Token("num", digits, i))
            i = j
            continue
        if ch in "0123456789":
            j = i
            while j < n and text[j] in "0123456789":
                j += 1
            toks.append(Token("num", text[i:j], i))
            i = j
            continue
        if ch in GREEK:
            toks.append(Token("word", GREEK[ch], i))
            i += 1
            continue
        if ch.isalpha():
            j = i
            while j < n and text[j].isalpha() and text[j] not in GREEK:
                j += 1
            run = text[i:j]
            if run in WORDS:
                if run in ALIASES:
                    toks.append(Token("id", ALIASES[run], i))
                else:
                    toks.append(Token("word", run, i))
            else:
                for k, c in enumerate(run):
                    if not unicodedata.category(c).startswith("L"):
                        raise ParseError(f"unexpected character {c!r}", text, i + k)
                    toks.append(Token("id", c, i + k))
            i = j
            continue
        if text.startswith("**", i):
            toks.append(Token("op", "^", i))
            i += 2
            continue
        if ch in "−–":
            toks.append(Token("op", "-", i))
            i += 1
            continue
        if ch in "·×":
            toks.append(Token("op", "*", i))
            i += 1
            continue
        if ch in "+-*/^()[]:,∘":
            toks.append(Token("op", ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", text, i)
    toks.append(Token("end", "", n))
    return toks


def _usable(name: str) -> bool:
    if name in "xyz":
        return True
    try:
        context({name})
    except AlgebraError:
        return False
    return True


class _Parser:
    def __init__(self, text: str, params: Optional[Sequence[str]] = None):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        found = {t.value for t in self.toks if t.kind == "id" and t.value not in "xyz"}
        try:
            self.ctx = context(set(params or ()) | found)
        except AlgebraError as e:
            bad = next((t for t in self.toks if t.kind == "id" and not _usable(t.value)), None)
            raise ParseError(str(e), text, bad.pos if bad else 0)
        self.R = xyz_ring(self.ctx)
        self.K = field(self.ctx)

    # -- helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg: str, tok: Optional[Token] = None):
        raise ParseError(msg, self.text, (tok or self.tok).pos)

    def accept(self, kind: str, value: Optional[str] = None) -> Optional[Token]:
        t = self.tok
        if t.kind == kind and (value is None or t.value == value):
            self.i += 1
            return t
        return None

    def expect(self, kind: str, value: Optional[str] = None) -> Token:
        t = self.accept(kind, value)
        if t is None:
            want = value or kind
            got = self.tok.value or "end of input"
            self.error(f"expected {want!r}, found {got!r}")
        return t

    # -- expressions
    def expr(self):
        if self.accept("op", "-"):
            val = -self.term()
        else:
            self.accept("op", "+")
            val = self.term()
        while True:
            if self.accept("op", "+"):
                val = val + self.term()
            elif self.accept("op", "-"):
                val = val - self.term()
            else:
                return val

    def _starts_factor(self) -> bool:
        t = self.tok
        return t.kind in ("num", "id") or (t.kind == "op" and t.value == "(")

    def term(self):
        val = self.power()
        while True:
            if self.accept("op", "*"):
                val = val * self.power()
            elif self.tok.kind == "op" and self.tok.value == "/":
                slash = self.expect("op", "/")
                den = self.power()
                if den.is_zero or any(sum(m) for m in den.monoms()):
                    self.error("division by a zero or non-constant expression", slash)
                val = val.quo_ground(den.LC)
            elif self._starts_factor():
                val = val * self.power()
            else:
                return val

    def power(self):
        base = self.atom()
        if self.accept("op", "^"):
            neg = bool(self.accept("op", "-"))
            t = self.expect("num")
            e = int(t.value)
            if neg:
                if e and (base.is_zero or any(sum(m) for m in base.monoms())):
                    self.error("negative power of a non-constant expression", t)
                return self.R.ground_new(self.K.one / base.LC**e) if e else self.R.one
            if e > 64:
                self.error("exponent too large", t)
            return base**e
        return base

    def atom(self):
        t = self.tok
        if self.accept("num"):
            return self.R(int(t.value))
        if self.accept("id"):
            if t.value in "xyz":
                return self.R.gens["xyz".index(t.value)]
            return self.R.ground_new(self.K.gens[self.ctx.index(t.value)])
        if self.accept("op", "("):
            v = self.expr()
            self.expect("op", ")")
            return v
        if self.accept("op", "-"):
            return -self.power()
        self.error(f"unexpected {t.value or 'end of input'!r}")

    # -- structures
    def triple(self):
        self.expect("op", "[")
        parts = [self.expr()]
        for _ in range(2):
            self.expect("op", ":")
            parts.append(self.expr())
        self.expect("op", "]")
        return parts

    def scalar_expr(self):
        start = self.tok
        v = self.expr()
        if v and any(sum(m) for m in v.monoms()):
            self.error("expected a number", start)
        return v.coeff(1) if v else self.K.zero

    def point(self) -> BubblePoint:
        if self.accept("op", "("):
            base = self.point()
            tail = list(base.tail)
            if not self.tok.value == ",":
                self.error("expected ',' after the proper point")
            while self.accept("op", ","):
                if self.accept("word", "inf"):
                    tail.append(INF)
                else:
                    tail.append(self.scalar_expr())
            self.expect("op", ")")
            return BubblePoint(base.base, tuple(tail))
        start = self.tok
        parts = self.triple()
        coords = []
        for p in parts:
            if p and any(sum(m) for m in p.monoms()):
                self.error("point coordinates must be numbers", start)
            coords.append(p.coeff(1) if p else self.K.zero)
        if not any(coords):
            self.error("all coordinates are zero", start)
        from .exact_algebra import ProjPoint
        return BubblePoint(ProjPoint.of(coords, self.ctx))

    def finish(self):
        if self.tok.kind != "end":
            self.error(f"unexpected trailing input {self.tok.value!r}")


def _map_from(parts, parser: _Parser, start: Token) -> CremonaMap:
    try:
        return CremonaMap.from_polys(parts)
    except AlgebraError as e:
        raise ParseError(str(e), parser.text, start.pos)


def parse_map(text: str, params: Optional[Sequence[str]] = None) -> CremonaMap:
    p = _Parser(text, params)
    start = p.tok
    parts = p.triple()
    p.finish()
    return _map_from(parts, p, start)


def parse_form(text: str, params: Optional[Sequence[str]] = None) -> HomPoly:
    """A single homogeneous polynomial, such as a curve equation."""
    p = _Parser(text, params)
    start = p.tok
    f = p.expr()
    p.finish()
    if not f:
        raise ParseError("the form is zero", text, start.pos)
    degs = {sum(m) for m in f.monoms()}
    if len(degs) != 1:
        raise ParseError("the form is not homogeneous", text, start.pos)
    return HomPoly.of(f, degs.pop())


def parse_triple(text: str, params: Optional[Sequence[str]] = None) -> list:
    """The three components of "[f:g:h]" exactly as written."""
    p = _Parser(text, params)
    parts = p.triple()
    p.finish()
    return parts


def parse_point(text: str, params: Optional[Sequence[str]] = None) -> BubblePoint:
    p = _Parser(text, params)
    pt = p.point()
    p.finish()
    return pt


def parse_aut(text: str, params: Optional[Sequence[str]] = None) -> ProjAut:
    m = parse_map(text, params)
    if m.degree != 1:
        raise ParseError("an automorphism needs linear entries", text, 0)
    try:
        return aut_of(m)
    except AlgebraError as e:
        raise ParseError(str(e), text, 0)


def parse_decomposition(text: str, params: Optional[Sequence[str]] = None) -> list:
    """Factors from outermost to innermost: ProjAut or a quadratic CremonaMap."""
    p = _Parser(text, params)
    out = []
    while True:
        t = p.tok
        if t.kind == "word" and t.value in QUADRATIC:
            p.i += 1
            out.append(QUADRATIC[t.value])
        elif t.kind == "op" and t.value == "[":
            parts = p.triple()
            if any(f and any(sum(m) != 1 for m in f.monoms()) for f in parts):
                p.error("automorphism entries must be linear forms", t)
            m = _map_from(parts, p, t)
            try:
                out.append(aut_of(m))
            except AlgebraError as e:
                raise ParseError(str(e), text, t.pos)
        elif t.kind in ("word", "id"):
            p.error(f"unknown symbol {t.value!r}")
        else:
            p.error("expected an automorphism or sigma/rho/tau")
        if p.accept("word", "o") or p.accept("op", "∘"):
            continue
        p.finish()
        return out


# ---------------------------------------------------------------- printing

def format_map(m: CremonaMap) -> str:
    return str(m)


def format_point(p: BubblePoint) -> str:
    return str(p)


def format_decomposition(factors: Sequence) -> str:
    out = []
    for f in factors:
        if isinstance(f, ProjAut):
            out.append(str(f))
        else:
            key = next((k for k, v in QUADRATIC.items() if v.same(f)), None)
            out.append(key if key else str(f))
    return " o ".join(out)
