"""Parsers for polynomials, cover configurations and GW expressions.

Polynomials: integers, variables, ``+ - * / ^`` and parentheses, with implicit
multiplication (``3X0^2X1``).  Division is only by nonzero constants.

GW expressions: ``<q>`` (also ``⟨q⟩``) for a rank-one form with ``q`` a
nonzero rational, ``H`` for the hyperbolic form, integers, ``+ - *`` and
parentheses, e.g. ``2<1> + 11*H`` or ``(<3> + H)*(<1> + H)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ParseError, ValidationError
from .fields import Field, GF, QQ
from .gw import GWElement
from .mpoly import MultiPoly

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()<>⟨⟩·]))"
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str, line: int = 1, col: int = 1) -> list[Token]:
    out: list[Token] = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            j = pos
            while j < len(text) and text[j].isspace():
                j += 1
            raise ParseError(f"unexpected character {text[j]!r}", line, col + j)
        kind = m.lastgroup
        out.append(Token(kind, m.group(kind), line, col + m.start(kind)))
        pos = m.end()
    out.append(Token("end", "", line, col + len(text)))
    return out


class _Cursor:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def take(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def at(self, *texts) -> bool:
        return self.tok.kind == "op" and self.tok.text in texts

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail(f"expected {text!r}")
        return self.take()

    def fail(self, msg: str):
        t = self.tok
        found = "end of input" if t.kind == "end" else repr(t.text)
        raise ParseError(f"{msg}, found {found}", t.line, t.col)


# ----------------------------------------------------------------- polynomials

class _PolyParser:
    def __init__(self, tokens, K: Field, variables: Sequence[str]):
        self.c = _Cursor(tokens)
        self.K = K
        self.variables = tuple(variables)

    def parse(self) -> MultiPoly:
        p = self.expr()
        if self.c.tok.kind != "end":
            self.c.fail("unexpected token")
        return p

    def expr(self) -> MultiPoly:
        c = self.c
        if c.at("+", "-"):
            neg = c.take().text == "-"
            acc = self.term()
            if neg:
                acc = -acc
        else:
            acc = self.term()
        while c.at("+", "-"):
            op = c.take().text
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def _starts_factor(self) -> bool:
        t = self.c.tok
        return t.kind in ("num", "name") or (t.kind == "op" and t.text == "(")

    def term(self) -> MultiPoly:
        c = self.c
        acc = self.power()
        while True:
            if c.at("*"):
                c.take()
                acc = acc * self.power()
            elif c.at("/"):
                tok = c.take()
                d = self.power()
                if d.total_degree() > 0:
                    raise ParseError("division is only allowed by constants", tok.line, tok.col)
                k = d.constant_term()
                if self.K.is_zero(k):
                    raise ParseError(f"division by zero in {self.K}", tok.line, tok.col)
                acc = acc * self.K.wrap(self.K.inv(k))
            elif self._starts_factor():
                acc = acc * self.power()
            else:
                return acc

    def power(self) -> MultiPoly:
        c = self.c
        if c.at("-"):
            c.take()
            return -self.power()
        base = self.atom()
        if c.at("^"):
            c.take()
            t = c.tok
            if t.kind != "num":
                c.fail("expected a non-negative integer exponent")
            c.take()
            base = base ** int(t.text)
        return base

    def atom(self) -> MultiPoly:
        c = self.c
        t = c.tok
        K, V = self.K, self.variables
        if t.kind == "num":
            c.take()
            return MultiPoly.constant(K, V, int(t.text))
        if t.kind == "name":
            c.take()
            if t.text in V:
                return MultiPoly.variable(K, V, t.text)
            parts = _split_names(t.text, V)
            if parts is None:
                raise ParseError(f"unknown variable {t.text!r} (expected one of {', '.join(V)})", t.line, t.col)
            acc = MultiPoly.constant(K, V, 1)
            for v in parts:
                acc = acc * MultiPoly.variable(K, V, v)
            return acc
        if c.at("("):
            c.take()
            p = self.expr()
            c.expect(")")
            return p
        c.fail("expected a number, variable or '('")


def _split_names(word: str, variables: Sequence[str]) -> list[str] | None:
    """Split ``X0X1`` into known variable names (longest match first)."""
    names = sorted(variables, key=len, reverse=True)
    out = []
    i = 0
    while i < len(word):
        for v in names:
            if word.startswith(v, i):
                out.append(v)
                i += len(v)
                break
        else:
            return None
    return out


def parse_polynomial(text: str, variables: Sequence[str], K: Field = QQ, *,
                     line: int = 1, col: int = 1) -> MultiPoly:
    if not text.strip():
        raise ParseError("empty polynomial", line, col)
    return _PolyParser(tokenize(text, line, col), K, variables).parse()


def parse_univariate(text: str, var: str, K: Field) -> list:
    return parse_polynomial(text, (var,), K).to_univariate(var)


def parse_rational(text: str, line: int = 1, col: int = 1) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {text.strip()!r}", line, col) from None


# ---------------------------------------------------------------------- fields

def parse_field(text: str, line: int = 1, col: int = 1) -> Field:
    s = text.strip()
    if s in ("Q", "QQ"):
        return QQ
    m = re.fullmatch(r"(?:Fp|GF|F):?\s*(\d+)", s)
    if not m:
        raise ParseError(f"unknown field {s!r} (use Q or Fp:<prime>)", line, col)
    p = int(m.group(1))
    try:
        return GF(p)
    except ValueError as exc:
        raise ValidationError(str(exc)) from None


# ---------------------------------------------------------------------- config

@dataclass(frozen=True)
class CoverConfig:
    field: Field
    n: int
    F: MultiPoly
    text: str


_KEYS = ("field", "n", "F")


def _entries(text: str):
    """Yield ``(key, value, line, value_col, key_col)`` from ``key = value`` items."""
    for lineno, raw in enumerate(text.splitlines() or [""], start=1):
        body = raw.split("#", 1)[0]
        start = 0
        for chunk in body.split(";"):
            offset = start
            start += len(chunk) + 1
            if not chunk.strip():
                continue
            lead = len(chunk) - len(chunk.lstrip())
            if "=" not in chunk:
                raise ParseError("expected 'key = value'", lineno, offset + lead + 1)
            key, value = chunk.split("=", 1)
            vcol = offset + len(key) + 2
            vlead = len(value) - len(value.lstrip())
            yield key.strip(), value.strip(), lineno, vcol + vlead, offset + lead + 1


def parse_config(text: str) -> CoverConfig:
    found: dict[str, tuple[str, int, int]] = {}
    for key, value, line, vcol, kcol in _entries(text):
        if key not in _KEYS:
            raise ParseError(f"unknown key {key!r} (expected field, n or F)", line, kcol)
        if key in found:
            raise ParseError(f"duplicate key {key!r}", line, kcol)
        found[key] = (value, line, vcol)
    for key in _KEYS:
        if key not in found:
            raise ParseError(f"missing key {key!r}", 1, 1)
    fv, fl, fc = found["field"]
    K = parse_field(fv, fl, fc)
    nv, nl, nc = found["n"]
    if not re.fullmatch(r"\d+", nv):
        raise ParseError(f"n must be a positive integer, got {nv!r}", nl, nc)
    n = int(nv)
    if n < 1:
        raise ValidationError("n must be a positive integer")
    Fv, Fl, Fc = found["F"]
    F = parse_polynomial(Fv, ("X0", "X1", "X2"), K, line=Fl, col=Fc)
    return CoverConfig(K, n, F, text)


# ------------------------------------------------------------------ GW strings

class _GWParser:
    def __init__(self, tokens, K: Field):
        self.c = _Cursor(tokens)
        self.K = K

    def parse(self) -> GWElement:
        v = self.expr()
        if self.c.tok.kind != "end":
            self.c.fail("unexpected token")
        return self._gw(v)

    def _gw(self, v):
        return v * GWElement.one(self.K) if isinstance(v, int) else v

    def expr(self):
        c = self.c
        if c.at("+", "-"):
            neg = c.take().text == "-"
            acc = self.term()
            if neg:
                acc = -acc
        else:
            acc = self.term()
        while c.at("+", "-"):
            op = c.take().text
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def _starts(self) -> bool:
        t = self.c.tok
        return t.kind in ("num", "name") or self.c.at("(", "<", "⟨")

    def term(self):
        c = self.c
        acc = self.unary()
        while True:
            if c.at("*", "·"):
                c.take()
                acc = acc * self.unary()
            elif self._starts():
                acc = acc * self.unary()
            else:
                return acc

    def unary(self):
        c = self.c
        if c.at("-"):
            c.take()
            return -self.unary()
        return self.atom()

    def atom(self):
        c = self.c
        t = c.tok
        K = self.K
        if t.kind == "num":
            c.take()
            return int(t.text)
        if t.kind == "name":
            if t.text != "H":
                raise ParseError(f"unknown symbol {t.text!r}", t.line, t.col)
            c.take()
            return GWElement.hyperbolic(K)
        if c.at("("):
            c.take()
            v = self.expr()
            c.expect(")")
            return v
        if c.at("<", "⟨"):
            open_tok = c.take()
            close = ">" if open_tok.text == "<" else "⟩"
            sign = 1
            if c.at("-"):
                c.take()
                sign = -1
            elif c.at("+"):
                c.take()
            num = c.tok
            if num.kind != "num":
                c.fail("expected a nonzero rational inside <>")
            c.take()
            q = Fraction(int(num.text))
            if c.at("/"):
                c.take()
                den = c.tok
                if den.kind != "num" or int(den.text) == 0:
                    c.fail("expected a nonzero denominator")
                c.take()
                q /= int(den.text)
            c.expect(close)
            q *= sign
            try:
                x = K.convert(q)
            except ZeroDivisionError:
                raise ParseError(f"{q} is not defined in {K}", num.line, num.col) from None
            if K.is_zero(x):
                raise ParseError("the entry of <q> must be nonzero", num.line, num.col)
            return GWElement.form(K, q)
        c.fail("expected an integer, <q>, H or '('")


def parse_gw(text: str, K: Field = QQ) -> GWElement:
    if not text.strip():
        raise ParseError("empty GW expression", 1, 1)
    return _GWParser(tokenize(text), K).parse()
