"""Text grammar for polynomials and ideals.

Polynomials are written with ``+ - * / ^`` and parentheses over the variables
``z1`` and ``z2``, the imaginary unit ``i`` and rational literals, e.g.
``(1/2+1/3*i)*z1^2*z2 - z2 + 1``.  Division is allowed only by nonzero
constants.  Decimal literals are rationalized (snapped to a small
denominator when within 1e-12).  An ideal is a ``;``-separated list.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import List

from .gaussian import ONE, GaussianRational, snap_float
from .poly import VARIABLE_NAMES, DomainError, Poly, grlex


class ParseError(DomainError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column
        self.reason = message


_TOKEN = re.compile(
    r"(?P<ws>[ \t\r\n]+)"
    r"|(?P<num>\d+\.\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?|\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<var>z1|z2)"
    r"|(?P<imag>i)"
    r"|(?P<op>[-+*/^();])"
)


class _Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind, self.text, self.line, self.col = kind, text, line, col


def _tokenize(text: str) -> List[_Token]:
    tokens = []
    pos, line, col = 0, 1, 1
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        chunk = m.group()
        if kind != "ws":
            tokens.append(_Token(kind, chunk, line, col))
        for ch in chunk:
            if ch == "\n":
                line, col = line + 1, 1
            else:
                col += 1
        pos = m.end()
    tokens.append(_Token("eof", "", line, col))
    return tokens


def _number(text: str) -> GaussianRational:
    if re.fullmatch(r"\d+", text):
        return GaussianRational(int(text))
    exact = Fraction(text)
    snapped = snap_float(float(exact))
    if abs(snapped - exact) <= Fraction(1, 10**12) * max(1, abs(exact)):
        return GaussianRational(snapped)
    return GaussianRational(exact)


class _Parser:
    def __init__(self, text: str, nvars: int = 2):
        self.tokens = _tokenize(text)
        self.i = 0
        self.nvars = nvars

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def take(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        return ParseError(message, tok.line, tok.col)

    def expect(self, text):
        tok = self.peek()
        if tok.text != text:
            found = tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        return self.take()

    def expr(self) -> Poly:
        tok = self.peek()
        if tok.kind == "op" and tok.text in "+-":
            self.take()
            value = self.term()
            if tok.text == "-":
                value = -value
        else:
            value = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.take().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> Poly:
        value = self.unary()
        while self.peek().kind == "op" and self.peek().text in "*/":
            op = self.take()
            rhs = self.unary()
            if op.text == "*":
                value = value * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    raise self.error("division only by a nonzero constant", op)
                value = value * rhs.constant_value().inverse()
        return value

    def unary(self) -> Poly:
        tok = self.peek()
        if tok.kind == "op" and tok.text in "+-":
            self.take()
            value = self.unary()
            return -value if tok.text == "-" else value
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.peek().text == "^":
            self.take()
            tok = self.peek()
            if tok.kind != "num" or not tok.text.isdigit():
                raise self.error("exponent must be a non-negative integer literal")
            self.take()
            base = base ** int(tok.text)
        return base

    def atom(self) -> Poly:
        tok = self.peek()
        if tok.kind == "num":
            self.take()
            return Poly.constant(_number(tok.text), self.nvars)
        if tok.kind == "imag":
            self.take()
            return Poly.constant(GaussianRational(0, 1), self.nvars)
        if tok.kind == "var":
            self.take()
            return Poly.var(VARIABLE_NAMES.index(tok.text), self.nvars)
        if tok.text == "(":
            self.take()
            value = self.expr()
            self.expect(")")
            return value
        found = tok.text or "end of input"
        raise self.error(f"unexpected {found!r}")


def parse_poly(text: str) -> Poly:
    """Parse one polynomial in z1, z2."""
    parser = _Parser(text)
    value = parser.expr()
    if parser.peek().kind != "eof":
        raise parser.error(f"unexpected {parser.peek().text!r}")
    return value


def parse_poly_list(text: str) -> List[Poly]:
    """Parse a ``;``-separated list (the ideal text form)."""
    parser = _Parser(text)
    _strip_list_parens(parser)
    out = []
    while True:
        if parser.peek().kind == "eof":
            break
        if parser.peek().text == ";":
            parser.take()
            continue
        out.append(parser.expr())
        tok = parser.peek()
        if tok.kind == "eof":
            break
        if tok.text != ";":
            raise parser.error(f"unexpected {tok.text!r}")
    if not out:
        raise ParseError("empty polynomial list", 1, 1)
    return out


def _strip_list_parens(parser: _Parser) -> None:
    """Accept ``(f; g)``: drop outer parentheses that enclose a top-level ``;``."""
    toks = parser.tokens
    if len(toks) < 3 or toks[0].text != "(" or toks[-2].text != ")":
        return
    depth = 0
    has_semicolon = False
    for k, tok in enumerate(toks[:-1]):
        if tok.text == "(":
            depth += 1
        elif tok.text == ")":
            depth -= 1
            if depth == 0 and k != len(toks) - 2:
                return
        elif tok.text == ";" and depth == 1:
            has_semicolon = True
    if has_semicolon:
        parser.tokens = toks[1:-2] + [toks[-1]]


def _monomial_str(e) -> str:
    parts = []
    for name, k in zip(VARIABLE_NAMES, e):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def format_poly(p: Poly) -> str:
    """Canonical text form, terms in descending graded-lex order."""
    if p.is_zero():
        return "0"
    pieces = []
    for idx, (e, c) in enumerate(p.sorted_terms(grlex)):
        mono = _monomial_str(e)
        negative = False
        if c.is_real():
            negative = c.re < 0
            mag = GaussianRational(abs(c.re))
            coeff = "" if (mag == ONE and mono) else mag.to_string()
        elif not c.re:
            negative = c.im < 0
            mag = GaussianRational(0, abs(c.im))
            coeff = mag.to_string()
        else:
            coeff = f"({c.to_string()})"
        body = coeff + ("*" if coeff and mono else "") + mono
        if idx == 0:
            pieces.append(("-" if negative else "") + body)
        else:
            pieces.append((" - " if negative else " + ") + body)
    return "".join(pieces)


def format_ideal(gens) -> str:
    return "; ".join(format_poly(g) for g in gens)
