"""Recursive-descent parser for the expression language::

    expr   := term (('+'|'-') term)*
    term   := unary (('*'|'/') unary)*
    unary  := '-'? factor
    factor := base ('^' ['-'] integer)?    (also ^(-n))
    base   := number | 'i' | 'x' | '(' expr ')' | func '(' args ')'
    func   := sin | cos | exp | log | theta | gauss | delta

Function arguments must be affine in ``x``, except ``exp`` which also takes
a concave quadratic (it becomes a Gaussian).  ``gauss(s[, u])`` is
``exp(-u^2 / 2s)``; ``delta(u[, n])`` is the ``n``-th derivative of delta.
"""
from __future__ import annotations

import cmath
import re
from dataclasses import dataclass

from . import expr as ex
from .errors import NotExponentialPolynomial, ParseError
from .operators import exp_poly_form

FUNCS = ("sin", "cos", "exp", "log", "theta", "gauss", "delta")
_NUMBER = re.compile(r"(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?")
_NAME = re.compile(r"[A-Za-z_]+")


@dataclass(frozen=True)
class Token:
    kind: str  # num, name, op, end
    text: str
    pos: int


def tokenize(src: str) -> list[Token]:
    out = []
    i = 0
    while i < len(src):
        c = src[i]
        if c.isspace():
            i += 1
            continue
        m = _NUMBER.match(src, i)
        if m:
            out.append(Token("num", m.group(0), i))
            i = m.end()
            continue
        m = _NAME.match(src, i)
        if m:
            out.append(Token("name", m.group(0), i))
            i = m.end()
            continue
        if c in "+-*/^(),":
            out.append(Token("op", c, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {c!r}", i)
    out.append(Token("end", "", len(src)))
    return out


class _Parser:
    def __init__(self, src: str):
        self.toks = tokenize(src)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def accept(self, text: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str, alternatives=()):
        if not self.accept(text):
            got = "end of input" if self.tok.kind == "end" else repr(self.tok.text)
            raise ParseError(f"unexpected {got}", self.tok.pos, (text, *alternatives))

    def parse(self) -> ex.Expr:
        e = self.expr()
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.pos, ("+", "-", "*", "/", "^", "end of input"))
        return e

    def expr(self) -> ex.Expr:
        e = self.term()
        while True:
            if self.accept("+"):
                e = ex.add(e, self.term())
            elif self.accept("-"):
                e = ex.add(e, ex.mul(ex.Const(-1), self.term()))
            else:
                return e

    def term(self) -> ex.Expr:
        e = self.unary()
        while True:
            if self.accept("*"):
                e = ex.mul(e, self.unary())
            elif self.accept("/"):
                e = ex.mul(e, ex.power(self.unary(), -1))
            else:
                return e

    def unary(self) -> ex.Expr:
        if self.accept("-"):
            return ex.mul(ex.Const(-1), self.factor())
        return self.factor()

    def factor(self) -> ex.Expr:
        base = self.base()
        if self.accept("^"):
            # integer exponent, optionally signed: x^2, x^-1, x^(-1)
            paren = self.accept("(")
            sign = -1 if self.accept("-") else 1
            t = self.tok
            if t.kind != "num" or not t.text.isdigit():
                raise ParseError("exponent must be an integer", t.pos, ("integer",))
            self.i += 1
            if paren:
                self.expect(")")
            return ex.power(base, sign * int(t.text))
        return base

    def base(self) -> ex.Expr:
        t = self.tok
        if t.kind == "num":
            self.i += 1
            return ex.Const(float(t.text))
        if t.kind == "name":
            if t.text == "i":
                self.i += 1
                return ex.Const(1j)
            if t.text == "x":
                self.i += 1
                return ex.X
            if t.text in FUNCS:
                self.i += 1
                self.expect("(")
                args = [self.expr()]
                while self.accept(","):
                    args.append(self.expr())
                self.expect(")", (",",))
                return self.call(t, args)
            raise ParseError(f"unknown name {t.text!r}", t.pos, ("x", "i", *FUNCS))
        if self.accept("("):
            e = self.expr()
            self.expect(")")
            return e
        got = "end of input" if t.kind == "end" else repr(t.text)
        raise ParseError(f"unexpected {got}", t.pos, ("number", "i", "x", "(", *FUNCS))

    # -- function application

    def call(self, t: Token, args: list[ex.Expr]) -> ex.Expr:
        name = t.text
        arity = {"gauss": (1, 2), "delta": (1, 2)}.get(name, (1, 1))
        if not arity[0] <= len(args) <= arity[1]:
            raise ParseError(f"{name} takes {arity[0]}..{arity[1]} arguments, got {len(args)}", t.pos)
        if name == "gauss":
            s = _constant(args[0], t.pos)
            if s.imag != 0 or s.real <= 0:
                raise ParseError("gauss width must be a positive real", t.pos)
            arg = _affine(args[1], t.pos) if len(args) == 2 else ex.IDENTITY
            return ex.Gaussian(s.real, arg)
        if name == "delta":
            n = 0
            if len(args) == 2:
                v = _constant(args[1], t.pos)
                if v.imag != 0 or v.real != int(v.real) or v.real < 0:
                    raise ParseError("delta order must be a non-negative integer", t.pos)
                n = int(v.real)
            return ex.DiracDelta(n, _affine(args[0], t.pos))
        if name == "exp":
            return _exp(args[0], t.pos)
        node = {"sin": ex.Sin, "cos": ex.Cos, "log": ex.Log, "theta": ex.Heaviside}[name]
        return node(_affine(args[0], t.pos))


def _poly_coeffs(e: ex.Expr, pos: int) -> dict[int, complex]:
    try:
        form = exp_poly_form(e)
    except NotExponentialPolynomial:
        form = None
    if form is None or any(b != 0 or p != 0 or k < 0 for (k, b, p) in form.terms):
        raise ParseError("function argument must be a polynomial in x", pos)
    return {k: c for (k, _, _), c in form.terms.items()}


def _constant(e: ex.Expr, pos: int) -> complex:
    c = _poly_coeffs(e, pos)
    if any(k != 0 for k in c):
        raise ParseError("expected a constant", pos)
    return complex(c.get(0, 0))


def _affine(e: ex.Expr, pos: int) -> ex.Affine:
    c = _poly_coeffs(e, pos)
    if any(k > 1 for k in c) or c.get(1, 0) == 0:
        raise ParseError("argument must be affine in x (a*x + c with a != 0)", pos)
    scale = c[1]
    return ex.Affine(scale.real if scale.imag == 0 else scale, _real_if(c.get(0, 0)))


def _real_if(z: complex):
    return z.real if z.imag == 0 else z


def _exp(e: ex.Expr, pos: int) -> ex.Expr:
    c = _poly_coeffs(e, pos)
    if any(k > 2 for k in c):
        raise ParseError("exp argument must have degree at most 2", pos)
    quad, lin, const = c.get(2, 0), c.get(1, 0), c.get(0, 0)
    out = ex.Exp(ex.Affine(_real_if(lin), _real_if(const))) if lin != 0 else ex.Const(_real_if(cmath.exp(const)))
    if quad == 0:
        return out
    if quad.imag != 0 or quad.real >= 0:
        raise ParseError("quadratic exp argument must have a negative real x^2 coefficient", pos)
    return ex.mul(ex.Gaussian(-1 / (2 * quad.real)), out)


def parse_expression(src: str) -> ex.Expr:
    return _Parser(src).parse()
