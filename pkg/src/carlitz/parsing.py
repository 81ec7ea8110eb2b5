"""Shell-safe element syntax for CLI flags.

Grammar (ASCII only):

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := atom ('^' uint)?
    atom   := uint | 'theta' | 'x' | 't' | '(' expr ')' | '-' factor

Variable meanings depend on the target: 'theta' is the base variable,
'x' the extension generator (needs --ext-minpoly), 't' the t-module
variable for torsion polynomials.  Tuples are semicolon-separated.
"""

import re

from .errors import ElementParseError
from .ext import ExtField
from .poly import Poly
from .ratfunc import RatFunc

_TOKEN = re.compile(r"\s*(theta|x|t|\d+|[-+*/^()])")


def _tokenize(text):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ElementParseError(f"bad element syntax near {text[pos:]!r}")
        out.append(m.group(1))
        pos = m.end()
    out.append(None)  # end marker
    return out


class _Parser:
    def __init__(self, tokens, env):
        self.toks = tokens
        self.i = 0
        self.env = env

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, t):
        got = self.next()
        if got != t:
            raise ElementParseError(f"expected {t!r}, got {got!r}")

    def parse(self):
        v = self.expr()
        if self.peek() is not None:
            raise ElementParseError(f"trailing input at {self.peek()!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek() in ("+", "-"):
            op = self.next()
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.factor()
        while self.peek() in ("*", "/"):
            op = self.next()
            w = self.factor()
            if op == "*":
                v = v * w
            else:
                v = self.env.div(v, w)
        return v

    def factor(self):
        if self.peek() == "-":
            self.next()
            return -self.factor()
        v = self.atom()
        if self.peek() == "^":
            self.next()
            n = self.next()
            if not (isinstance(n, str) and n.isdigit()):
                raise ElementParseError("exponent must be a nonnegative integer")
            v = v**int(n)
        return v

    def atom(self):
        t = self.next()
        if t == "(":
            v = self.expr()
            self.expect(")")
            return v
        if isinstance(t, str) and t.isdigit():
            return self.env.const(int(t))
        if t in ("theta", "x", "t"):
            return self.env.var(t)
        raise ElementParseError(f"unexpected token {t!r}")


class _RatFuncEnv:
    """Evaluate in k (or K when an extension field is supplied)."""

    def __init__(self, fq, field=None):
        self.fq = fq
        self.field = field

    def const(self, n):
        c = RatFunc.const(self.fq, n % self.fq.p if self.fq.e == 1 else n)
        return self.field.from_k(c) if self.field else c

    def var(self, name):
        if name == "theta":
            g = RatFunc.gen(self.fq)
            return self.field.from_k(g) if self.field else g
        if name == "x":
            if self.field is None:
                raise ElementParseError(
                    "'x' needs an extension field (--ext-minpoly)"
                )
            return self.field.gen()
        raise ElementParseError(f"variable {name!r} not allowed here")

    @staticmethod
    def div(a, b):
        return a / b


class _PolyEnv:
    """Evaluate polynomials in one variable over F_q (no division)."""

    def __init__(self, fq, varname):
        self.fq = fq
        self.varname = varname

    def const(self, n):
        return Poly.const(self.fq, n % self.fq.p if self.fq.e == 1 else n)

    def var(self, name):
        if name != self.varname:
            raise ElementParseError(
                f"only the variable {self.varname!r} is allowed here"
            )
        return Poly.gen(self.fq)

    @staticmethod
    def div(a, b):
        raise ElementParseError("division not allowed in polynomial context")


def parse_element(text, fq, field=None):
    """Parse an element of k, or of K when field is given."""
    return _Parser(_tokenize(text), _RatFuncEnv(fq, field)).parse()


def parse_poly(text, fq, varname="theta"):
    """Parse a polynomial in the named variable over F_q."""
    return _Parser(_tokenize(text), _PolyEnv(fq, varname)).parse()


def parse_tuple(text, fq, field=None):
    """Parse a semicolon-separated tuple of elements."""
    parts = [p for p in text.split(";") if p.strip()]
    if not parts:
        raise ElementParseError("empty tuple")
    return tuple(parse_element(p, fq, field) for p in parts)


def parse_ext_minpoly(text, fq):
    """Parse a monic minimal polynomial in x over k into an ExtField."""
    # evaluate in k[x] via a tiny shim: substitute a formal marker for x by
    # parsing coefficientwise is overkill; parse in K would be circular.
    # Instead parse as nested: treat the input as a polynomial in x with
    # k-coefficients by splitting on x-powers is fragile, so parse
    # symbolically over k(x) using a rational-function tower:
    tokens = _tokenize(text)
    env = _KxEnv(fq)
    result = _Parser(tokens, env).parse()
    coeffs = _trim(result.coeffs)
    if not coeffs or not coeffs[-1].is_one():
        raise ElementParseError("minimal polynomial must be monic in x")
    return ExtField(fq, coeffs)


def _trim(c):
    c = list(c)
    while c and c[-1].is_zero():
        c.pop()
    return c


class _KxList:
    """Polynomials in x with RatFunc coefficients, little-endian."""

    def __init__(self, fq, coeffs):
        self.fq = fq
        self.coeffs = _trim(coeffs)

    def _pad(self, n):
        return self.coeffs + [RatFunc.zero(self.fq)] * (n - len(self.coeffs))

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return _KxList(
            self.fq, [a + b for a, b in zip(self._pad(n), other._pad(n))]
        )

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return _KxList(
            self.fq, [a - b for a, b in zip(self._pad(n), other._pad(n))]
        )

    def __neg__(self):
        return _KxList(self.fq, [-a for a in self.coeffs])

    def __mul__(self, other):
        if not self.coeffs or not other.coeffs:
            return _KxList(self.fq, [])
        out = [RatFunc.zero(self.fq)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return _KxList(self.fq, out)

    def __pow__(self, n):
        r = _KxList(self.fq, [RatFunc.one(self.fq)])
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def is_zero(self):
        return not self.coeffs


class _KxEnv:
    def __init__(self, fq):
        self.fq = fq

    def const(self, n):
        return _KxList(self.fq, [RatFunc.const(self.fq, n)])

    def var(self, name):
        if name == "theta":
            return _KxList(self.fq, [RatFunc.gen(self.fq)])
        if name == "x":
            return _KxList(self.fq, [RatFunc.zero(self.fq), RatFunc.one(self.fq)])
        raise ElementParseError("only theta and x are allowed in a minimal polynomial")

    @staticmethod
    def div(a, b):
        if len(b.coeffs) > 1:
            raise ElementParseError("cannot divide by x-terms in a minimal polynomial")
        if not b.coeffs:
            raise ElementParseError("division by zero")
        inv = b.coeffs[0].inverse()
        return _KxList(a.fq, [c * inv for c in a.coeffs])