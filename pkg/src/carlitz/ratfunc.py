"""The rational function field k = F_q(theta).

Values are stored reduced: gcd(num, den) = 1 and den monic, so equality is
structural.  Ints and Poly values coerce on the fly; all operations return
new objects.
"""

from .errors import CarlitzError
from .poly import Poly


class RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None, reduce=True):
        if den is None:
            den = Poly.one(num.fq)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if reduce:
            g = num.gcd(den)
            if not g.is_one():
                num = num.divexact(g)
                den = den.divexact(g)
            if not den.is_monic():
                c = num.fq.inv(den.leading())
                num, den = num.scale(c), den.scale(c)
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p):
        return cls(p, Poly.one(p.fq), reduce=False)

    @classmethod
    def zero(cls, fq):
        return cls(Poly.zero(fq), Poly.one(fq), reduce=False)

    @classmethod
    def one(cls, fq):
        return cls(Poly.one(fq), Poly.one(fq), reduce=False)

    @classmethod
    def const(cls, fq, c):
        return cls(Poly.const(fq, c), Poly.one(fq), reduce=False)

    @classmethod
    def gen(cls, fq):
        return cls(Poly.gen(fq), Poly.one(fq), reduce=False)

    @property
    def fq(self):
        return self.num.fq

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num.is_one() and self.den.is_one()

    def is_poly(self):
        return self.den.is_one()

    @property
    def height(self):
        """max(deg num, deg den); height of 0 is -1."""
        return max(self.num.degree, self.den.degree)

    @property
    def inf_degree(self):
        """deg num - deg den; the infinite-place degree (0 has -inf, returned
        as None)."""
        if self.num.is_zero():
            return None
        return self.num.degree - self.den.degree

    def _same(self, other):
        if isinstance(other, int):
            return RatFunc.const(self.fq, other)
        if isinstance(other, Poly):
            return RatFunc.from_poly(other)
        if not isinstance(other, RatFunc) or other.fq != self.fq:
            raise CarlitzError("mixed coefficient fields")
        return other

    def __add__(self, other):
        other = self._same(other)
        return RatFunc(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __radd__(self, other):
        return self + other

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self + (-self._same(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._same(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    def __rmul__(self, other):
        return self * other

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        return self * self._same(other).inverse()

    def __rtruediv__(self, other):
        return self._same(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        r = RatFunc.one(self.fq)
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def __eq__(self, other):
        if isinstance(other, (int, Poly)):
            other = self._same(other)
        return (
            isinstance(other, RatFunc)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def twist(self, s):
        """Frobenius twist (q^s power) applied to numerator and denominator."""
        if s < 0:
            raise CarlitzError("negative twist of a rational function")
        return RatFunc(self.num.twist(s), self.den.twist(s), reduce=False)

    def ord_at(self, v):
        """v-adic valuation for monic irreducible v."""
        if self.is_zero():
            raise CarlitzError("valuation of zero")
        return self.num.ord_at(v) - self.den.ord_at(v)

    def to_string(self, var="theta"):
        if self.den.is_one():
            return self.num.to_string(var)
        return f"({self.num.to_string(var)})/({self.den.to_string(var)})"

    def __repr__(self):
        return self.to_string()

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, fq, data):
        return cls(Poly.from_json(fq, data["num"]), Poly.from_json(fq, data["den"]))
