"""Scalar contexts: a tiny adapter so matrix and tau-polynomial code can run
uniformly over k, an extension K, or a completion.

A context supplies zero/one/constants and Frobenius twisting; the ring
operations themselves are the operators each scalar class already has.
"""

from .errors import CarlitzError
from .ext import ExtElem
from .poly import Poly
from .ratfunc import RatFunc
from .vadic import VAdicNumber, embed_at_v, embed_k_v


class KScalars:
    """Scalars in k represented as RatFunc."""

    def __init__(self, fq):
        self.fq = fq

    def zero(self):
        return RatFunc.zero(self.fq)

    def one(self):
        return RatFunc.one(self.fq)

    def from_const(self, c):
        return RatFunc.const(self.fq, c)

    def theta(self):
        return RatFunc.gen(self.fq)

    def coerce(self, x):
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, Poly):
            return RatFunc.from_poly(x)
        if isinstance(x, int):
            return self.from_const(x)
        raise CarlitzError(f"cannot coerce {type(x).__name__} into k")

    @staticmethod
    def twist(a, s):
        return a.twist(s)

    @staticmethod
    def is_zero(a):
        return a.is_zero()


class ExtScalars:
    """Scalars in a fixed extension field K."""

    def __init__(self, field):
        self.field = field
        self.fq = field.fq

    def zero(self):
        return self.field.zero()

    def one(self):
        return self.field.one()

    def from_const(self, c):
        return self.field.from_k(RatFunc.const(self.fq, c))

    def theta(self):
        return self.field.from_k(RatFunc.gen(self.fq))

    def coerce(self, x):
        if isinstance(x, ExtElem):
            if x.field != self.field:
                raise CarlitzError("element of a different extension field")
            return x
        if isinstance(x, (RatFunc, Poly)):
            return self.field.from_k(
                x if isinstance(x, RatFunc) else RatFunc.from_poly(x)
            )
        if isinstance(x, int):
            return self.from_const(x)
        raise CarlitzError(f"cannot coerce {type(x).__name__} into K")

    @staticmethod
    def twist(a, s):
        return a.twist(s)

    @staticmethod
    def is_zero(a):
        return a.is_zero()


class VAdicScalars:
    """Scalars in the completion at v, at a fixed working precision.

    `prec` is the relative precision used for embedded constants and the
    cap applied when twisting (the q^s-power would otherwise let moduli
    grow without bound).
    """

    def __init__(self, v, prec, embedding=None):
        self.v = v
        self.fq = v.fq
        self.prec = prec
        self.embedding = embedding

    def zero(self):
        return VAdicNumber.exact_zero(self.v)

    def one(self):
        return VAdicNumber.one(self.v, self.prec)

    def from_const(self, c):
        return embed_k_v(RatFunc.const(self.fq, c), self.v, self.prec)

    def theta(self):
        return embed_k_v(RatFunc.gen(self.fq), self.v, self.prec)

    def coerce(self, x):
        if isinstance(x, VAdicNumber):
            if x.v != self.v:
                raise CarlitzError("mixed v-adic places")
            return x
        if isinstance(x, int):
            return self.from_const(x)
        return embed_at_v(x, self.v, self.prec, embedding=self.embedding)

    def twist(self, a, s):
        return a.powq(s, prec_cap=self.prec)

    @staticmethod
    def is_zero(a):
        return a.is_zero_to_precision()
