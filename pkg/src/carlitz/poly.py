"""Polynomials over F_q in one variable (the ring A = F_q[theta]).

Coefficients are little-endian lists of packed F_q ints with no trailing
zeros; [] is the zero polynomial.  Values are immutable after construction.
Operators +, -, *, //, %, divmod and ** are overloaded; gcd, xgcd, modular
inverse, evaluation, Frobenius twisting and (de)serialization round out the
interface.

For prime fields the heavy routines (mul, divmod) run on the selected
kernel backend; extension fields take the generic path.
"""

from . import _kernels
from .errors import CarlitzError


class Poly:
    __slots__ = ("fq", "coeffs")

    def __init__(self, fq, coeffs=(), trusted=False):
        self.fq = fq
        if trusted:
            self.coeffs = coeffs
        else:
            c = [x % fq.q if isinstance(x, int) else x for x in coeffs]
            if fq.e == 1:
                c = [x % fq.p for x in c]
            while c and c[-1] == 0:
                c.pop()
            self.coeffs = tuple(c)

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, fq):
        return cls(fq, (), trusted=True)

    @classmethod
    def one(cls, fq):
        return cls(fq, (1,), trusted=True)

    @classmethod
    def const(cls, fq, c):
        c = c % fq.p if fq.e == 1 else c % fq.q
        return cls(fq, (c,) if c else (), trusted=True)

    @classmethod
    def gen(cls, fq):
        """The variable itself (theta, or t in F_q[t] contexts)."""
        return cls(fq, (0, 1), trusted=True)

    @classmethod
    def monomial(cls, fq, n, c=1):
        c = c % fq.q
        if c == 0:
            return cls.zero(fq)
        return cls(fq, (0,) * n + (c,), trusted=True)

    # -- basic queries ----------------------------------------------------

    def is_zero(self):
        return not self.coeffs

    def is_one(self):
        return self.coeffs == (1,)

    @property
    def degree(self):
        """Degree, with deg 0 = -1 by convention."""
        return len(self.coeffs) - 1

    def leading(self):
        return self.coeffs[-1] if self.coeffs else 0

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.fq == other.fq
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.fq.q, self.coeffs))

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    # -- ring operations -------------------------------------------------

    def _same(self, other):
        if isinstance(other, int):
            return Poly.const(self.fq, other)
        if not isinstance(other, Poly) or other.fq != self.fq:
            raise CarlitzError("mixed polynomial coefficient fields")
        return other

    def __add__(self, other):
        other = self._same(other)
        fq = self.fq
        if fq.e == 1:
            c = _kernels.add(self.coeffs, other.coeffs, fq.p)
            return Poly(fq, tuple(c), trusted=True)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        c = list(a)
        for i, x in enumerate(b):
            c[i] = fq.add(c[i], x)
        while c and c[-1] == 0:
            c.pop()
        return Poly(fq, tuple(c), trusted=True)

    def __neg__(self):
        fq = self.fq
        if fq.e == 1:
            return Poly(fq, tuple(_kernels.neg(self.coeffs, fq.p)), trusted=True)
        return Poly(fq, tuple(fq.neg(x) for x in self.coeffs), trusted=True)

    def __sub__(self, other):
        other = self._same(other)
        fq = self.fq
        if fq.e == 1:
            c = _kernels.sub(self.coeffs, other.coeffs, fq.p)
            return Poly(fq, tuple(c), trusted=True)
        return self + (-other)

    def __radd__(self, other):
        return self + other

    def __rsub__(self, other):
        return (-self) + other

    def __rmul__(self, other):
        return self * other

    def __mul__(self, other):
        other = self._same(other)
        fq = self.fq
        if fq.e == 1:
            c = _kernels.mul(self.coeffs, other.coeffs, fq.p)
            return Poly(fq, tuple(c), trusted=True)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(fq)
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] = fq.add(out[i + j], fq.mul(ai, bj))
        while out and out[-1] == 0:
            out.pop()
        return Poly(fq, tuple(out), trusted=True)

    def scale(self, c):
        """Multiply by the F_q scalar c."""
        fq = self.fq
        c = c % fq.q
        if c == 0:
            return Poly.zero(fq)
        if c == 1:
            return self
        if fq.e == 1:
            p = fq.p
            return Poly(fq, tuple((x * c) % p for x in self.coeffs), trusted=True)
        return Poly(fq, tuple(fq.mul(x, c) for x in self.coeffs), trusted=True)

    def shift(self, n):
        """Multiply by theta^n (n >= 0)."""
        if not self.coeffs:
            return self
        return Poly(self.fq, (0,) * n + self.coeffs, trusted=True)

    def __divmod__(self, other):
        other = self._same(other)
        fq = self.fq
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if fq.e == 1:
            q, r = _kernels.divmod_(self.coeffs, other.coeffs, fq.p)
            return Poly(fq, tuple(q), trusted=True), Poly(fq, tuple(r), trusted=True)
        a = list(self.coeffs)
        b = other.coeffs
        db = len(b) - 1
        if len(a) <= db:
            return Poly.zero(fq), self
        inv_lead = fq.inv(b[-1])
        q = [0] * (len(a) - db)
        for i in range(len(a) - 1, db - 1, -1):
            c = a[i]
            if c:
                c = fq.mul(c, inv_lead)
                q[i - db] = c
                for j in range(db + 1):
                    a[i - db + j] = fq.sub(a[i - db + j], fq.mul(c, b[j]))
        while a and a[-1] == 0:
            a.pop()
        while q and q[-1] == 0:
            q.pop()
        return Poly(fq, tuple(q), trusted=True), Poly(fq, tuple(a), trusted=True)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divexact(self, other):
        """Exact quotient; raises if the division leaves a remainder."""
        q, r = divmod(self, other)
        if not r.is_zero():
            raise CarlitzError("inexact polynomial division")
        return q

    def divides(self, other):
        """Whether self divides other."""
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    def __pow__(self, n):
        if n < 0:
            raise CarlitzError("negative polynomial power")
        r = Poly.one(self.fq)
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def powmod(self, n, m):
        """self**n mod m (binary powering)."""
        if n < 0:
            raise CarlitzError("negative exponent in powmod")
        r = Poly.one(self.fq)
        b = self % m
        while n:
            if n & 1:
                r = (r * b) % m
            b = (b * b) % m
            n >>= 1
        return r

    def monic(self):
        if self.is_zero() or self.is_monic():
            return self
        return self.scale(self.fq.inv(self.leading()))

    def gcd(self, other):
        """Monic greatest common divisor."""
        a, b = self, self._same(other)
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def xgcd(self, other):
        """(g, s, t) with g monic, s*self + t*other = g."""
        fq = self.fq
        a, b = self, self._same(other)
        s0, s1 = Poly.one(fq), Poly.zero(fq)
        t0, t1 = Poly.zero(fq), Poly.one(fq)
        while not b.is_zero():
            q, r = divmod(a, b)
            a, b = b, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if a.is_zero():
            return a, s0, t0
        c = fq.inv(a.leading())
        return a.scale(c), s0.scale(c), t0.scale(c)

    def modinv(self, m):
        """Inverse of self modulo m; requires gcd(self, m) = 1."""
        g, s, _ = self.xgcd(m)
        if not g.is_one():
            raise CarlitzError("element not invertible modulo m")
        return s % m

    # -- evaluation, twisting ---------------------------------------------

    def __call__(self, x):
        """Evaluate by Horner; x may be an int (F_q value) or any ring
        element supporting * and + with int coefficients promoted by the
        caller's ring."""
        if isinstance(x, int):
            fq = self.fq
            acc = 0
            for c in reversed(self.coeffs):
                acc = fq.add(fq.mul(acc, x), c)
            return acc
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        if acc is None:
            return 0
        return acc

    def twist(self, s):
        """Frobenius twist: coefficientwise q^s power, so sum c_i theta^i
        becomes sum c_i theta^(i q^s).  Requires s >= 0."""
        if s < 0:
            raise CarlitzError("negative twist of a polynomial")
        if s == 0 or not self.coeffs:
            return self
        step = self.fq.q**s
        out = [0] * (self.degree * step + 1)
        for i, c in enumerate(self.coeffs):
            if c:
                out[i * step] = c  # F_q elements are fixed by x -> x^q
        return Poly(self.fq, tuple(out), trusted=True)

    def derivative(self):
        fq = self.fq
        out = []
        for i in range(1, len(self.coeffs)):
            c = self.coeffs[i]
            k = i % fq.p
            out.append(fq.mul(c, k) if fq.e > 1 else (c * k) % fq.p)
        while out and out[-1] == 0:
            out.pop()
        return Poly(fq, tuple(out), trusted=True)

    def ord_at(self, v):
        """Multiplicity of the monic polynomial v in self (0 for v coprime;
        raises on self = 0)."""
        if self.is_zero():
            raise CarlitzError("valuation of the zero polynomial")
        n = 0
        cur = self
        while True:
            q, r = divmod(cur, v)
            if not r.is_zero():
                return n
            cur = q
            n += 1

    # -- display and JSON --------------------------------------------------

    def to_string(self, var="theta"):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                head = "" if c == 1 else f"{c}*"
                exp = var if i == 1 else f"{var}^{i}"
                parts.append(f"{head}{exp}")
        return "+".join(parts)

    def __repr__(self):
        return self.to_string()

    def to_json(self):
        return [self.fq.elem_to_json(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, fq, data):
        return cls(fq, tuple(fq.elem_from_json(c) for c in data))
