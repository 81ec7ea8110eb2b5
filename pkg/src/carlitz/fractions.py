"""Gcd-free exact fractions for the coefficient engine.

Everything the log/exp coefficient recurrences produce has a denominator
that is a product of the polynomials

    f_j := theta^(q^j) - theta,   j >= 1,

because L_i = (theta - theta^q) ... (theta - theta^(q^i)) = (-1)^i f_1...f_i
and the recurrences only ever divide by powers of theta^(q^(i+1)) - theta.
The family is closed under Frobenius twisting (f_j^(q^s) is the twist of
f_j) and every monic irreducible w divides f_(deg w) exactly once, so any
element of k (or of an extension with an integral model) can be written
with such a denominator.

`FFrac` is a single fraction num / prod f_j^(e_j); the numerator is either
a Poly (elements of k) or an `XPoly` (elements of K = k[x]/(m), stored in
the integral basis y = c*x).  Scaling by f-powers is done digit-by-digit
in base p so the 2-term factors (theta^(q^j p^k) - theta^(p^k)) keep every
multiplication and exact division linear in the dense operand.

No gcds are ever computed here; reduction divides out f-factors present in
the numerator and nothing else, and equality tests cross-scale instead of
normalizing.
"""

import functools

from .errors import CarlitzError, PrecisionError
from .poly import Poly
from .ratfunc import RatFunc
from .vadic import VAdicNumber, _vpow, embed_k_v

_EXPAND_CAP = 1 << 22


@functools.lru_cache(maxsize=None)
def f_poly(fq, j):
    """f_j = theta^(q^j) - theta."""
    return Poly.monomial(fq, fq.q**j) - Poly.gen(fq)


def l_poly(fq, i):
    """L_i = (theta - theta^q) ... (theta - theta^(q^i)) as an FFrac-free
    Poly; L_0 = 1."""
    return _l_cache(fq, i)


@functools.lru_cache(maxsize=None)
def _l_cache(fq, i):
    if i == 0:
        return Poly.one(fq)
    return _l_cache(fq, i - 1) * (Poly.gen(fq) - Poly.monomial(fq, fq.q**i))


def poly_mul_f(a, j, e):
    """a * f_j^e via base-p digits of e; every factor has two terms."""
    if a.is_zero() or e == 0:
        return a
    fq = a.fq
    p = fq.p
    k = 0
    while e:
        e, digit = divmod(e, p)
        if digit:
            # (theta^(q^j) - theta)^(p^k) = theta^(q^j p^k) - theta^(p^k)
            factor = Poly.monomial(fq, fq.q**j * p**k) - Poly.monomial(fq, p**k)
            for _ in range(digit):
                a = a * factor
        k += 1
    return a


def poly_div_f(a, j, e):
    """Exact division a / f_j^e, or None when not divisible."""
    if a.is_zero() or e == 0:
        return a
    fq = a.fq
    p = fq.p
    k = 0
    while e:
        e, digit = divmod(e, p)
        if digit:
            factor = Poly.monomial(fq, fq.q**j * p**k) - Poly.monomial(fq, p**k)
            for _ in range(digit):
                q, r = divmod(a, factor)
                if not r.is_zero():
                    return None
                a = q
        k += 1
    return a


# -- numerators in an extension (integral basis) ------------------------------


class XRing:
    """A[y]/(M) for the integral model M of an extension field."""

    def __init__(self, field):
        self.field = field
        self.fq = field.fq
        self.n = field.degree
        self.M = field.minpoly_integral  # tuple of Poly, monic
        fq = self.fq
        n = self.n
        rows = [[-self.M[i] for i in range(n)]]
        for _ in range(n - 2):
            top = rows[-1][-1]
            nxt = [Poly.zero(fq)] + rows[-1][:-1]
            for i in range(n):
                nxt[i] = nxt[i] + top * rows[0][i]
            rows.append(nxt)
        self._red_rows = rows
        self._twist_cache = {}

    def zero(self):
        return XPoly(self, tuple(Poly.zero(self.fq) for _ in range(self.n)))

    def one(self):
        return self.from_poly(Poly.one(self.fq))

    def from_poly(self, p):
        coords = (p,) + tuple(Poly.zero(self.fq) for _ in range(self.n - 1))
        return XPoly(self, coords)

    def reduce_long(self, long_coords):
        n = self.n
        out = list(long_coords[:n])
        out += [Poly.zero(self.fq)] * (n - len(out))
        for j in range(n, len(long_coords)):
            c = long_coords[j]
            if not c.is_zero():
                row = self._red_rows[j - n]
                for i in range(n):
                    out[i] = out[i] + c * row[i]
        return XPoly(self, tuple(out))

    def y_power_q(self, s):
        """y^(q^s) mod M (cached), coordinates in A."""
        if s not in self._twist_cache:
            if s == 0:
                coords = [Poly.zero(self.fq)] * self.n
                coords[1 % self.n] = Poly.one(self.fq)
                self._twist_cache[0] = XPoly(self, tuple(coords))
            else:
                prev = self.y_power_q(s - 1)
                self._twist_cache[s] = prev.pow_int(self.fq.q)
        return self._twist_cache[s]

    def __eq__(self, other):
        return isinstance(other, XRing) and self.field == other.field

    def __hash__(self):
        return hash(self.field)


class XPoly:
    """Element of A[y]/(M): coordinate vector of Polys over the y-basis."""

    __slots__ = ("ring", "coords")

    def __init__(self, ring, coords):
        self.ring = ring
        self.coords = coords

    @property
    def fq(self):
        return self.ring.fq

    def is_zero(self):
        return all(c.is_zero() for c in self.coords)

    def __add__(self, other):
        return XPoly(
            self.ring, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    def __neg__(self):
        return XPoly(self.ring, tuple(-a for a in self.coords))

    def __sub__(self, other):
        return XPoly(
            self.ring, tuple(a - b for a, b in zip(self.coords, other.coords))
        )

    def __mul__(self, other):
        if isinstance(other, Poly):
            return XPoly(self.ring, tuple(c * other for c in self.coords))
        n = self.ring.n
        long = [Poly.zero(self.fq) for _ in range(2 * n - 1)]
        for i, a in enumerate(self.coords):
            if not a.is_zero():
                for j, b in enumerate(other.coords):
                    if not b.is_zero():
                        long[i + j] = long[i + j] + a * b
        return self.ring.reduce_long(long)

    def __rmul__(self, other):
        if isinstance(other, Poly):
            return self * other
        return NotImplemented

    def pow_int(self, m):
        r = self.ring.one()
        b = self
        while m:
            if m & 1:
                r = r * b
            b = b * b
            m >>= 1
        return r

    def twist(self, s):
        if s == 0:
            return self
        ys = self.ring.y_power_q(s)
        acc = self.ring.zero()
        for c in reversed(self.coords):
            acc = acc * ys + self.ring.from_poly(c.twist(s))
        return acc

    def mul_f(self, j, e):
        return XPoly(self.ring, tuple(poly_mul_f(c, j, e) for c in self.coords))

    def div_f(self, j, e):
        out = []
        for c in self.coords:
            q = poly_div_f(c, j, e)
            if q is None:
                return None
            out.append(q)
        return XPoly(self.ring, tuple(out))

    def to_ext_elem(self):
        """Back to the user's x-basis: y = c*x, so coord_i picks up c^i."""
        field = self.ring.field
        c = field.c_scale
        coords = []
        power = Poly.one(self.fq)
        for a in self.coords:
            coords.append(RatFunc.from_poly(a * power))
            power = power * c
        return field.element(coords)

    def __eq__(self, other):
        return (
            isinstance(other, XPoly)
            and self.ring == other.ring
            and self.coords == other.coords
        )

    def __repr__(self):
        return f"XPoly{self.coords!r}"


# -- generic numerator helpers -------------------------------------------------


def nm_is_zero(a):
    return a.is_zero()


def nm_mul_f(a, j, e):
    if isinstance(a, Poly):
        return poly_mul_f(a, j, e)
    return a.mul_f(j, e)


def nm_div_f(a, j, e):
    if isinstance(a, Poly):
        return poly_div_f(a, j, e)
    return a.div_f(j, e)


def nm_twist(a, s):
    return a.twist(s)


def scale_to_den(num, have, want):
    """Multiply num by prod f_j^(want_j - have_j)."""
    for j, e in want.items():
        d = e - have.get(j, 0)
        if d < 0:
            raise CarlitzError("scale_to_den: target is smaller")  # pragma: no cover
        if d:
            num = nm_mul_f(num, j, d)
    return num


def den_mul(d1, d2):
    out = dict(d1)
    for j, e in d2.items():
        out[j] = out.get(j, 0) + e
    return out


def den_pow(d, m):
    return {j: e * m for j, e in d.items()}


def den_join(d1, d2):
    out = dict(d1)
    for j, e in d2.items():
        out[j] = max(out.get(j, 0), e)
    return out


def den_twist(d, step):
    return {j: e * step for j, e in d.items()}


class FFrac:
    """num / prod_j f_j^(den[j]), num a Poly or XPoly."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, reduce=False):
        self.num = num
        self.den = dict(den) if den else {}
        if reduce:
            self._reduce()

    def _reduce(self):
        if nm_is_zero(self.num):
            self.den = {}
            return
        for j in sorted(self.den):
            e = self.den[j]
            while e > 0:
                q = nm_div_f(self.num, j, e)
                if q is not None:
                    self.num = q
                    self.den[j] -= e
                    e = min(e, self.den[j])
                else:
                    e //= 2
            if self.den[j] == 0:
                del self.den[j]

    @classmethod
    def from_exact(cls, x, ring=None):
        """Build from a Poly, RatFunc or ExtElem.

        Denominators are rewritten over the f-family using the cofactor of
        each irreducible divisor w: 1/w = (f_deg(w)/w) / f_deg(w).
        """
        from .ext import ExtElem
        from .factor import factor

        if isinstance(x, ExtElem):
            if ring is None:
                ring = XRing(x.field)
            out = cls(ring.zero(), {})
            power = Poly.one(ring.fq)  # c^i
            for i, a in enumerate(x.coords):
                if not a.is_zero():
                    coord = cls.from_exact(a / RatFunc.from_poly(power))
                    num = XPoly(
                        ring,
                        tuple(
                            coord.num if t == i else Poly.zero(ring.fq)
                            for t in range(ring.n)
                        ),
                    )
                    out = out + cls(num, coord.den)
                power = power * x.field.c_scale
            return out
        if isinstance(x, Poly):
            return cls(ring.from_poly(x) if ring is not None else x)
        if isinstance(x, RatFunc):
            num = x.num
            den = {}
            if not x.den.is_one():
                _, fac = factor(x.den)
                for w, e in fac.items():
                    dw = w.degree
                    cof = f_poly(x.fq, dw).divexact(w)
                    den[dw] = den.get(dw, 0) + e
                    if not cof.is_one():
                        num = num * cof**e
            if ring is not None:
                return cls(ring.from_poly(num), den, reduce=True)
            return cls(num, den, reduce=True)
        raise CarlitzError(f"cannot build FFrac from {type(x).__name__}")

    @property
    def fq(self):
        return self.num.fq

    def is_zero(self):
        return nm_is_zero(self.num)

    def _align(self, other):
        den = den_join(self.den, other.den)
        a = scale_to_den(self.num, self.den, den)
        b = scale_to_den(other.num, other.den, den)
        return a, b, den

    def __add__(self, other):
        a, b, den = self._align(other)
        return FFrac(a + b, den, reduce=True)

    def __sub__(self, other):
        a, b, den = self._align(other)
        return FFrac(a - b, den, reduce=True)

    def __neg__(self):
        return FFrac(-self.num, self.den)

    def __mul__(self, other):
        if isinstance(other, (Poly, XPoly)):
            return FFrac(self.num * other, self.den)
        if isinstance(self.num, Poly) and isinstance(other.num, XPoly):
            num = other.num * self.num
        else:
            num = self.num * other.num
        return FFrac(num, den_mul(self.den, other.den), reduce=True)

    def div_f(self, j, e):
        den = dict(self.den)
        den[j] = den.get(j, 0) + e
        return FFrac(self.num, den, reduce=True)

    def twist(self, s):
        return FFrac(nm_twist(self.num, s), den_twist(self.den, self.fq.q**s))

    def scalar_poly(self):
        """The numerator if the fraction is a plain polynomial."""
        if self.den:
            return None
        return self.num

    def eq(self, other):
        a, b, _ = self._align(other)
        return (a - b).is_zero()

    def __eq__(self, other):
        if not isinstance(other, FFrac):
            return NotImplemented
        return self.eq(other)

    def ord_v(self, v):
        """Exact v-adic valuation (numerator ord minus denominator ord)."""
        if self.is_zero():
            raise CarlitzError("valuation of zero")
        d = v.degree
        den_ord = sum(e for j, e in self.den.items() if j % d == 0)
        if isinstance(self.num, Poly):
            return self.num.ord_at(v) - den_ord
        raise CarlitzError("ord_v of extension numerators needs an embedding")

    def embed_v(self, v, prec):
        """Embed into the v-adic completion at relative precision prec."""
        if self.is_zero():
            return VAdicNumber.exact_zero(v)
        if not isinstance(self.num, Poly):
            raise CarlitzError("use embed_v_ext for extension numerators")
        acc = embed_k_v(RatFunc.from_poly(self.num), v, prec)
        for j, e in self.den.items():
            acc = acc * _f_embed(v, j, prec) ** (-e)
        return acc

    def embed_v_ext(self, v, prec, embedding):
        """Embedding for XPoly numerators via a lifted root of the integral
        minimal polynomial."""
        ring = self.num.ring
        root = _integral_root(embedding, ring, prec)
        acc = VAdicNumber.exact_zero(v)
        for c in reversed(self.num.coords):
            acc = acc * root + embed_k_v(RatFunc.from_poly(c), v, prec)
        for j, e in self.den.items():
            acc = acc * _f_embed(v, j, prec) ** (-e)
        return acc

    def to_ratfunc(self):
        """Expand to a reduced RatFunc (k-case; guarded against blowup)."""
        if not isinstance(self.num, Poly):
            raise CarlitzError("extension fractions do not expand to RatFunc")
        den = Poly.one(self.fq)
        total = sum(e * self.fq.q**j for j, e in self.den.items())
        if total > _EXPAND_CAP:
            raise PrecisionError("denominator expansion exceeds the configured cap")
        for j, e in self.den.items():
            den = poly_mul_f(den, j, e)
        return RatFunc(self.num, den)

    def to_ext_elem(self):
        if not isinstance(self.num, XPoly):
            raise CarlitzError("not an extension fraction")
        elem = self.num.to_ext_elem()
        inv = FFrac(Poly.one(self.fq), self.den).to_ratfunc()
        return elem * inv

    def __repr__(self):
        if not self.den:
            return f"FFrac({self.num!r})"
        den = "*".join(f"f_{j}^{e}" for j, e in sorted(self.den.items()))
        return f"FFrac(({self.num!r})/({den}))"


@functools.lru_cache(maxsize=None)
def _f_embed(v, j, prec):
    """f_j as a VAdicNumber at relative precision prec."""
    fq = v.fq
    ord_ = 1 if j % v.degree == 0 else 0
    mod = _vpow(v, prec + ord_)
    fj = (Poly.gen(fq).powmod(fq.q**j, mod) - Poly.gen(fq)) % mod
    if ord_:
        fj = fj.divexact(v)
        fj = fj % _vpow(v, prec)
    return VAdicNumber(v, ord_, fj, prec, reduce=False)


def _integral_root(embedding, ring, prec):
    """The lifted root of the integral minimal polynomial: c * (root of m)."""
    r = embedding.root(prec + 4)
    c = embed_k_v(RatFunc.from_poly(ring.field.c_scale), embedding.v, prec + 4)
    return r * c


# -- shared-denominator matrices -------------------------------------------------


class NumContext:
    """Uniform constructors for Poly or XPoly numerators."""

    def __init__(self, fq, ring=None):
        self.fq = fq
        self.ring = ring

    def zero(self):
        return Poly.zero(self.fq) if self.ring is None else self.ring.zero()

    def one(self):
        return Poly.one(self.fq) if self.ring is None else self.ring.one()

    def from_poly(self, p):
        return p if self.ring is None else self.ring.from_poly(p)

    def promote(self, num):
        if self.ring is not None and isinstance(num, Poly):
            return self.ring.from_poly(num)
        return num


class FracMatrix:
    """A square matrix of numerators over one shared f-denominator.

    The log/exp coefficient recurrences stay inside this representation:
    matrix products add denominators, Frobenius twists raise the exponents
    by a factor q^s, and the nilpotent commutator sums only rescale
    numerators by sparse f-powers.  `reduce` divides out f-factors common
    to every entry.
    """

    __slots__ = ("nc", "rows", "den")

    def __init__(self, nc, rows, den=None):
        self.nc = nc
        self.rows = rows
        self.den = dict(den) if den else {}

    @classmethod
    def identity(cls, nc, d):
        rows = [
            [nc.one() if i == j else nc.zero() for j in range(d)] for i in range(d)
        ]
        return cls(nc, rows)

    @classmethod
    def zero(cls, nc, d):
        return cls(nc, [[nc.zero() for _ in range(d)] for _ in range(d)])

    @property
    def d(self):
        return len(self.rows)

    def entry(self, i, j):
        return FFrac(self.rows[i][j], self.den)

    def is_zero(self):
        return all(nm_is_zero(x) for row in self.rows for x in row)

    def neg(self):
        return FracMatrix(self.nc, [[-x for x in row] for row in self.rows], self.den)

    def twist(self, s):
        step = self.nc.fq.q**s
        rows = [[nm_twist(x, s) for x in row] for row in self.rows]
        return FracMatrix(self.nc, rows, den_twist(self.den, step))

    def mul(self, other):
        d = self.d
        nc = self.nc
        out = [[nc.zero() for _ in range(d)] for _ in range(d)]
        for i in range(d):
            rowa = self.rows[i]
            rowo = out[i]
            for k in range(d):
                a = rowa[k]
                if nm_is_zero(a):
                    continue
                rowb = other.rows[k]
                for j in range(d):
                    b = rowb[j]
                    if not nm_is_zero(b):
                        rowo[j] = rowo[j] + a * b
        return FracMatrix(nc, out, den_mul(self.den, other.den))

    def add(self, other):
        den = den_join(self.den, other.den)
        rows = []
        for ra, rb in zip(self.rows, other.rows):
            rows.append(
                [
                    scale_to_den(a, self.den, den) + scale_to_den(b, other.den, den)
                    for a, b in zip(ra, rb)
                ]
            )
        return FracMatrix(self.nc, rows, den)

    def sub(self, other):
        return self.add(other.neg())

    def scale_num(self, num):
        """Multiply every entry by a numerator-ring element."""
        return FracMatrix(
            self.nc, [[x * num for x in row] for row in self.rows], self.den
        )

    def reduce(self):
        """Divide out f-factors common to all entries; mutates nothing."""
        if self.is_zero():
            return FracMatrix(self.nc, self.rows, {})
        rows = self.rows
        den = dict(self.den)
        for j in sorted(den):
            e = den[j]
            while e > 0:
                quots = []
                ok = True
                for row in rows:
                    qr = []
                    for x in row:
                        q = nm_div_f(x, j, e)
                        if q is None:
                            ok = False
                            break
                        qr.append(q)
                    if not ok:
                        break
                    quots.append(qr)
                if ok:
                    rows = quots
                    den[j] -= e
                    e = min(e, den[j])
                else:
                    e //= 2
            if den[j] == 0:
                del den[j]
        return FracMatrix(self.nc, rows, den)
