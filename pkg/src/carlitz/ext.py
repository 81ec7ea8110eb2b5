"""Finite extensions K = k[x]/(m) of the rational function field.

`ExtField` owns the monic minimal polynomial m over k (degree <= 4),
verifies its irreducibility at construction (root search plus a
degree-bounded quadratic-factor search, both via divisor enumeration on an
integral model), and caches Frobenius-power reduction data.  `ExtElem`
values carry a shared reference to their field; mixing elements of
different fields is a hard error.

The integral model: with c the least common denominator of the
coefficients of m, the substitution y = c*x turns m into a monic
polynomial with A-coefficients.  The exact coefficient engine works in
that basis; conversions happen at the boundary.
"""

from .errors import CarlitzError
from .factor import divisors
from .poly import Poly
from .ratfunc import RatFunc

_MAX_EXT_DEGREE = 4


# -- small helpers for polynomials over k (lists of RatFunc, little-endian) --


def _kp_trim(c):
    while c and c[-1].is_zero():
        c.pop()
    return c


def _kp_mul(a, b, fq):
    if not a or not b:
        return []
    out = [RatFunc.zero(fq) for _ in range(len(a) + len(b) - 1)]
    for i, ai in enumerate(a):
        if not ai.is_zero():
            for j, bj in enumerate(b):
                if not bj.is_zero():
                    out[i + j] = out[i + j] + ai * bj
    return _kp_trim(out)


def _kp_divmod(a, b, fq):
    if not b:
        raise ZeroDivisionError("division by zero in k[x]")
    a = list(a)
    db = len(b) - 1
    inv_lead = b[-1].inverse()
    q = [RatFunc.zero(fq) for _ in range(max(len(a) - db, 0))]
    for i in range(len(a) - 1, db - 1, -1):
        if not a[i].is_zero():
            f = a[i] * inv_lead
            q[i - db] = f
            for j in range(db + 1):
                a[i - db + j] = a[i - db + j] - f * b[j]
    return _kp_trim(q), _kp_trim(a[:db])


def _kp_xgcd(a, b, fq):
    s0, s1 = [RatFunc.one(fq)], []
    t0, t1 = [], [RatFunc.one(fq)]
    a, b = list(a), list(b)
    while b:
        q, r = _kp_divmod(a, b, fq)
        a, b = b, r
        qs1 = _kp_mul(q, s1, fq)
        qt1 = _kp_mul(q, t1, fq)
        s0, s1 = s1, _kp_sub(s0, qs1, fq)
        t0, t1 = t1, _kp_sub(t0, qt1, fq)
    return a, s0, t0


def _kp_sub(a, b, fq):
    out = list(a) + [RatFunc.zero(fq)] * max(0, len(b) - len(a))
    for i, x in enumerate(b):
        out[i] = out[i] - x
    return _kp_trim(out)


class ExtField:
    def __init__(self, fq, minpoly):
        """minpoly: sequence of RatFunc, little-endian, monic, degree 2..4."""
        minpoly = tuple(minpoly)
        if not minpoly or not minpoly[-1].is_one():
            raise CarlitzError("minimal polynomial must be monic")
        self.fq = fq
        self.degree = len(minpoly) - 1
        if not 2 <= self.degree <= _MAX_EXT_DEGREE:
            raise CarlitzError(
                f"extension degree must be in [2, {_MAX_EXT_DEGREE}]"
            )
        self.minpoly = minpoly
        self._integralize()
        if not self._is_irreducible():
            raise CarlitzError("minimal polynomial is reducible over k")
        self._reduction_rows = self._build_reduction()
        self._xq_cache = [
            [RatFunc.zero(fq) if i != 1 else RatFunc.one(fq) for i in range(self.degree)]
        ]

    # -- construction ------------------------------------------------------

    def _integralize(self):
        fq = self.fq
        c = Poly.one(fq)
        for a in self.minpoly[:-1]:
            c = (c * a.den).divexact(c.gcd(a.den))  # lcm
        n = self.degree
        integral = []
        for i, a in enumerate(self.minpoly):
            # coefficient of y^i in c^n m(y/c) is a_i c^(n-i)
            scaled = a * RatFunc.from_poly(c**(n - i))
            if not scaled.is_poly():
                raise CarlitzError("integral model failed")  # pragma: no cover
            integral.append(scaled.num)
        self.c_scale = c
        self.minpoly_integral = tuple(integral)

    def _is_irreducible(self):
        fq = self.fq
        M = self.minpoly_integral
        n = self.degree
        m0 = M[0]
        if m0.is_zero():
            return False  # y divides the integral model
        units = [c for c in range(1, fq.q)]
        root_cands = []
        for d in divisors(m0):
            for u in units:
                root_cands.append(RatFunc.from_poly(d.scale(u)))
        Mk = [RatFunc.from_poly(c) for c in M]

        def val_at(f, r):
            acc = RatFunc.zero(fq)
            for c in reversed(f):
                acc = acc * r + c
            return acc

        for r in root_cands:
            if val_at(Mk, r).is_zero():
                return False
        if n < 4:
            return True
        # no linear factors; search for monic quadratic factors (Gauss: they
        # may be taken with A-coefficients, constant terms dividing M[0])
        m3, m2, m1 = Mk[3], Mk[2], Mk[1]
        m0k = Mk[0]
        for d in divisors(m0):
            for u in units:
                c = RatFunc.from_poly(d.scale(u))
                cp = m0k / c
                if c != cp:
                    b = (m1 - m3 * c) / (cp - c)
                    g = [c, b, RatFunc.one(fq)]
                    if not _kp_divmod(list(Mk), g, fq)[1]:
                        return False
                else:
                    # with c = c': b, b' are the roots of z^2 - m3 z + (m2-2c)
                    if m1 != c * m3:
                        continue
                    const = m2 - c - c
                    if not const.is_poly() or not m3.is_poly():
                        continue
                    if const.is_zero():
                        b_cands = [RatFunc.zero(fq), m3]
                    else:
                        b_cands = [
                            RatFunc.from_poly(db.scale(ub))
                            for db in divisors(const.num)
                            for ub in units
                        ]
                    for b in b_cands:
                        if (b * b - m3 * b + const).is_zero():
                            g = [c, b, RatFunc.one(fq)]
                            if not _kp_divmod(list(Mk), g, fq)[1]:
                                return False
        return True

    def _build_reduction(self):
        # x^j mod m for j in [degree, 2*degree - 2], as coordinate rows
        fq = self.fq
        n = self.degree
        rows = []
        # x^n = -(m_0 + m_1 x + ... + m_{n-1} x^{n-1})
        cur = [-(self.minpoly[i]) for i in range(n)]
        rows.append(list(cur))
        for _ in range(n - 2):
            # multiply by x: shift, then reduce the overflow coefficient
            top = cur[-1]
            cur = [RatFunc.zero(fq)] + cur[:-1]
            for i in range(n):
                cur[i] = cur[i] + top * rows[0][i]
            rows.append(list(cur))
        return rows

    # -- elements ------------------------------------------------------------

    def zero(self):
        return ExtElem(self, tuple(RatFunc.zero(self.fq) for _ in range(self.degree)))

    def one(self):
        return self.from_k(RatFunc.one(self.fq))

    def gen(self):
        fq = self.fq
        coords = [RatFunc.zero(fq) for _ in range(self.degree)]
        coords[1] = RatFunc.one(fq)
        return ExtElem(self, tuple(coords))

    def from_k(self, a):
        if isinstance(a, Poly):
            a = RatFunc.from_poly(a)
        coords = [a] + [RatFunc.zero(self.fq) for _ in range(self.degree - 1)]
        return ExtElem(self, tuple(coords))

    def element(self, coords):
        coords = tuple(
            c if isinstance(c, RatFunc) else RatFunc.from_poly(c) for c in coords
        )
        if len(coords) != self.degree:
            raise CarlitzError("coordinate vector has wrong length")
        return ExtElem(self, coords)

    def reduce(self, long_coords):
        """Reduce a coordinate list of length <= 2*degree - 1 modulo m."""
        fq = self.fq
        n = self.degree
        out = list(long_coords[:n]) + [
            RatFunc.zero(fq) for _ in range(n - min(n, len(long_coords)))
        ]
        for j in range(n, len(long_coords)):
            c = long_coords[j]
            if not c.is_zero():
                row = self._reduction_rows[j - n]
                for i in range(n):
                    out[i] = out[i] + c * row[i]
        return ExtElem(self, tuple(out))

    def x_power_q(self, s):
        """Coordinates of x^(q^s) mod m (cached)."""
        while len(self._xq_cache) <= s:
            prev = self._xq_cache[-1]
            # raise to the q-th power: poly powmod over k
            base = _kp_trim(list(prev))
            acc = [RatFunc.one(self.fq)]
            n = self.fq.q
            mk = list(self.minpoly)
            while n:
                if n & 1:
                    acc = _kp_divmod(_kp_mul(acc, base, self.fq), mk, self.fq)[1]
                base = _kp_divmod(_kp_mul(base, base, self.fq), mk, self.fq)[1]
                n >>= 1
            acc = list(acc) + [RatFunc.zero(self.fq)] * (self.degree - len(acc))
            self._xq_cache.append(acc)
        return self._xq_cache[s]

    def __eq__(self, other):
        return (
            isinstance(other, ExtField)
            and self.fq == other.fq
            and self.minpoly == other.minpoly
        )

    def __hash__(self):
        return hash((self.fq, self.minpoly))

    def __repr__(self):
        terms = "+".join(
            f"({c})*x^{i}" if i else f"({c})"
            for i, c in enumerate(self.minpoly)
            if not c.is_zero()
        )
        return f"ExtField({terms})"

    def minpoly_json(self):
        return [c.to_json() for c in self.minpoly]


class ExtElem:
    __slots__ = ("field", "coords")

    def __init__(self, field, coords):
        self.field = field
        self.coords = coords

    @property
    def fq(self):
        return self.field.fq

    def is_zero(self):
        return all(c.is_zero() for c in self.coords)

    def is_one(self):
        return self.coords[0].is_one() and all(
            c.is_zero() for c in self.coords[1:]
        )

    def in_k(self):
        """The k-value if this element lies in the base field, else None."""
        if all(c.is_zero() for c in self.coords[1:]):
            return self.coords[0]
        return None

    def _same(self, other):
        if isinstance(other, int):
            return self.field.from_k(RatFunc.const(self.fq, other))
        if isinstance(other, Poly):
            return self.field.from_k(RatFunc.from_poly(other))
        if isinstance(other, RatFunc):
            return self.field.from_k(other)
        if not isinstance(other, ExtElem) or other.field != self.field:
            raise CarlitzError("elements of different extension fields")
        return other

    def __add__(self, other):
        other = self._same(other)
        return ExtElem(
            self.field, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    def __radd__(self, other):
        return self + other

    def __neg__(self):
        return ExtElem(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        return self + (-self._same(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._same(other)
        fq = self.fq
        n = self.field.degree
        long = [RatFunc.zero(fq) for _ in range(2 * n - 1)]
        for i, a in enumerate(self.coords):
            if not a.is_zero():
                for j, b in enumerate(other.coords):
                    if not b.is_zero():
                        long[i + j] = long[i + j] + a * b
        return self.field.reduce(long)

    def __rmul__(self, other):
        return self * other

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero extension element")
        fq = self.fq
        a = _kp_trim(list(self.coords))
        g, s, _ = _kp_xgcd(a, list(self.field.minpoly), fq)
        if len(g) != 1:
            raise CarlitzError("minimal polynomial not irreducible")  # pragma: no cover
        inv_g = g[0].inverse()
        s = [c * inv_g for c in s]
        s += [RatFunc.zero(fq)] * (self.field.degree - len(s))
        return ExtElem(self.field, tuple(s[: self.field.degree]))

    def __truediv__(self, other):
        return self * self._same(other).inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        r = self.field.one()
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def twist(self, s):
        """Frobenius twist: the q^s-th power, computed via x^(q^s) mod m."""
        if s < 0:
            raise CarlitzError("negative twist of an extension element")
        if s == 0:
            return self
        xq = self.field.x_power_q(s)
        xq_elem = ExtElem(self.field, tuple(xq))
        acc = self.field.zero()
        for a in reversed(self.coords):
            acc = acc * xq_elem + self.field.from_k(a.twist(s))
        return acc

    def __eq__(self, other):
        if isinstance(other, (int, Poly, RatFunc)):
            other = self._same(other)
        return (
            isinstance(other, ExtElem)
            and self.field == other.field
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.field, self.coords))

    def to_string(self, var="x"):
        terms = []
        for i, c in enumerate(self.coords):
            if c.is_zero():
                continue
            if i == 0:
                terms.append(f"{c.to_string()}")
            else:
                e = var if i == 1 else f"{var}^{i}"
                terms.append(f"({c.to_string()})*{e}")
        return "+".join(terms) if terms else "0"

    def __repr__(self):
        return self.to_string()

    def to_json(self):
        return {
            "minpoly": self.field.minpoly_json(),
            "coords": [c.to_json() for c in self.coords],
        }

    @classmethod
    def from_json(cls, fq, data, field=None):
        if field is None:
            field = ExtField(
                fq, [RatFunc.from_json(fq, c) for c in data["minpoly"]]
            )
        return field.element([RatFunc.from_json(fq, c) for c in data["coords"]])
