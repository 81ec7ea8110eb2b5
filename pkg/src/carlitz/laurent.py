"""The completion at the infinite place: truncated Laurent series in 1/theta.

An `InfLaurent` x stores the known coefficient window
    x = c_val theta^val + ... + c_prec theta^prec + (error),  |error| < q^prec,
with coeffs[0] = c_val != 0 (or no known nonzero coefficients at all, the
"zero to precision" state).  prec = None means the value is exact.  All
operations compute the output window honestly from the input windows; a
result is never claimed more precise than the inputs warrant.

|x|_inf = q^val, so "degrees" here are just valuations in disguise.
"""

import functools

from . import _kernels
from .errors import CarlitzError, PrecisionError
from .poly import Poly
from .ratfunc import RatFunc

_SPREAD_CAP = 1 << 21


class InfLaurent:
    __slots__ = ("fq", "val", "coeffs", "prec")

    def __init__(self, fq, val, coeffs, prec):
        """Normalizing constructor; coeffs[0] corresponds to theta^val."""
        coeffs = list(coeffs)
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
            val -= 1
        if prec is not None:
            # drop anything below the guaranteed window
            keep = val - prec + 1
            if keep < 0:
                coeffs = []
            else:
                coeffs = coeffs[:keep]
                coeffs += [0] * (keep - len(coeffs))
            while coeffs and coeffs[0] == 0:
                coeffs.pop(0)
                val -= 1
        else:
            while coeffs and coeffs[-1] == 0:
                coeffs.pop()
        if not coeffs:
            val = prec if prec is not None else 0
        self.fq = fq
        self.val = val
        self.coeffs = tuple(coeffs)
        self.prec = prec

    # -- constructors -------------------------------------------------------

    @classmethod
    def exact_zero(cls, fq):
        return cls(fq, 0, (), None)

    @classmethod
    def zero_to(cls, fq, prec):
        return cls(fq, prec, (), prec)

    @classmethod
    def from_poly(cls, p, prec=None):
        if p.is_zero():
            return cls.exact_zero(p.fq) if prec is None else cls.zero_to(p.fq, prec)
        return cls(p.fq, p.degree, tuple(reversed(p.coeffs)), prec)

    @classmethod
    def from_ratfunc_pair(cls, num, den, prec):
        """Expansion of num/den to the requested precision exponent.

        This is the workhorse behind embed_k_inf; separating num and den lets
        evaluators expand unreduced fractions without a gcd.
        """
        fq = num.fq
        if num.is_zero():
            return cls.zero_to(fq, prec) if prec is not None else cls.exact_zero(fq)
        if den.is_zero():
            raise ZeroDivisionError("expansion of a fraction with zero denominator")
        val = num.degree - den.degree
        if prec is None:
            raise PrecisionError("embedding a true fraction requires finite precision")
        if prec > val:
            return cls.zero_to(fq, prec)
        m = max(0, -prec) + den.degree  # guard so the quotient window is full
        q = num.shift(m) // den
        coeffs = [q[j + m] for j in range(val, prec - 1, -1)]
        return cls(fq, val, coeffs, prec)

    # -- queries --------------------------------------------------------------

    def is_exact(self):
        return self.prec is None

    def is_zero_to_precision(self):
        """No nonzero digit in the certified window (includes exact zero)."""
        return not self.coeffs

    def is_exact_zero(self):
        return not self.coeffs and self.prec is None

    def coeff(self, exponent):
        """Coefficient of theta^exponent; raises outside the known window."""
        if self.prec is not None and exponent < self.prec:
            raise PrecisionError(f"coefficient at theta^{exponent} is unknown")
        idx = self.val - exponent
        if not self.coeffs:
            return 0
        if idx < 0:
            return 0
        if idx >= len(self.coeffs):
            return 0
        return self.coeffs[idx]

    @property
    def abs_bound(self):
        """Exponent b with |x| <= q^b certain (val for nonzero, prec-1 for
        a zero window, -inf (None) for exact zero)."""
        if self.coeffs:
            return self.val
        return None if self.prec is None else self.prec - 1

    def _window_lo(self):
        if self.prec is not None:
            return self.prec
        return self.val - len(self.coeffs) + 1 if self.coeffs else 0

    # -- arithmetic -----------------------------------------------------------

    def _same(self, other):
        if isinstance(other, int):
            return InfLaurent.from_poly(Poly.const(self.fq, other))
        if isinstance(other, Poly):
            return InfLaurent.from_poly(other)
        if not isinstance(other, InfLaurent) or other.fq != self.fq:
            raise CarlitzError("mixed Laurent coefficient fields")
        return other

    def __add__(self, other):
        other = self._same(other)
        fq = self.fq
        if self.prec is None and other.prec is None:
            prec = None
        elif self.prec is None:
            prec = other.prec
        elif other.prec is None:
            prec = self.prec
        else:
            prec = max(self.prec, other.prec)
        if not self.coeffs and not other.coeffs:
            if prec is None:
                return InfLaurent.exact_zero(fq)
            return InfLaurent.zero_to(fq, prec)
        hi = max(
            [x.val for x in (self, other) if x.coeffs],
            default=prec if prec is not None else 0,
        )
        lo = prec if prec is not None else min(x._window_lo() for x in (self, other) if x.coeffs)
        add = fq.add
        out = []
        for e in range(hi, lo - 1, -1):
            out.append(add(self.coeff(e), other.coeff(e)))
        return InfLaurent(fq, hi, out, prec)

    def __radd__(self, other):
        return self + other

    def __neg__(self):
        neg = self.fq.neg
        return InfLaurent(
            self.fq, self.val, tuple(neg(c) for c in self.coeffs), self.prec
        )

    def __sub__(self, other):
        return self + (-self._same(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._same(other)
        fq = self.fq
        a, b = self, other
        # bound for the product's certified window
        cands = []
        if a.prec is not None:
            if b.coeffs:
                cands.append(b.val + a.prec)
            elif b.prec is not None:
                cands.append(b.prec - 1 + a.prec)
        if b.prec is not None:
            if a.coeffs:
                cands.append(a.val + b.prec)
            elif a.prec is not None:
                cands.append(a.prec - 1 + b.prec)
        prec = max(cands) if cands else None
        if not a.coeffs or not b.coeffs:
            if prec is None:
                return InfLaurent.exact_zero(fq)
            return InfLaurent.zero_to(fq, prec)
        val = a.val + b.val
        if prec is not None and prec > val:
            return InfLaurent.zero_to(fq, prec)
        # multiply the known windows as little-endian polynomials
        pa = list(reversed(a.coeffs))
        pb = list(reversed(b.coeffs))
        if fq.e == 1:
            prod = _kernels.mul(pa, pb, fq.p)
        else:
            prod = [0] * (len(pa) + len(pb) - 1)
            for i, x in enumerate(pa):
                if x:
                    for j, y in enumerate(pb):
                        if y:
                            prod[i + j] = fq.add(prod[i + j], fq.mul(x, y))
        lo = a._window_lo() + b._window_lo()
        out = []
        for e in range(val, (prec if prec is not None else lo) - 1, -1):
            idx = e - lo
            out.append(prod[idx] if 0 <= idx < len(prod) else 0)
        return InfLaurent(fq, val, out, prec)

    def __rmul__(self, other):
        return self * other

    def inverse(self):
        fq = self.fq
        if not self.coeffs:
            raise ZeroDivisionError("inverse of a value indistinguishable from 0")
        w = len(self.coeffs)  # relative window length is preserved
        lead_inv = fq.inv(self.coeffs[0])
        # invert the unit series u = coeffs via long division of 1 by u
        inv = [lead_inv]
        for n in range(1, w):
            acc = 0
            for k in range(1, n + 1):
                if k < len(self.coeffs) and self.coeffs[k]:
                    acc = fq.add(acc, fq.mul(self.coeffs[k], inv[n - k]))
            inv.append(fq.neg(fq.mul(acc, lead_inv)))
        val = -self.val
        prec = None if self.prec is None else val - w + 1
        return InfLaurent(fq, val, inv, prec)

    def __truediv__(self, other):
        return self * self._same(other).inverse()

    def __rtruediv__(self, other):
        return self._same(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        r = InfLaurent.from_poly(Poly.one(self.fq))
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def powq(self, s):
        """The q^s-th power.  In characteristic p this maps the error term to
        its q^s-th power too, so every spread coefficient stays certified."""
        if s == 0:
            return self
        step = self.fq.q**s
        if not self.coeffs:
            prec = None if self.prec is None else (self.prec - 1) * step + 1
            if prec is None:
                return InfLaurent.exact_zero(self.fq)
            return InfLaurent.zero_to(self.fq, prec)
        if len(self.coeffs) * step > _SPREAD_CAP:
            raise PrecisionError("q-power spread exceeds the configured cap")
        out = [0] * ((len(self.coeffs) - 1) * step + 1)
        for i, c in enumerate(self.coeffs):
            out[i * step] = c
        val = self.val * step
        prec = None if self.prec is None else (self.prec - 1) * step + 1
        return InfLaurent(self.fq, val, out, prec)

    def truncate(self, prec):
        """Forget digits below theta^prec (prec must not refine the input)."""
        if self.prec is not None and (prec is None or prec < self.prec):
            raise PrecisionError("cannot refine precision by truncation")
        return InfLaurent(self.fq, self.val, self.coeffs, prec)

    # -- comparisons ----------------------------------------------------------

    def __eq__(self, other):
        """Structural equality of value and window."""
        if not isinstance(other, InfLaurent):
            return NotImplemented
        return (
            self.fq == other.fq
            and self.val == other.val
            and self.coeffs == other.coeffs
            and self.prec == other.prec
        )

    def agrees_with(self, other):
        """Largest exponent b such that |self - other| < q^b is certified;
        the two agree on all shared digits iff the difference window is
        empty.  Returns None when the difference is exactly zero."""
        d = self - self._same(other)
        return d.abs_bound if not d.is_exact_zero() else None

    def __repr__(self):
        if not self.coeffs:
            body = "0"
        else:
            parts = []
            for i, c in enumerate(self.coeffs[:8]):
                if c:
                    e = self.val - i
                    parts.append(f"{c}*theta^{e}" if e != 0 else str(c))
            body = " + ".join(parts) if parts else "0"
            if len(self.coeffs) > 8:
                body += " + ..."
        tail = "" if self.prec is None else f" + O(theta^{self.prec - 1})"
        return f"<{body}{tail}>"

    def to_json(self):
        return {
            "val": self.val,
            "coeffs": [self.fq.elem_to_json(c) for c in self.coeffs],
            "prec": self.prec,
        }


def embed_k_inf(x, prec):
    """Expand x in k as a Laurent series in 1/theta.

    Polynomials embed exactly when prec is None; true fractions always get a
    finite window ending at theta^prec.
    """
    if isinstance(x, Poly):
        x = RatFunc.from_poly(x)
    if x.is_poly() or x.is_zero():
        lau = InfLaurent.from_poly(x.num if not x.is_zero() else Poly.zero(x.fq))
        if prec is not None:
            return lau.truncate(prec)
        return lau
    return InfLaurent.from_ratfunc_pair(x.num, x.den, prec)


def rational_reconstruct(x, height_bound):
    """Recover a/b in k with deg a, deg b <= height_bound matching x, if a
    unique such fraction exists; return None otherwise.

    Requires at least 2*height_bound + 2 known coefficients.
    """
    from . import linalg

    h = height_bound
    if x.is_exact_zero():
        return RatFunc.zero(x.fq)
    if not x.coeffs:
        return None
    window = len(x.coeffs)
    if x.prec is None:
        window = max(window, 2 * h + 2)
    if window < 2 * h + 2:
        raise PrecisionError("rational reconstruction needs 2H+2 known coefficients")
    fq = x.fq
    val = x.val
    lo = val - window + 1
    # unknowns b_0..b_h with b = sum b_i theta^i.  b*x must be a polynomial
    # of degree <= h, so its coefficient at theta^e vanishes both for
    # negative e inside the certified window and for h < e <= val + h.
    exponents = list(range(lo + h, min(-1, val + h) + 1))
    exponents += list(range(h + 1, val + h + 1))
    rows = []
    for e in exponents:
        rows.append(
            [x.coeff(e - i) if (lo <= e - i <= val) else 0 for i in range(h + 1)]
        )
    basis = linalg.nullspace(fq, rows, h + 1)
    for vec in basis:
        b = Poly(fq, tuple(vec))
        if b.is_zero():
            continue
        # a = polynomial part of b*x, from the certified window
        prod = InfLaurent.from_poly(b) * x
        a_coeffs = [prod.coeff(e) for e in range(0, prod.val + 1)] if prod.val >= 0 else []
        a = Poly(fq, tuple(a_coeffs))
        if a.degree > h:
            continue
        # verify on the whole window
        resid = prod - InfLaurent.from_poly(a)
        if resid.is_zero_to_precision():
            cand = RatFunc(a, b)
            if cand.num.degree <= h and cand.den.degree <= h:
                return cand
    return None


@functools.lru_cache(maxsize=None)
def _period_cache(fq, prec):
    minus_theta = Poly(fq, (0, fq.neg(1)))
    acc = InfLaurent.from_poly(minus_theta**fq.q)
    q = fq.q
    i = 1
    while True:
        shift = 1 - q**i
        if shift < prec - q:
            break
        factor = InfLaurent(
            fq,
            0,
            [1] + [0] * (-shift - 1) + [fq.neg(1)],
            prec - q,  # guard window; the running valuation is q
        )
        acc = acc * factor.inverse() ** (q - 1)
        i += 1
    return acc.truncate(prec)


def carlitz_period_power(fq, prec):
    """The (q-1)-st power of the fundamental period, as a Laurent series:

        (-theta)^q  *  prod_{i >= 1} (1 - theta^(1 - q^i))^(-(q-1)),

    with the product truncated once the remaining factors are 1 to the
    requested precision.  Unlike the period itself, this power lives in the
    completion at infinity.
    """
    if prec is None or prec > fq.q:
        raise PrecisionError("period power needs a finite precision at most q")
    return _period_cache(fq, prec)
