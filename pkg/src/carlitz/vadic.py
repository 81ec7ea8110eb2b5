"""The completion at a finite place v: truncated v-adic numbers.

A `VAdicNumber` x stores (v, val, unit, prec) with

    x = v^val * (unit + O(v^prec)),   v does not divide unit,
    deg(unit) < prec * deg(v),

so |x|_v = q^(-val*deg v) and val + prec digits of x are pinned down
absolutely.  A unit of 0 encodes "zero to absolute precision val"
(x = O(v^val)); val = None encodes the exact zero.  Arithmetic tracks the
certified precision honestly: results never claim more digits than the
inputs support.

Hensel lifting of simple roots realizes embeddings of finite extensions
K = k[x]/(m) into the completion; only unramified (simple-root) cases are
supported.
"""

import functools

from .errors import CarlitzError, DomainError, PrecisionError
from .poly import Poly
from .ratfunc import RatFunc


@functools.lru_cache(maxsize=None)
def _vpow(v, k):
    return v**k


class VAdicNumber:
    __slots__ = ("v", "val", "unit", "prec")

    def __init__(self, v, val, unit, prec, reduce=True):
        self.v = v
        if unit.is_zero():
            self.val = val  # None means exactly zero
            self.unit = unit
            self.prec = 0
            return
        if reduce:
            k = unit.ord_at(v)
            if k:
                unit = unit.divexact(_vpow(v, k))
                val += k
                prec -= k
            if prec <= 0:
                # nothing survives: all computed digits were below the noise
                self.v, self.val, self.unit, self.prec = v, val, Poly.zero(v.fq), 0
                return
            unit = unit % _vpow(v, prec)
            if unit.is_zero():
                self.v, self.val, self.unit, self.prec = v, val + prec, Poly.zero(v.fq), 0
                return
            k = unit.ord_at(v)
            if k:  # reduction mod v^prec exposed a smaller unit
                unit = unit.divexact(_vpow(v, k))
                val += k
                prec -= k
        self.val = val
        self.unit = unit
        self.prec = prec

    # -- constructors -------------------------------------------------------

    @classmethod
    def exact_zero(cls, v):
        return cls(v, None, Poly.zero(v.fq), 0)

    @classmethod
    def zero_to(cls, v, abs_prec):
        return cls(v, abs_prec, Poly.zero(v.fq), 0)

    @classmethod
    def one(cls, v, prec):
        return cls(v, 0, Poly.one(v.fq), prec, reduce=False)

    # -- queries --------------------------------------------------------------

    @property
    def fq(self):
        return self.v.fq

    def is_exact_zero(self):
        return self.unit.is_zero() and self.val is None

    def is_zero_to_precision(self):
        """All certified digits vanish (includes the exact zero)."""
        return self.unit.is_zero()

    @property
    def abs_prec(self):
        """x is pinned down modulo v^abs_prec (None = exactly known)."""
        if self.unit.is_zero():
            return self.val  # None for exact zero
        return self.val + self.prec

    def ord(self):
        """The valuation; None (i.e. +infinity) for the exact zero.
        Raises for a value indistinguishable from zero."""
        if self.is_exact_zero():
            return None
        if self.unit.is_zero():
            raise PrecisionError("valuation unknown: zero to working precision")
        return self.val

    # -- arithmetic -----------------------------------------------------------

    def _same(self, other):
        if isinstance(other, int):
            other = Poly.const(self.fq, other)
        if isinstance(other, Poly):
            other = RatFunc.from_poly(other)
        if isinstance(other, RatFunc):
            ap = self.abs_prec
            target = (ap if ap is not None else 4) + 4
            return embed_k_v(other, self.v, max(target, 4))
        if not isinstance(other, VAdicNumber) or other.v != self.v:
            raise CarlitzError("mixed v-adic places")
        return other

    def __add__(self, other):
        other = self._same(other)
        v = self.v
        a, b = self, other
        if a.is_exact_zero():
            return b
        if b.is_exact_zero():
            return a
        pa, pb = a.abs_prec, b.abs_prec
        ap = min(x for x in (pa, pb) if x is not None) if (pa is not None or pb is not None) else None
        if a.unit.is_zero() and b.unit.is_zero():
            return VAdicNumber.zero_to(v, ap)
        if a.unit.is_zero():
            return b._truncate_abs(ap)
        if b.unit.is_zero():
            return a._truncate_abs(ap)
        c = min(a.val, b.val)
        if ap is None:
            ap_eff = max(a.val + a.prec, b.val + b.prec)
        else:
            ap_eff = ap
        mod = _vpow(v, ap_eff - c)
        poly = (
            a.unit * _vpow(v, a.val - c) + b.unit * _vpow(v, b.val - c)
        ) % mod
        if poly.is_zero():
            return VAdicNumber.zero_to(v, ap_eff)
        return VAdicNumber(v, c, poly, ap_eff - c)

    def _truncate_abs(self, abs_prec):
        if abs_prec is None:
            return self
        if self.unit.is_zero():
            if self.val is None:
                return VAdicNumber.zero_to(self.v, abs_prec)
            return VAdicNumber.zero_to(self.v, min(self.val, abs_prec))
        if self.val >= abs_prec:
            return VAdicNumber.zero_to(self.v, abs_prec)
        return VAdicNumber(self.v, self.val, self.unit, abs_prec - self.val)

    def __radd__(self, other):
        return self + other

    def __neg__(self):
        return VAdicNumber(self.v, self.val, -self.unit, self.prec, reduce=False)

    def __sub__(self, other):
        return self + (-self._same(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._same(other)
        v = self.v
        a, b = self, other
        if a.is_exact_zero() or b.is_exact_zero():
            return VAdicNumber.exact_zero(v)
        if a.unit.is_zero() or b.unit.is_zero():
            # O(v^Ma) * v^vb(...) = O(v^(Ma+vb)); O * O similarly
            ma = a.val if a.unit.is_zero() else None
            mb = b.val if b.unit.is_zero() else None
            if ma is not None and mb is not None:
                return VAdicNumber.zero_to(v, ma + mb)
            if ma is not None:
                return VAdicNumber.zero_to(v, ma + b.val)
            return VAdicNumber.zero_to(v, mb + a.val)
        prec = min(a.prec, b.prec)
        unit = (a.unit * b.unit) % _vpow(v, prec)
        return VAdicNumber(v, a.val + b.val, unit, prec)

    def __rmul__(self, other):
        return self * other

    def inverse(self):
        if self.unit.is_zero():
            raise ZeroDivisionError(
                "inverse of a value indistinguishable from 0 at this precision"
            )
        inv = self.unit.modinv(_vpow(self.v, self.prec))
        return VAdicNumber(self.v, -self.val, inv, self.prec, reduce=False)

    def __truediv__(self, other):
        other = self._same(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._same(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        r = VAdicNumber.one(self.v, self.prec if not self.unit.is_zero() else 1)
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def powq(self, s, prec_cap=None):
        """The q^s-th power.  In characteristic p, (u + O(v^n))^(q^s) =
        u^(q^s) + O(v^(n q^s)), so the relative precision multiplies; it is
        capped at prec_cap to keep moduli small."""
        if s == 0:
            return self
        e = self.fq.q**s
        v = self.v
        if self.is_exact_zero():
            return self
        if self.unit.is_zero():
            return VAdicNumber.zero_to(v, self.val * e)
        prec = self.prec * e
        if prec_cap is not None:
            prec = min(prec, prec_cap)
        unit = self.unit.powmod(e, _vpow(v, prec))
        return VAdicNumber(v, self.val * e, unit, prec)

    # -- comparisons ----------------------------------------------------------

    def __eq__(self, other):
        """Structural equality (same certified data)."""
        if not isinstance(other, VAdicNumber):
            return NotImplemented
        return (
            self.v == other.v
            and self.val == other.val
            and self.unit == other.unit
            and self.prec == other.prec
        )

    def residue(self):
        """The image modulo v (a Poly of degree < deg v).  Needs val >= 0."""
        if self.unit.is_zero():
            if self.val is None or self.val >= 1:
                return Poly.zero(self.fq)
            raise PrecisionError("residue unknown")
        if self.val < 0:
            raise DomainError("residue of a non-integral value")
        if self.val > 0:
            return Poly.zero(self.fq)
        return self.unit % self.v

    def __repr__(self):
        vs = self.v.to_string()
        if self.is_exact_zero():
            return f"<0 exactly ({vs}-adic)>"
        if self.unit.is_zero():
            return f"<O(({vs})^{self.val})>"
        return f"<({vs})^{self.val}*({self.unit}) + O(({vs})^{self.val + self.prec})>"

    def to_json(self):
        return {
            "v": self.v.to_json(),
            "val": self.val,
            "unit": self.unit.to_json(),
            "prec": self.prec,
        }


def embed_k_v(x, v, prec):
    """Embed x in k into the v-adic completion at relative precision prec."""
    if isinstance(x, Poly):
        x = RatFunc.from_poly(x)
    if x.is_zero():
        return VAdicNumber.exact_zero(v)
    nv = x.num.ord_at(v)
    dv = x.den.ord_at(v)
    num = x.num.divexact(_vpow(v, nv)) if nv else x.num
    den = x.den.divexact(_vpow(v, dv)) if dv else x.den
    mod = _vpow(v, prec)
    unit = (num % mod) * den.modinv(mod) % mod
    return VAdicNumber(v, nv - dv, unit, prec)


def roots_mod_v(m_coeffs, v):
    """All residues r mod v with m(r) = 0 mod v, for m over k with
    v-integral coefficients, sorted by packed coefficient encoding."""
    fq = v.fq
    reduced = []
    for c in m_coeffs:
        if isinstance(c, Poly):
            c = RatFunc.from_poly(c)
        if c.den.ord_at(v):
            raise DomainError("minimal polynomial has a pole at v")
        reduced.append((c.num * c.den.modinv(v)) % v)
    out = []
    from .factor import monic_polys

    cands = [Poly.zero(fq)]
    d = v.degree
    for deg in range(0, d):
        for mp in monic_polys(fq, deg):
            for c in range(1, fq.q):
                cands.append(mp.scale(c))
    for r in cands:
        acc = Poly.zero(fq)
        for c in reversed(reduced):
            acc = (acc * r + c) % v
        if acc.is_zero():
            out.append(r)
    out.sort(key=lambda p: p.coeffs)
    return out


def hensel_lift(m_coeffs, v, r0, prec):
    """Newton-lift the simple root r0 of m modulo v to precision v^prec.

    m is given by its coefficient list over k (v-integral).  Raises
    DomainError when r0 is not a root mod v or the root is not simple.
    """
    fq = v.fq
    coeffs = []
    for c in m_coeffs:
        if isinstance(c, Poly):
            c = RatFunc.from_poly(c)
        if c.den.ord_at(v):
            raise DomainError("minimal polynomial has a pole at v")
        coeffs.append(c)

    def eval_mod(cs, r, mod):
        acc = Poly.zero(fq)
        for c in reversed(cs):
            cp = (c.num % mod) * c.den.modinv(mod) % mod
            acc = (acc * r + cp) % mod
        return acc

    deriv = []
    for i in range(1, len(coeffs)):
        k = i % fq.p
        deriv.append(coeffs[i] * k)

    if not eval_mod(coeffs, r0 % v, v).is_zero():
        raise DomainError("r0 is not a root modulo v")
    d0 = eval_mod(deriv, r0 % v, v)
    if d0.is_zero():
        raise DomainError("multiple root: Hensel lifting needs a simple root")

    r = r0 % v
    k = 1
    while k < prec:
        k = min(2 * k, prec)
        mod = _vpow(v, k)
        fr = eval_mod(coeffs, r, mod)
        dfr = eval_mod(deriv, r, mod)
        r = (r - fr * dfr.modinv(mod)) % mod
    # certify ord(m(r)) >= prec exactly
    if not eval_mod(coeffs, r, _vpow(v, prec)).is_zero():
        raise CarlitzError("Hensel iteration failed to certify")  # pragma: no cover
    if r.is_zero():
        return VAdicNumber.zero_to(v, prec)
    return VAdicNumber(v, 0, r, prec)


class VPlaceEmbedding:
    """An embedding of an extension field K = k[x]/(m) into the completion
    at v, realized by Hensel-lifting one chosen simple root of m mod v.

    Which root is chosen is a configuration knob (`root_index` into the list
    of residues sorted by coefficient encoding), not canonical.
    """

    def __init__(self, field, v, root_index=0):
        self.field = field
        self.v = v
        roots = roots_mod_v(list(field.minpoly), v)
        if not roots:
            raise DomainError(
                "minimal polynomial has no root modulo v; "
                "this extension does not embed through a simple residue root"
            )
        if root_index >= len(roots):
            raise DomainError(f"root_index {root_index} out of range ({len(roots)} roots)")
        self.r0 = roots[root_index]
        self._root_cache = None

    def root(self, prec):
        """The lifted root to at least the requested precision."""
        if self._root_cache is None or self._root_cache.abs_prec < prec:
            self._root_cache = hensel_lift(list(self.field.minpoly), self.v, self.r0, prec)
        return self._root_cache

    def embed(self, elem, prec):
        """Embed an ExtElem at (absolute and relative) precision prec."""
        if elem.field != self.field:
            raise CarlitzError("element belongs to a different extension field")
        r = self.root(prec)
        acc = VAdicNumber.exact_zero(self.v)
        for c in reversed(elem.coords):
            acc = acc * r + embed_k_v(c, self.v, prec)
        return acc


def embed_at_v(x, v, prec, embedding=None):
    """Embed a Poly, RatFunc or ExtElem into the v-adic completion."""
    from .ext import ExtElem

    if isinstance(x, ExtElem):
        k_val = x.in_k()
        if k_val is not None:
            return embed_k_v(k_val, v, prec)
        if embedding is None:
            embedding = VPlaceEmbedding(x.field, v)
        return embedding.embed(x, prec)
    return embed_k_v(x, v, prec)
