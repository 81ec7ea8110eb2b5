"""Twisted polynomials in the Frobenius tau with matrix coefficients.

A TauMatrixPoly is sum_i alpha_i tau^i with alpha_i square matrices over a
scalar context; multiplication uses tau a = a^q tau, i.e.

    (sum alpha_i tau^i)(sum beta_j tau^j)
        = sum_k ( sum_{i+j=k} alpha_i * beta_j^(i) ) tau^k.

The tau^0 coefficient map d(phi) := alpha_0 is a ring homomorphism; tests
rely on that.
"""

from .errors import CarlitzError


def mat_zero(ctx, d):
    return [[ctx.zero() for _ in range(d)] for _ in range(d)]


def mat_identity(ctx, d):
    out = mat_zero(ctx, d)
    for i in range(d):
        out[i][i] = ctx.one()
    return out


def mat_add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_neg(A):
    return [[-a for a in row] for row in A]


def mat_mul(ctx, A, B):
    d = len(A)
    m = len(B[0])
    out = [[ctx.zero() for _ in range(m)] for _ in range(d)]
    for i in range(d):
        for k in range(len(B)):
            a = A[i][k]
            if ctx.is_zero(a):
                continue
            rowb = B[k]
            rowo = out[i]
            for j in range(m):
                if not ctx.is_zero(rowb[j]):
                    rowo[j] = rowo[j] + a * rowb[j]
    return out

def mat_scalar(ctx, A, c):
    return [[a * c for a in row] for row in A]


def mat_twist(ctx, A, s):
    return [[ctx.twist(a, s) for a in row] for row in A]


def mat_apply(ctx, A, vec):
    out = []
    for row in A:
        acc = ctx.zero()
        for a, x in zip(row, vec):
            if not (ctx.is_zero(a) or ctx.is_zero(x)):
                acc = acc + a * x
        out.append(acc)
    return out


class TauMatrixPoly:
    __slots__ = ("ctx", "d", "coeffs")

    def __init__(self, ctx, d, coeffs, trim=True):
        self.ctx = ctx
        self.d = d
        coeffs = list(coeffs)
        if trim:
            while coeffs and all(
                ctx.is_zero(x) for row in coeffs[-1] for x in row
            ):
                coeffs.pop()
        self.coeffs = coeffs

    @classmethod
    def zero(cls, ctx, d):
        return cls(ctx, d, [])

    @classmethod
    def identity(cls, ctx, d):
        return cls(ctx, d, [mat_identity(ctx, d)])

    @classmethod
    def constant(cls, ctx, M):
        return cls(ctx, len(M), [M])

    @property
    def tau_degree(self):
        return len(self.coeffs) - 1

    def coeff(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return mat_zero(self.ctx, self.d)

    def dmap(self):
        """The tau^0 coefficient matrix."""
        return self.coeff(0)

    def __add__(self, other):
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        out = []
        for i in range(n):
            out.append(mat_add(self.coeff(i), other.coeff(i)))
        return TauMatrixPoly(self.ctx, self.d, out)

    def __sub__(self, other):
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        out = []
        for i in range(n):
            out.append(mat_sub(self.coeff(i), other.coeff(i)))
        return TauMatrixPoly(self.ctx, self.d, out)

    def __neg__(self):
        return TauMatrixPoly(self.ctx, self.d, [mat_neg(c) for c in self.coeffs])

    def _check(self, other):
        if not isinstance(other, TauMatrixPoly) or other.d != self.d:
            raise CarlitzError("tau-polynomial dimension mismatch")

    def __mul__(self, other):
        self._check(other)
        ctx = self.ctx
        if not self.coeffs or not other.coeffs:
            return TauMatrixPoly.zero(ctx, self.d)
        out = [mat_zero(ctx, self.d) for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, a in enumerate(self.coeffs):
            if all(ctx.is_zero(x) for row in a for x in row):
                continue
            for j, b in enumerate(other.coeffs):
                tb = mat_twist(ctx, b, i) if i else b
                out[i + j] = mat_add(out[i + j], mat_mul(ctx, a, tb))
        return TauMatrixPoly(ctx, self.d, out)

    def scale_const(self, c):
        """Multiply by the F_q constant c (an int)."""
        s = self.ctx.from_const(c)
        return TauMatrixPoly(
            self.ctx, self.d, [mat_scalar(self.ctx, M, s) for M in self.coeffs]
        )

    def apply(self, vec):
        """Evaluate at a point: sum_i alpha_i vec^(i)."""
        ctx = self.ctx
        out = [ctx.zero() for _ in range(self.d)]
        for i, a in enumerate(self.coeffs):
            tv = [ctx.twist(x, i) for x in vec] if i else list(vec)
            term = mat_apply(ctx, a, tv)
            out = [p + t for p, t in zip(out, term)]
        return out

    def __eq__(self, other):
        if not isinstance(other, TauMatrixPoly):
            return NotImplemented
        if self.d != other.d:
            return False
        n = max(len(self.coeffs), len(other.coeffs))
        for i in range(n):
            a, b = self.coeff(i), other.coeff(i)
            for ra, rb in zip(a, b):
                for x, y in zip(ra, rb):
                    if not x == y:
                        return False
        return True

    def __repr__(self):
        return f"TauMatrixPoly(d={self.d}, tau_degree={self.tau_degree})"
