"""t-modules attached to a composition index and coefficient tuple.

For s = (s_1, ..., s_r) and nonzero u_1, ..., u_r the module G = (G_a^d, rho)
acts by

    rho_t = theta I_d + N + E tau,

where N is block-diagonal with nilpotent Jordan-type blocks of sizes
d_l = s_l + ... + s_r, and E is block upper-triangular whose (l, m) block
carries the single corner entry (-1)^(m-l) u_l ... u_(m-1) (1 on the
diagonal blocks).  For r = 1 this is the s_1-st tensor power of the
Carlitz module.

The logarithm log_G = sum P_i tau^i and exponential exp_G = sum Q_i tau^i
are generated by nilpotent Sylvester recurrences obtained by comparing
tau-coefficients in the functional equations

    log_G o rho_t = d(rho_t) o log_G,     exp_G o d(rho_t) = rho_t o exp_G,

namely, with f_i = theta^(q^i) - theta and ad(N)(Y) = NY - YN,

    (theta^(q^(i+1)) - theta) P_(i+1) + P_(i+1) N - N P_(i+1) = -P_i E^(i),
    (theta^(q^i)     - theta) Q_i     + Q_i N     - N Q_i     =  E Q_(i-1)^(1),

each solved in closed form by X = sum_j ad(N)^j(C) / f^(j+1), a finite sum
because N^(d_1) = 0.  Everything is exact: matrices live in the
shared-denominator representation of `fractions`.
"""

import functools

from .errors import CarlitzError, DomainError
from .ext import ExtElem
from .fractions import (
    FFrac,
    FracMatrix,
    NumContext,
    XRing,
    den_join,
    den_mul,
    nm_is_zero,
    nm_mul_f,
    scale_to_den,
)
from .poly import Poly
from .polylog import CompositionIndex, sign_const
from .ratfunc import RatFunc
from .scalars import ExtScalars, KScalars
from .taupoly import (
    TauMatrixPoly,
    mat_add,
    mat_identity,
    mat_mul,
    mat_scalar,
    mat_sub,
    mat_zero,
)


def _is_zero_exact(x):
    if isinstance(x, int):
        return x == 0
    return x.is_zero()


class TModule:
    def __init__(self, index, u):
        if not isinstance(index, CompositionIndex):
            index = CompositionIndex(tuple(index))
        self.index = index
        u = tuple(u)
        if len(u) != index.depth:
            raise CarlitzError("coefficient tuple length must equal the depth")
        if any(_is_zero_exact(x) for x in u):
            raise DomainError("t-module coefficients u_i must be nonzero")
        self.u = u
        self.block_dims = index.block_dims
        self.d = index.dimension
        starts = []
        acc = 0
        for dl in self.block_dims:
            starts.append(acc)
            acc += dl
        self.block_starts = tuple(starts)

        field = None
        fq = None
        for x in u:
            if isinstance(x, ExtElem):
                if field is not None and x.field != field:
                    raise CarlitzError("mixed extension fields in u")
                field = x.field
                fq = x.fq
            else:
                fq = x.fq
        self.fq = fq
        self.field = field
        self.ring = XRing(field) if field is not None else None
        self.scalars = ExtScalars(field) if field is not None else KScalars(fq)
        self.nc = NumContext(fq, self.ring)

        self._u_frac = [FFrac.from_exact(x, self.ring) for x in u]
        self._e_mat = self._build_e()
        self._P = [FracMatrix.identity(self.nc, self.d)]
        self._Q = [FracMatrix.identity(self.nc, self.d)]
        self._e_twists = {0: self._e_mat}

    # -- structure ---------------------------------------------------------

    @property
    def depth(self):
        return self.index.depth

    @property
    def d1(self):
        return self.block_dims[0]

    def block_bottom(self, l):
        """0-based row index of the bottom of block l (1-based l):
        d_1 + ... + d_l - 1."""
        return self.block_starts[l - 1] + self.block_dims[l - 1] - 1

    def in_same_block(self, a, b):
        for st, dl in zip(self.block_starts, self.block_dims):
            if st <= a < st + dl:
                return st <= b < st + dl
        return False

    def corner_value(self, l, m):
        """The single nonzero entry of the (l, m) block of E, as an FFrac."""
        if l == m:
            return FFrac(self.nc.one())
        prod = FFrac(self.nc.one())
        for e in range(l, m):
            prod = prod * self._u_frac[e - 1]
        return prod * self.nc.from_poly(
            Poly.const(self.fq, sign_const(self.fq, m - l))
        )

    def _build_e(self):
        rows = [[self.nc.zero() for _ in range(self.d)] for _ in range(self.d)]
        den = {}
        corners = {}
        for l in range(1, self.depth + 1):
            for m in range(l, self.depth + 1):
                corners[(l, m)] = self.corner_value(l, m)
        for val in corners.values():
            den = den_join(den, val.den)
        for (l, m), val in corners.items():
            r = self.block_bottom(l)
            c = self.block_starts[m - 1]
            rows[r][c] = scale_to_den(val.num, val.den, den)
        return FracMatrix(self.nc, rows, den)

    def e_twist(self, i):
        if i not in self._e_twists:
            self._e_twists[i] = self._e_mat.twist(i)
        return self._e_twists[i]

    # -- user-facing matrices ------------------------------------------------

    def rho_t(self, ctx=None):
        """rho_t = (theta I + N) + E tau over the given scalar context."""
        ctx = ctx or self.scalars
        d = self.d
        a0 = mat_zero(ctx, d)
        theta = ctx.theta()
        for i in range(d):
            a0[i][i] = theta
        for i in range(d - 1):
            if self.in_same_block(i, i + 1):
                a0[i][i + 1] = ctx.one()
        a1 = mat_zero(ctx, d)
        for l in range(1, self.depth + 1):
            for m in range(l, self.depth + 1):
                val = self.corner_exact(l, m)
                a1[self.block_bottom(l)][self.block_starts[m - 1]] = ctx.coerce(val)
        return TauMatrixPoly(ctx, d, [a0, a1])

    def corner_exact(self, l, m):
        """E-corner as an exact scalar (RatFunc or ExtElem)."""
        if l == m:
            return self.scalars.one()
        acc = None
        for e in range(l, m):
            x = self.scalars.coerce(self.u[e - 1])
            acc = x if acc is None else acc * x
        return acc * self.scalars.from_const(sign_const(self.fq, m - l))

    def n_matrix(self, ctx=None):
        ctx = ctx or self.scalars
        out = mat_zero(ctx, self.d)
        for i in range(self.d - 1):
            if self.in_same_block(i, i + 1):
                out[i][i + 1] = ctx.one()
        return out

    def rho_a(self, a, ctx=None):
        """The image of a(t) under rho, by Horner over tau-polynomials."""
        ctx = ctx or self.scalars
        rt = self.rho_t(ctx)
        acc = TauMatrixPoly.zero(ctx, self.d)
        for c in reversed(a.coeffs):
            acc = acc * rt
            if c:
                acc = acc + TauMatrixPoly.identity(ctx, self.d).scale_const(c)
        return acc

    def d_rho_a(self, a, ctx=None):
        """The differential: a(theta I + N) as a plain matrix."""
        ctx = ctx or self.scalars
        d = self.d
        a0 = mat_zero(ctx, d)
        theta = ctx.theta()
        for i in range(d):
            a0[i][i] = theta
        for i in range(d - 1):
            if self.in_same_block(i, i + 1):
                a0[i][i + 1] = ctx.one()
        acc = mat_zero(ctx, d)
        for c in reversed(a.coeffs):
            acc = mat_mul(ctx, acc, a0)
            if c:
                s = ctx.from_const(c)
                acc = mat_add(acc, mat_scalar(ctx, mat_identity(ctx, d), s))
        return acc

    def apply_rho_t(self, vec, ctx):
        """One application of rho_t to a point, without building matrices."""
        theta = ctx.theta()
        out = []
        d = self.d
        twisted = [ctx.twist(x, 1) for x in vec]
        for i in range(d):
            acc = vec[i] * theta
            if i + 1 < d and self.in_same_block(i, i + 1):
                acc = acc + vec[i + 1]
            out.append(acc)
        for l in range(1, self.depth + 1):
            r = self.block_bottom(l)
            acc = out[r]
            for m in range(l, self.depth + 1):
                c = self.block_starts[m - 1]
                val = ctx.coerce(self.corner_exact(l, m))
                acc = acc + val * twisted[c]
            out[r] = acc
        return out

    def apply_rho_a(self, a, vec, ctx=None):
        """rho_a applied to a point via iterated rho_t (Horner in t)."""
        ctx = ctx or self.scalars
        iterates = [list(vec)]
        for _ in range(a.degree):
            iterates.append(self.apply_rho_t(iterates[-1], ctx))
        out = [ctx.zero() for _ in range(self.d)]
        for j, c in enumerate(a.coeffs):
            if c:
                s = ctx.from_const(c)
                out = [o + x * s for o, x in zip(out, iterates[j])]
        return out

    def special_point(self):
        """The d-vector with (-1)^(r-l) u_l ... u_r at the bottom of each
        block and zeros elsewhere."""
        r = self.depth
        coords = [self.scalars.zero() for _ in range(self.d)]
        for l in range(1, r + 1):
            prod = None
            for e in range(l, r + 1):
                x = self.u[e - 1]
                if isinstance(x, Poly):
                    x = RatFunc.from_poly(x)
                x = self.scalars.coerce(x)
                prod = x if prod is None else prod * x
            sgn = sign_const(self.fq, r - l)
            coords[self.block_bottom(l)] = prod * self.scalars.from_const(sgn)
        return coords

    # -- the coefficient engine ----------------------------------------------

    def _ad_n(self, rows):
        """N*Y - Y*N on numerator rows (N is structural: 0/1 entries)."""
        d = self.d
        nc = self.nc
        out = [[nc.zero() for _ in range(d)] for _ in range(d)]
        for rr in range(d):
            up = rr + 1
            shift_ok = up < d and self.in_same_block(rr, up)
            for cc in range(d):
                acc = None
                if shift_ok:
                    acc = rows[up][cc]
                if cc > 0 and self.in_same_block(cc - 1, cc):
                    y = rows[rr][cc - 1]
                    acc = -y if acc is None else acc - y
                if acc is not None:
                    out[rr][cc] = acc
        return out

    def _sylvester(self, C, f_index):
        """Solve (theta^(q^f_index) - theta) X + X N - N X = C."""
        twod1m2 = 2 * self.d1 - 2
        nc = self.nc
        d = self.d
        acc = [[nc.zero() for _ in range(d)] for _ in range(d)]
        cur = C.rows
        for j in range(twod1m2 + 1):
            e = twod1m2 - j
            for rr in range(d):
                for cc in range(d):
                    x = cur[rr][cc]
                    if not nm_is_zero(x):
                        acc[rr][cc] = acc[rr][cc] + nm_mul_f(x, f_index, e)
            if j < twod1m2:
                cur = self._ad_n(cur)
        den = den_mul(C.den, {f_index: twod1m2 + 1})
        return FracMatrix(nc, acc, den).reduce()

    def log_coeffs(self, imax):
        """P_0, ..., P_imax of log_G (cached, exact)."""
        while len(self._P) <= imax:
            i = len(self._P) - 1
            C = self._P[i].mul(self.e_twist(i)).neg()
            self._P.append(self._sylvester(C, i + 1))
        return self._P[: imax + 1]

    def exp_coeffs(self, imax):
        """Q_0, ..., Q_imax of exp_G (cached, exact)."""
        while len(self._Q) <= imax:
            i = len(self._Q)
            C = self._e_mat.mul(self._Q[i - 1].twist(1))
            self._Q.append(self._sylvester(C, i))
        return self._Q[: imax + 1]

    def log_corner(self, i, l, m):
        """y_i[l m]: the lower-right corner of the (l, m) block of P_i."""
        P = self.log_coeffs(i)[i]
        return P.entry(self.block_bottom(l), self.block_starts[m - 1] + self.block_dims[m - 1] - 1)

    def closed_form_corner(self, i, l, m):
        """The closed form of y_i[l m]:

            1 / L_i^(d_m)                                  (l = m)
            (-1)^(m-l) sum over 0 <= i_l <= ... <= i_(m-1) < i of
                u_l^(q^i_l) ... u_(m-1)^(q^i_(m-1))
                / ( L_(i_l)^(s_l) ... L_(i_(m-1))^(s_(m-1)) L_i^(d_m) )
        """
        dm = self.block_dims[m - 1]
        if l == m:
            return self._inv_l_frac(i, dm)
        s = self.index.s
        acc = FFrac(self.nc.zero())
        idx = [0] * (m - l)

        def rec(pos, lo):
            nonlocal acc
            if pos == m - l:
                term = FFrac(self.nc.one())
                for off, ie in enumerate(idx):
                    e = l + off  # 1-based coefficient position
                    term = term * self._u_frac[e - 1].twist(ie)
                    term = term * self._inv_l_frac(ie, s[e - 1])
                acc = acc + term * self._inv_l_frac(i, dm)
                return
            for ie in range(lo, i):
                idx[pos] = ie
                rec(pos + 1, ie)

        rec(0, 0)
        sgn = sign_const(self.fq, m - l)
        return acc * self.nc.from_poly(Poly.const(self.fq, sgn))

    def _inv_l_frac(self, i, e):
        """1 / L_i^e as an FFrac: sign (-1)^(i e) over f_1^e ... f_i^e."""
        num = self.nc.from_poly(Poly.const(self.fq, sign_const(self.fq, i * e)))
        return FFrac(num, {j: e for j in range(1, i + 1)})

    # -- serialization ---------------------------------------------------------

    def describe(self):
        return {
            "s": list(self.index.s),
            "weight": self.index.weight,
            "depth": self.depth,
            "block_dims": list(self.block_dims),
            "dimension": self.d,
        }

    def __repr__(self):
        return f"TModule(s={self.index}, d={self.d})"


def build_tmodule(s, u):
    """Construct G_{s,u}; s may be a CompositionIndex or a plain tuple."""
    return TModule(s, u)


def special_point(s, u):
    return build_tmodule(s, u).special_point()


def solve_nilpotent_sylvester(ctx, c, N, C):
    """Generic field-scalar solver for (c - theta) X + X N - N X = C.

    X = sum_{j >= 0} ad(N)^j (C) / (c - theta)^(j+1); the sum terminates
    because N is nilpotent.  c must differ from theta.
    """
    d = len(N)
    diff = c - ctx.theta()
    if ctx.is_zero(diff):
        raise DomainError("Sylvester solve needs c != theta")
    inv = ctx.one() / diff
    # nilpotency index of N
    power = [row[:] for row in N]
    idx = 1
    while idx <= d and any(not ctx.is_zero(x) for row in power for x in row):
        power = mat_mul(ctx, power, N)
        idx += 1
    acc = [[ctx.zero() for _ in range(d)] for _ in range(d)]
    cur = [row[:] for row in C]
    scale = inv
    for _ in range(2 * idx - 1):
        term = [[x * scale for x in row] for row in cur]
        acc = [[a + t for a, t in zip(ra, rt)] for ra, rt in zip(acc, term)]
        cur = mat_sub(mat_mul(ctx, N, cur), mat_mul(ctx, cur, N))
        scale = scale * inv
    return acc


@functools.lru_cache(maxsize=None)
def carlitz_module(fq, n=1):
    """The n-th tensor power of the Carlitz module (depth 1, s = (n))."""
    return TModule(CompositionIndex.of(n), (RatFunc.one(fq),))
