"""v-adic evaluation of log_G and the extension of the polylogarithm
families to the closed unit polydisc.

The logarithm series converges on |x|_v < 1 because |P_i|_v grows at most
like |v|^(-i(2 d_1 - 1)) while |x^(q^i)| shrinks doubly exponentially.  A
point with coordinates that are merely integral (|u_i|_v <= 1) is first
moved into the open disc by the multiplier

    a(t) = prod_l ( v(t)^(d_l * ell) - 1 ),

where ell is the least integer with all coefficient residues in F_(q^ell);
the residue of the moved point dies block by block because v(t)^(d) acts as
tau^(deg v * ...) on residue points of the tensor-power quotients.  The
extended star values are then coordinates of log_G at the moved point
divided by a(theta), which is independent of the choice of multiplier; the
non-star family follows by the triangular identity of `polylog`.
"""

import functools

from .errors import CarlitzError, DomainError, PrecisionError
from .ext import ExtElem
from .fractions import FFrac
from .polylog import CompositionIndex, sign_const, star_nonstar_residue
from .poly import Poly
from .ratfunc import RatFunc
from .scalars import VAdicScalars
from .tmodule import TModule
from .vadic import VAdicNumber, VPlaceEmbedding, embed_at_v, embed_k_v

_I_CAP = 64
_EXACT_MOVE_DEG_CAP = 6  # exact rho_a application allowed up to this t-degree


def _coord_ords(coords):
    out = []
    for x in coords:
        if x.is_exact_zero():
            out.append(None)
        elif x.is_zero_to_precision():
            out.append(x.val)  # only a lower bound, which is all we need
        else:
            out.append(x.ord())
    return out


def _plan_log_truncation(d1, o_min, target):
    """Smallest i1 with q^i o_min - i (2 d_1 - 1) >= target for all i >= i1."""
    growth = 2 * d1 - 1

    def bound(i, q):
        return q**i * o_min - i * growth

    return growth, bound


def log_eval_v(G, x, v, prec, embedding=None):
    """log_G at a point of the open unit polydisc, to absolute precision
    v^prec in every coordinate.

    x may hold exact scalars (RatFunc / ExtElem / Poly) or VAdicNumbers.
    """
    q = G.fq.q
    d1 = G.d1
    growth = 2 * d1 - 1
    if embedding is None and G.field is not None:
        embedding = VPlaceEmbedding(G.field, v)

    def embed(xi, w):
        if isinstance(xi, VAdicNumber):
            return xi
        return embed_at_v(xi, v, w, embedding=embedding)

    probe = [embed(xi, max(prec, 8)) for xi in x]
    ords = _coord_ords(probe)
    finite = [o for o in ords if o is not None]
    if not finite:
        return [VAdicNumber.exact_zero(v) for _ in x]
    o_min = min(finite)
    if o_min < 1:
        raise DomainError("log_G needs |x|_v < 1 (all coordinates in m_v)")

    imax = None
    for i in range(_I_CAP):
        if q**i * o_min - i * growth >= prec and q**i * (q - 1) * o_min > growth:
            imax = i
            break
    if imax is None:
        raise PrecisionError("log_G truncation cap reached")

    work = prec + imax * growth + 4
    xs = [embed(xi, work) for xi in x]
    P = G.log_coeffs(imax)
    out = [VAdicNumber.exact_zero(v) for _ in range(G.d)]
    for i in range(imax + 1):
        tx = [c.powq(i, prec_cap=work) for c in xs]
        Pi = P[i]
        for rr in range(G.d):
            acc = None
            for cc in range(G.d):
                e = Pi.rows[rr][cc]
                from .fractions import nm_is_zero

                if nm_is_zero(e):
                    continue
                frac = Pi.entry(rr, cc)
                if G.ring is None:
                    ev = frac.embed_v(v, work)
                else:
                    ev = frac.embed_v_ext(v, work, embedding)
                term = ev * tx[cc]
                acc = term if acc is None else acc + term
            if acc is not None:
                out[rr] = out[rr] + acc
    return [c._truncate_abs(prec) for c in out]


def residue_extension_degree(u, v, embedding=None):
    """Least ell >= 1 such that every residue of the u_i lies in F_(q^ell)."""
    fq = v.fq
    ell = 1
    for x in u:
        r = embed_at_v(x, v, max(4, v.degree + 2), embedding=embedding).residue()
        # order of the residue under the q-power Frobenius
        cur = r
        li = 1
        while True:
            cur = cur.powmod(fq.q, v)
            if cur == r % v:
                break
            li += 1
            if li > v.degree:  # pragma: no cover - residues live in F_(q^deg v)
                raise CarlitzError("residue Frobenius orbit did not close")
        ell = ell * li // _gcd_int(ell, li)
    return ell


def _gcd_int(a, b):
    while b:
        a, b = b, a % b
    return a


def canonical_multiplier(G, v, ell=None, embedding=None):
    """a(t) = prod_l (v(t)^(d_l ell) - 1) in F_q[t]."""
    if ell is None:
        ell = residue_extension_degree(G.u, v, embedding=embedding)
    fq = v.fq
    vt = Poly(fq, v.coeffs)  # v with theta renamed to t
    a = Poly.one(fq)
    for dl in G.block_dims:
        a = a * (vt ** (dl * ell) - Poly.one(fq))
    return a, ell


def continuation_multiplier(G, w, v, multiplier=None, prec=24, embedding=None):
    """The multiplier a and the moved point rho_a(w), with every coordinate
    in m_v.

    Returns (a, ell, moved, exact) where moved holds VAdicNumbers (or exact
    scalars when the move could be done exactly, flagged by exact=True).
    """
    for x in G.u:
        ordx = _ord_of_exact(x, v, embedding)
        if ordx < 0:
            raise DomainError("analytic continuation needs |u_i|_v <= 1")
    if embedding is None and G.field is not None:
        embedding = VPlaceEmbedding(G.field, v)
    if multiplier is None:
        a, ell = canonical_multiplier(G, v, embedding=embedding)
    else:
        a = multiplier
        ell = None
    if a.is_zero():
        raise DomainError("multiplier must be a nonzero polynomial in t")

    if a.degree <= _EXACT_MOVE_DEG_CAP:
        moved = G.apply_rho_a(a, w)
        if all(_exact_scalar_is_zero(c) for c in moved):
            return a, ell, moved, True
        emb = [embed_at_v(c, v, prec, embedding=embedding) for c in moved]
        _require_in_m_v(emb)
        return a, ell, moved, True

    ctx = VAdicScalars(v, prec, embedding=embedding)
    vec = [ctx.coerce(c) for c in w]
    moved = G.apply_rho_a(a, vec, ctx)
    _require_in_m_v(moved)
    return a, ell, moved, False


def _require_in_m_v(coords):
    for c in coords:
        if c.is_zero_to_precision():
            continue
        if c.ord() < 1:
            raise DomainError(
                "moved point escaped the open unit polydisc; "
                "is the multiplier valid for these coefficients?"
            )


def _exact_scalar_is_zero(x):
    return x.is_zero()


def _ord_of_exact(x, v, embedding):
    e = embed_at_v(x, v, max(8, v.degree + 4), embedding=embedding)
    if e.is_exact_zero():
        raise DomainError("zero coefficient")
    if e.is_zero_to_precision():
        raise PrecisionError("coefficient valuation not visible at probe precision")
    return e.ord()


class ExtendedStarValues:
    """All star-suffix values of one module at one place, from a single
    logarithm evaluation:

        Li*_{(s_r, ..., s_l)}(u_r, ..., u_l)_v
            = (-1)^(r-l) / a(theta) * (d_1 + ... + d_l)-th log coordinate.
    """

    def __init__(self, values, a, ell, exact):
        self.values = values  # dict: l -> VAdicNumber
        self.multiplier = a
        self.ell = ell
        self.exact_move = exact

    def __getitem__(self, l):
        return self.values[l]


def extended_cmspl_suite(s, u, v, prec, multiplier=None):
    """Extended star values for all suffixes of (s, u), each certified to
    absolute precision v^prec."""
    index = s if isinstance(s, CompositionIndex) else CompositionIndex(tuple(s))
    G = TModule(index, tuple(u))
    embedding = VPlaceEmbedding(G.field, v) if G.field is not None else None
    r = G.depth
    fq = G.fq

    a, ell, moved, exact = continuation_multiplier(
        G, G.special_point(), v, multiplier=multiplier, prec=prec + 8,
        embedding=embedding,
    )
    a_theta = a(Poly.gen(fq))
    if a_theta.is_zero():
        raise DomainError("multiplier evaluates to zero at theta")
    guard = a_theta.ord_at(v)

    if exact and all(_exact_scalar_is_zero(c) for c in moved):
        values = {l: VAdicNumber.exact_zero(v) for l in range(1, r + 1)}
        return ExtendedStarValues(values, a, ell, True)

    work = prec + guard
    if exact:
        point = moved
    else:
        # recompute the move at the guarded working precision
        ctx = VAdicScalars(v, work + 8, embedding=embedding)
        vec = [ctx.coerce(c) for c in G.special_point()]
        point = G.apply_rho_a(a, vec, ctx)
        _require_in_m_v(point)
    log = log_eval_v(G, point, v, work, embedding=embedding)
    inv_a = embed_k_v(RatFunc.from_poly(a_theta), v, work + guard + 2).inverse()
    values = {}
    for l in range(1, r + 1):
        coord = log[G.block_bottom(l)]
        sgn = sign_const(fq, r - l)
        val = coord * inv_a
        if sgn != 1:
            val = val * embed_k_v(RatFunc.const(fq, sgn), v, work + 2)
        values[l] = val._truncate_abs(prec)
    return ExtendedStarValues(values, a, ell, exact)


def extended_cmspl(star_s, star_u, v, prec, multiplier=None):
    """Li*_{star_s}(star_u)_v on the closed polydisc.

    The tuple is given in its own natural order; internally the module of
    the reversed tuple is used and the deepest suffix value returned."""
    rev_s = tuple(reversed(tuple(star_s)))
    rev_u = tuple(reversed(tuple(star_u)))
    suite = extended_cmspl_suite(rev_s, rev_u, v, prec, multiplier=multiplier)
    return suite[1]


@functools.lru_cache(maxsize=None)
def _neg_ord_bound(q, d1):
    """max over i of (i (2 d_1 - 1) - q^i)+, the worst valuation drop of a
    single log coordinate below its input."""
    best = 0
    for i in range(0, 40):
        cur = i * (2 * d1 - 1) - q**i
        best = max(best, cur)
        if q**i > 40 * (2 * d1 - 1):
            break
    return best


def extended_cmpl_family(s, u, v, prec):
    """All extended values Li_{(s_a, ..., s_b)}(u_a, ..., u_b)_v for
    subintervals [a, b], via the triangular identity; returns a dict keyed
    by (a, b), 1-based inclusive."""
    index = s if isinstance(s, CompositionIndex) else CompositionIndex(tuple(s))
    u = tuple(u)
    r = index.depth
    q = index.s and index.weight  # placeholder to keep lints quiet
    fq = None
    for x in u:
        if not isinstance(x, int):
            fq = x.fq
            break
    d1 = index.block_dims[0]
    guard = (r - 1) * (_neg_ord_bound(fq.q, d1) + 1) + 2
    work = prec + guard

    # star[(a, b)] = Li*_{(s_b, ..., s_a)}(u_b, ..., u_a)_v; the suite of the
    # prefix module (s_1..s_b) yields all (a, b) with the same right end b.
    star = {}
    for b in range(1, r + 1):
        suite = extended_cmspl_suite(index.prefix(b), u[:b], v, work)
        for a in range(1, b + 1):
            star[(a, b)] = suite[a]

    li = {}

    def value(a, b):
        if (a, b) in li:
            return li[(a, b)]
        depth = b - a + 1
        if depth == 1:
            out = star[(a, a)]
        else:
            out = star[(a, b)] * sign_const(fq, depth + 1)
            for l in range(2, depth + 1):
                # (-1)^(depth + l) Li_{[a, a+l-2]} * Li*_{(s_b..s_{a+l-1})}
                term = value(a, a + l - 2) * star[(a + l - 1, b)]
                out = out + term * sign_const(fq, depth + l)
        li[(a, b)] = out
        return out

    for a in range(1, r + 1):
        for b in range(a, r + 1):
            value(a, b)
    return {k: x._truncate_abs(prec) for k, x in li.items()}, {
        k: x._truncate_abs(prec) for k, x in star.items()
    }


def extended_cmpl(s, u, v, prec):
    """Li_s(u)_v on the closed polydisc (the full interval value)."""
    index = s if isinstance(s, CompositionIndex) else CompositionIndex(tuple(s))
    li, _ = extended_cmpl_family(index, u, v, prec)
    return li[(1, index.depth)]


def log_commute_check(G, x, a, v, prec):
    """Residual of log_G(rho_a(x)) - d(rho_a)(log_G(x)) for |x|_v < 1;
    identically zero, evaluated here to absolute precision prec."""
    embedding = VPlaceEmbedding(G.field, v) if G.field is not None else None
    growth = 2 * G.d1 - 1
    work = prec + growth * 6 + a.degree * 2 + 6
    ctx = VAdicScalars(v, work, embedding=embedding)
    vec = [ctx.coerce(c) for c in x]
    moved = G.apply_rho_a(a, vec, ctx)
    lhs = log_eval_v(G, moved, v, prec, embedding=embedding)
    logx = log_eval_v(G, vec, v, prec + a.degree + growth + 2, embedding=embedding)
    d_rho = G.d_rho_a(a, ctx)
    rhs = []
    for rr in range(G.d):
        acc = VAdicNumber.exact_zero(v)
        for cc in range(G.d):
            e = d_rho[rr][cc]
            if not e.is_zero_to_precision():
                acc = acc + e * logx[cc]
        rhs.append(acc)
    return [
        (l - r_)._truncate_abs(prec) for l, r_ in zip(lhs, rhs)
    ]
