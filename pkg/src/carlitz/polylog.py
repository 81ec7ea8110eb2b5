"""Carlitz multiple polylogarithms and their star variants, by truncated
series summation at both places.

The plain series sums over strictly decreasing Frobenius indices
i_1 > ... > i_r >= 0, the star series over weakly decreasing ones; each term
is

    z_1^(q^i_1) ... z_r^(q^i_r) / ( L_{i_1}^{s_1} ... L_{i_r}^{s_r} ).

Truncation indices come from exact valuation bounds, so every emitted digit
is certified:

  * at v: ord of the (i_1..i_r) term is at least
        q^(i_1) ord(z_1) - wt(s) floor(i_1 / deg v),
    which grows without bound once ord(z_1) >= 1 (that is |z_1|_v < 1);
  * at infinity: the term degree difference in i_1 equals
        q^(i_1) (deg(z_1)(q-1) - s_1 q) / (q-1) < 0
    under the convergence hypothesis deg z_i < s_i q / (q-1), so the term
    degree is strictly decreasing in every index and the scan stops at the
    first index below target.
"""

import functools
from dataclasses import dataclass, field

from .errors import CarlitzError, DomainError, PrecisionError
from .ext import ExtElem
from .fractions import l_poly
from .laurent import InfLaurent
from .poly import Poly
from .ratfunc import RatFunc
from .vadic import VAdicNumber, VPlaceEmbedding, embed_k_v

_I_CAP = 64


@dataclass(frozen=True)
class CompositionIndex:
    """The tuple s = (s_1, ..., s_r) with its derived block data."""

    s: tuple

    def __post_init__(self):
        if not self.s or any(x < 1 for x in self.s):
            raise CarlitzError("composition entries must be positive integers")

    @classmethod
    def of(cls, *s):
        return cls(tuple(s))

    @property
    def depth(self):
        return len(self.s)

    @property
    def weight(self):
        return sum(self.s)

    @property
    def block_dims(self):
        """d_l = s_l + ... + s_r for l = 1..r (strictly decreasing)."""
        out = []
        acc = 0
        for x in reversed(self.s):
            acc += x
            out.append(acc)
        return tuple(reversed(out))

    @property
    def dimension(self):
        return sum(self.block_dims)

    def suffix(self, l):
        """(s_l, ..., s_r), 1-based l."""
        return CompositionIndex(self.s[l - 1 :])

    def prefix(self, m):
        return CompositionIndex(self.s[:m])

    def __repr__(self):
        return f"({','.join(map(str, self.s))})"


def l_sequence(fq, imax):
    """L_0, ..., L_imax with L_0 = 1, L_{i+1} = (theta - theta^(q^(i+1))) L_i."""
    return [l_poly(fq, i) for i in range(imax + 1)]


def deg_l(q, i):
    """deg L_i = q + q^2 + ... + q^i."""
    return (q**(i + 1) - q) // (q - 1)


# -- v-adic evaluation ---------------------------------------------------------


@functools.lru_cache(maxsize=None)
def _l_embed(v, i, prec):
    return embed_k_v(RatFunc.from_poly(l_poly(v.fq, i)), v, prec)


def _prepare_embeddings(u, v):
    """One VPlaceEmbedding per extension field appearing among the u_i."""
    emb = {}
    for x in u:
        if isinstance(x, ExtElem) and x.in_k() is None:
            if x.field not in emb:
                emb[x.field] = VPlaceEmbedding(x.field, v)
    return emb


def _embed_arg(x, v, prec, emb):
    if isinstance(x, ExtElem):
        k_val = x.in_k()
        if k_val is not None:
            return embed_k_v(k_val, v, prec)
        return emb[x.field].embed(x, prec)
    if isinstance(x, (Poly, int)):
        x = RatFunc.from_poly(x) if isinstance(x, Poly) else RatFunc.const(v.fq, x)
    return embed_k_v(x, v, prec)


def _is_exact_zero_arg(x):
    if isinstance(x, ExtElem):
        return x.is_zero()
    if isinstance(x, Poly):
        return x.is_zero()
    if isinstance(x, int):
        return x == 0
    return x.is_zero()


def _eval_v(index, u, v, prec, star):
    """Common v-adic summation; prec is the guaranteed absolute precision."""
    s = index.s
    r = index.depth
    if len(u) != r:
        raise CarlitzError("argument tuple length does not match the index depth")
    if any(_is_exact_zero_arg(x) for x in u):
        return VAdicNumber.exact_zero(v)
    wt = index.weight
    q = v.fq.q
    D = v.degree
    emb = _prepare_embeddings(u, v)
    probe = [_embed_arg(x, v, max(prec, 8) + wt + 4, emb) for x in u]
    ords = []
    for x in probe:
        if x.is_zero_to_precision():
            raise PrecisionError("argument indistinguishable from 0 at working precision")
        ords.append(x.ord())
    if ords[0] < 1:
        raise DomainError("first argument must satisfy |z_1|_v < 1")
    if any(o < 0 for o in ords[1:]):
        raise DomainError("arguments must satisfy |z_i|_v <= 1")

    # outer truncation: ord(term) >= q^(i1) ord(z1) - wt floor(i1/D) >= prec.
    # Once q^i (q-1) ord(z1) > wt the bound increases at every later step,
    # so requiring both conditions makes the tail estimate sound.
    def outer_bound(i1):
        return q**i1 * ords[0] - wt * (i1 // D)

    i1_max = None
    for i in range(_I_CAP):
        if outer_bound(i) >= prec and q**i * (q - 1) * ords[0] - wt > 0:
            i1_max = i
            break
    if i1_max is None:
        raise PrecisionError("truncation index cap reached")
    assert all(outer_bound(i1_max + k) >= prec for k in range(1, 4))

    slack = wt * (i1_max // D + 1) + 2
    work = prec + slack
    xs = [_embed_arg(x, v, work, emb) for x in u]

    terms = []

    def descend(level, prev, acc):
        # acc = product of x_j^(q^i_j) / L_{i_j}^{s_j} for j < level
        if level == r:
            terms.append(acc)
            return
        hi = prev if star else prev - 1
        if level == 0:
            hi = i1_max
        for i in range(hi, -1, -1):
            t = xs[level].powq(i, prec_cap=work)
            t = t * _l_embed(v, i, work) ** (-s[level])
            descend(level + 1, i, acc * t if acc is not None else t)

    descend(0, 0, None)
    total = VAdicNumber.exact_zero(v)
    for t in terms:
        total = total + t
    return total._truncate_abs(prec)


def cmpl_eval_v(index, u, v, prec):
    """Li_s(u)_v by direct summation; |u_1|_v < 1, |u_i|_v <= 1 required.

    `prec` is the guaranteed absolute v-adic precision of the result."""
    return _eval_v(index, u, v, prec, star=False)


def cmspl_eval_v(index, u, v, prec):
    """The star variant: weakly decreasing indices."""
    return _eval_v(index, u, v, prec, star=True)


# -- evaluation at infinity ------------------------------------------------------


@functools.lru_cache(maxsize=None)
def _l_power(fq, i, e):
    return l_poly(fq, i) ** e


def _coerce_inf_arg(x, fq):
    if isinstance(x, ExtElem):
        k_val = x.in_k()
        if k_val is None:
            raise DomainError(
                "extension arguments are not supported at the infinite place"
            )
        return k_val
    if isinstance(x, Poly):
        return RatFunc.from_poly(x)
    if isinstance(x, int):
        return RatFunc.const(fq, x)
    return x


def _eval_inf(index, u, prec, star):
    s = index.s
    r = index.depth
    if len(u) != r:
        raise CarlitzError("argument tuple length does not match the index depth")
    fq = None
    for x in u:
        if not isinstance(x, int):
            fq = x.fq
            break
    if fq is None:
        raise CarlitzError("at least one argument must be a field element")
    u = [_coerce_inf_arg(x, fq) for x in u]
    if any(x.is_zero() for x in u):
        return InfLaurent.exact_zero(fq)
    q = fq.q
    degs = [x.inf_degree for x in u]
    for du, si in zip(degs, s):
        if (q - 1) * du >= si * q:
            raise DomainError(
                "arguments must satisfy |u_i| < |theta|^(s_i q/(q-1)) at infinity"
            )

    def level_term_deg(j, i):
        return q**i * degs[j] - s[j] * deg_l(q, i)

    # The level-j contribution drops by q^i (s_j q - (q-1) deg u_j) / (q-1)
    # > 0 from i to i+1, so it is strictly decreasing and its maximum is the
    # i = 0 value deg u_j.  That justifies both the per-level tail bounds and
    # the ascending scan with early break below.
    for j in range(r):
        assert level_term_deg(j, 1) < level_term_deg(j, 0)
    tails = [sum(degs[j:]) for j in range(r)] + [0]

    total = InfLaurent.zero_to(fq, prec)

    def descend(level, prev, num, den, partial_deg):
        nonlocal total
        if level == r:
            total = total + InfLaurent.from_ratfunc_pair(num, den, prec)
            return
        if level == 0:
            hi = _I_CAP
        else:
            hi = prev if star else prev - 1
        for i in range(0, hi + 1):
            contrib = level_term_deg(level, i)
            if partial_deg + contrib + tails[level + 1] < prec:
                break  # larger i only shrink the contribution
            tw = u[level].twist(i)
            descend(
                level + 1,
                i,
                num * tw.num,
                den * tw.den * _l_power(fq, i, s[level]),
                partial_deg + contrib,
            )
        else:
            if level == 0:
                raise PrecisionError("truncation index cap reached")

    descend(0, 0, Poly.one(fq), Poly.one(fq), 0)
    return total.truncate(prec)


def cmpl_eval_inf(index, u, prec):
    """Li_s(u) as a Laurent series at infinity, to theta^prec."""
    return _eval_inf(index, u, prec, star=False)


def cmspl_eval_inf(index, u, prec):
    """The star variant at infinity."""
    return _eval_inf(index, u, prec, star=True)


# -- the star / non-star identity ----------------------------------------------


def sign_const(fq, n):
    """(-1)^n as a packed F_q element."""
    return 1 if n % 2 == 0 else fq.neg(1)


def star_nonstar_residue(star_values, nonstar_values, r, fq):
    """Residue of the shuffle-type identity relating the two families.

    star_values[l] must hold Li*_{(s_r,...,s_l)}(u_r,...,u_l) and
    nonstar_values[l] must hold Li_{(s_1,...,s_l)}(u_1,...,u_l), both for
    l = 1..r at a common precision.  The returned residue is

        Li*_{(s_r..s_1)} - sum_{l=2}^r (-1)^l Li_{(s_1..s_{l-1})} Li*_{(s_r..s_l)}
                         - (-1)^(r+1) Li_{(s_1..s_r)},

    which is identically zero as a power-series identity.
    """
    resid = star_values[1]
    for l in range(2, r + 1):
        term = nonstar_values[l - 1] * star_values[l]
        resid = resid - term * sign_const(fq, l)
    resid = resid - nonstar_values[r] * sign_const(fq, r + 1)
    return resid


def star_identity_residue_v(index, u, v, prec):
    """Evaluate both families in the open polydisc and combine."""
    r = index.depth
    star_values = {}
    nonstar_values = {}
    for l in range(1, r + 1):
        rev_s = CompositionIndex(tuple(reversed(index.s[l - 1 :])))
        rev_u = tuple(reversed(u[l - 1 :]))
        star_values[l] = cmspl_eval_v(rev_s, rev_u, v, prec)
        nonstar_values[l] = cmpl_eval_v(index.prefix(l), u[:l], v, prec)
    return star_nonstar_residue(star_values, nonstar_values, r, v.fq)


def star_identity_residue_inf(index, u, prec):
    r = index.depth
    fq = u[0].fq
    star_values = {}
    nonstar_values = {}
    for l in range(1, r + 1):
        rev_s = CompositionIndex(tuple(reversed(index.s[l - 1 :])))
        rev_u = tuple(reversed(u[l - 1 :]))
        star_values[l] = cmspl_eval_inf(rev_s, rev_u, prec)
        nonstar_values[l] = cmpl_eval_inf(index.prefix(l), u[:l], prec)
    return star_nonstar_residue(star_values, nonstar_values, r, fq)
