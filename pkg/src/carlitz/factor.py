"""Factorization helpers for A = F_q[theta] at desk scale.

Irreducibility uses the classical x^(q^d) criterion, which is fast at any
size we care about.  Full factorization is trial division by enumerated
monic irreducibles of increasing degree, with an explicit work cap: the
denominators this package ever needs to split are small.
"""

import functools

from .errors import CarlitzError
from .poly import Poly

_ENUM_CAP = 200_000  # max monic polynomials enumerated per degree


def is_irreducible(f):
    """Irreducibility of f in F_q[theta] (constants are not irreducible)."""
    n = f.degree
    if n <= 0:
        return False
    if n == 1:
        return True
    fq = f.fq
    x = Poly.gen(fq)
    # x^(q^n) == x mod f, and gcd(x^(q^(n/r)) - x, f) = 1 for primes r | n
    xq = x
    powers = {}
    for k in range(1, n + 1):
        xq = xq.powmod(fq.q, f)
        powers[k] = xq
    if not ((powers[n] - x) % f).is_zero():
        return False
    for r in range(2, n + 1):
        if n % r == 0 and all(r % m for m in range(2, r)):
            g = f.gcd((powers[n // r] - x) % f)
            if g.degree > 0:
                return False
    return True


def monic_polys(fq, degree):
    """Iterate all monic polynomials of the given degree."""
    q = fq.q
    if q**degree > _ENUM_CAP:
        raise CarlitzError(
            f"enumeration of degree-{degree} polynomials over F_{q} exceeds desk scale"
        )
    for packed in range(q**degree):
        coeffs = []
        n = packed
        for _ in range(degree):
            n, r = divmod(n, q)
            coeffs.append(r)
        yield Poly(fq, tuple(coeffs) + (1,), trusted=True)


@functools.lru_cache(maxsize=None)
def _irreducibles(fq, degree):
    return tuple(f for f in monic_polys(fq, degree) if is_irreducible(f))


def irreducibles(fq, degree):
    """All monic irreducibles of the given degree (cached)."""
    return _irreducibles(fq, degree)


def factor(f):
    """Factor f into monic irreducibles: returns (unit, {irreducible: exp}).

    unit is the leading coefficient as an F_q int.
    """
    if f.is_zero():
        raise CarlitzError("cannot factor 0")
    fq = f.fq
    unit = f.leading()
    g = f.monic()
    out = {}
    d = 1
    while g.degree > 0:
        if is_irreducible(g):
            out[g] = out.get(g, 0) + 1
            break
        for w in irreducibles(fq, d):
            if g.degree == 0:
                break
            if w.divides(g):
                e = 0
                while w.divides(g):
                    g = g.divexact(w)
                    e += 1
                out[w] = e
        d += 1
    return unit, out


def divisors(f):
    """All monic divisors of f (desk scale: raises if there are > 4096)."""
    _, fac = factor(f)
    out = [Poly.one(f.fq)]
    for w, e in fac.items():
        powers = [w**k for k in range(e + 1)]
        out = [d * pw for d in out for pw in powers]
        if len(out) > 4096:
            raise CarlitzError("too many divisors at desk scale")
    return out
