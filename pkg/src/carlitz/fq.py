"""The finite field F_q, q = p^e, with an explicit irreducible modulus.

Elements are plain ints in [0, q).  For e = 1 an element is its residue
mod p.  For e > 1 the int packs the coordinate vector over F_p in base p
(little-endian), and arithmetic reduces modulo the configured degree-e
irreducible polynomial over F_p.  Plain ints keep polynomial coefficient
vectors light and hashable.

The q-power Frobenius fixes F_q pointwise, so twisting a scalar is the
identity; that fact is used throughout the higher layers.
"""

from .errors import CarlitzError

_Q_CAP = 1 << 20
_TABLE_CAP = 512  # build full mul/inv tables only for small q


def _is_prime(n):
    if n < 2:
        return False
    for d in range(2, int(n**0.5) + 1):
        if n % d == 0:
            return False
    return True


class Fq:
    """Field context for F_q = F_p[z]/(modulus).

    `modulus` is a little-endian tuple of ints over F_p of length e + 1 with
    leading coefficient 1.  For e = 1 it defaults to (0, 1), i.e. F_p itself.
    """

    def __init__(self, p, e=1, modulus=None):
        if not _is_prime(p):
            raise CarlitzError(f"p = {p} is not prime")
        if e < 1:
            raise CarlitzError("extension degree must be >= 1")
        q = p**e
        if q > _Q_CAP:
            raise CarlitzError(f"q = {q} exceeds the desk-scale cap {_Q_CAP}")
        self.p = p
        self.e = e
        self.q = q
        if modulus is None:
            modulus = (0, 1) if e == 1 else self._find_modulus(p, e)
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise CarlitzError("modulus must be monic of degree e")
        if e > 1 and not self._irreducible(modulus, p):
            raise CarlitzError("modulus is reducible over F_p")
        self.modulus = modulus
        self._mul_table = None
        self._inv_table = None
        if 2 < q <= _TABLE_CAP and e > 1:
            self._build_tables()

    # -- construction helpers ------------------------------------------------

    @staticmethod
    def _irreducible(mod, p):
        # standard test: x^(p^e) == x mod m, and gcd(x^(p^(e/r)) - x, m) = 1
        # for every prime r | e
        from . import _kernels

        e = len(mod) - 1
        m = list(mod)

        def powx(k):
            # x^(p^k) mod m by k rounds of p-th powering
            r = [0, 1]
            for _ in range(k):
                acc, base, n = [1], r, p
                while n:
                    if n & 1:
                        acc = _kernels.divmod_(_kernels.mul(acc, base, p), m, p)[1]
                    base = _kernels.divmod_(_kernels.mul(base, base, p), m, p)[1]
                    n >>= 1
                r = acc
            return r

        def minus_x(f):
            f = list(f) + [0] * (2 - len(f))
            f[1] = (f[1] - 1) % p
            while f and f[-1] == 0:
                f.pop()
            return f

        def gcd(a, b):
            while b:
                a, b = b, _kernels.divmod_(a, b, p)[1]
            return a

        if minus_x(powx(e)):
            return False
        primes = {r for r in range(2, e + 1) if e % r == 0 and _is_prime(r)}
        for r in primes:
            g = gcd(m, minus_x(powx(e // r)))
            if len(g) != 1:
                return False
        return True

    @classmethod
    def _find_modulus(cls, p, e):
        # lexicographically-first monic irreducible of degree e over F_p
        for packed in range(p**e):
            coeffs = []
            n = packed
            for _ in range(e):
                n, r = divmod(n, p)
                coeffs.append(r)
            mod = tuple(coeffs) + (1,)
            if cls._irreducible(mod, p):
                return mod
        raise CarlitzError("no irreducible modulus found")  # pragma: no cover

    def _build_tables(self):
        q = self.q
        self._mul_table = [[self._mul_slow(a, b) for b in range(q)] for a in range(q)]
        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if self._mul_table[a][b] == 1:
                    inv[a] = b
                    break
        self._inv_table = inv

    # -- packing -------------------------------------------------------------

    def unpack(self, a):
        """Coordinate vector over F_p of length e (little-endian)."""
        out = []
        for _ in range(self.e):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def pack(self, coords):
        a = 0
        for c in reversed(list(coords)):
            a = a * self.p + (c % self.p)
        return a

    # -- arithmetic ----------------------------------------------------------

    def add(self, a, b):
        if self.e == 1:
            return (a + b) % self.p
        return self.pack(x + y for x, y in zip(self.unpack(a), self.unpack(b)))

    def sub(self, a, b):
        if self.e == 1:
            return (a - b) % self.p
        return self.pack(x - y for x, y in zip(self.unpack(a), self.unpack(b)))

    def neg(self, a):
        if self.e == 1:
            return (-a) % self.p
        return self.pack(-x for x in self.unpack(a))

    def _mul_slow(self, a, b):
        from . import _kernels

        p = self.p
        ca = [c for c in self.unpack(a)]
        cb = [c for c in self.unpack(b)]
        while ca and ca[-1] == 0:
            ca.pop()
        while cb and cb[-1] == 0:
            cb.pop()
        prod = _kernels.mul(ca, cb, p)
        rem = _kernels.divmod_(prod, list(self.modulus), p)[1]
        rem += [0] * (self.e - len(rem))
        return self.pack(rem)

    def mul(self, a, b):
        if self.e == 1:
            return (a * b) % self.p
        if self._mul_table is not None:
            return self._mul_table[a][b]
        return self._mul_slow(a, b)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_q")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        if self._inv_table is not None:
            return self._inv_table[a]
        return self.pow(a, self.q - 2)

    def pow(self, a, n):
        if n < 0:
            return self.pow(self.inv(a), -n)
        r = 1
        while n:
            if n & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            n >>= 1
        return r

    def elements(self):
        return range(self.q)

    # JSON form of one element: coordinate vector over F_p, length e.
    def elem_to_json(self, a):
        return self.unpack(a)

    def elem_from_json(self, data):
        if len(data) != self.e:
            raise CarlitzError("bad F_q element encoding")
        return self.pack(data)

    def __eq__(self, other):
        return (
            isinstance(other, Fq)
            and self.p == other.p
            and self.e == other.e
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    def __repr__(self):
        if self.e == 1:
            return f"Fq({self.p})"
        return f"Fq({self.p}^{self.e})"
