"""Pure-Python polynomial kernels over F_p.

Schoolbook routines that skip zero coefficients, so sparse operands (twisted
polynomials, binomial powers of theta^(q^j) - theta) cost O(deg * nnz) rather
than O(deg^2).  Matches the compiled backend bit for bit.
"""


def _trim(c):
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    del c[n:]
    return c


def add(a, b, p):
    """Coefficientwise sum modulo p."""
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        if x:
            out[i] = (out[i] + x) % p
    return _trim(out)


def sub(a, b, p):
    """Coefficientwise difference a - b modulo p."""
    out = list(a) + [0] * (len(b) - len(a))
    for i, x in enumerate(b):
        if x:
            out[i] = (out[i] - x) % p
    return _trim(out)


def neg(a, p):
    """Coefficientwise negation modulo p."""
    return [(-x) % p if x else 0 for x in a]


def mul(a, b, p):
    """Product of coefficient vectors a, b modulo p."""
    if not a or not b:
        return []
    # iterate over the operand with fewer nonzero terms
    if sum(1 for x in a if x) > sum(1 for x in b if x):
        a, b = b, a
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def divmod_(a, b, p):
    """Quotient and remainder of a by b modulo p; b must be nonzero."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], list(a)
    r = list(a)
    db = len(b) - 1
    inv_lead = pow(b[db], p - 2, p)
    terms = [(j, bj) for j, bj in enumerate(b) if bj and j != db]
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = r[i]
        if c:
            c = (c * inv_lead) % p
            q[i - db] = c
            r[i] = 0
            for j, bj in terms:
                k = i - db + j
                r[k] = (r[k] - c * bj) % p
    return _trim(q), _trim(r)
