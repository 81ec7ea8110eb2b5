# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled polynomial kernels over F_p.  Same contract as `fallback`."""

from cpython.list cimport PyList_New, PyList_SET_ITEM
from libc.stdlib cimport free, malloc


cdef long long* _to_c(object a, Py_ssize_t n) except NULL:
    cdef long long* buf = <long long*> malloc(n * sizeof(long long) if n else sizeof(long long))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        buf[i] = a[i]
    return buf


cdef object _from_c(long long* buf, Py_ssize_t n):
    # strip trailing zeros
    while n > 0 and buf[n - 1] == 0:
        n -= 1
    out = [0] * n
    cdef Py_ssize_t i
    for i in range(n):
        out[i] = buf[i]
    return out


def add(a, b, long long p):
    """Coefficientwise sum modulo p."""
    cdef Py_ssize_t na = len(a), nb = len(b), i
    if na < nb:
        a, b = b, a
        na, nb = nb, na
    cdef long long* ca = _to_c(a, na)
    cdef long long x
    try:
        for i in range(nb):
            x = b[i]
            if x:
                ca[i] = (ca[i] + x) % p
        return _from_c(ca, na)
    finally:
        free(ca)


def sub(a, b, long long p):
    """Coefficientwise difference a - b modulo p."""
    cdef Py_ssize_t na = len(a), nb = len(b), n = na if na > nb else nb, i
    cdef long long* co = <long long*> malloc(n * sizeof(long long) if n else sizeof(long long))
    if co == NULL:
        raise MemoryError()
    cdef long long x
    try:
        for i in range(na):
            co[i] = a[i]
        for i in range(na, n):
            co[i] = 0
        for i in range(nb):
            x = b[i]
            if x:
                co[i] = (co[i] - x) % p
                if co[i] < 0:
                    co[i] += p
        return _from_c(co, n)
    finally:
        free(co)


def neg(a, long long p):
    """Coefficientwise negation modulo p."""
    cdef Py_ssize_t n = len(a), i
    out = [0] * n
    cdef long long x
    for i in range(n):
        x = a[i]
        out[i] = (p - x) % p if x else 0
    return out


def mul(a, b, long long p):
    """Product of coefficient vectors a, b modulo p."""
    cdef Py_ssize_t na = len(a), nb = len(b)
    if na == 0 or nb == 0:
        return []
    cdef long long* ca = _to_c(a, na)
    cdef long long* cb
    cdef long long* co
    cdef Py_ssize_t i, j, nnza = 0, nnzb = 0
    try:
        cb = _to_c(b, nb)
    except:  # noqa: E722 - release ca on failure
        free(ca)
        raise
    for i in range(na):
        if ca[i]:
            nnza += 1
    for j in range(nb):
        if cb[j]:
            nnzb += 1
    # outer loop over the sparser operand
    cdef long long* x = ca
    cdef long long* y = cb
    cdef Py_ssize_t nx = na, ny = nb
    if nnza > nnzb:
        x, y = cb, ca
        nx, ny = nb, na
    cdef Py_ssize_t no = na + nb - 1
    co = <long long*> malloc(no * sizeof(long long))
    if co == NULL:
        free(ca)
        free(cb)
        raise MemoryError()
    for i in range(no):
        co[i] = 0
    cdef long long xi
    for i in range(nx):
        xi = x[i]
        if xi:
            for j in range(ny):
                if y[j]:
                    co[i + j] = (co[i + j] + xi * y[j]) % p
    out = _from_c(co, no)
    free(ca)
    free(cb)
    free(co)
    return out


def divmod_(a, b, long long p):
    """Quotient and remainder of a by b modulo p; b must be nonzero."""
    cdef Py_ssize_t na = len(a), nb = len(b)
    if nb == 0:
        raise ZeroDivisionError("polynomial division by zero")
    if na < nb:
        return [], list(a)
    cdef long long* r = _to_c(a, na)
    cdef long long* cb
    try:
        cb = _to_c(b, nb)
    except:  # noqa: E722
        free(r)
        raise
    cdef Py_ssize_t db = nb - 1, i, j, k
    cdef long long inv_lead = 1, base = cb[db] % p, e = p - 2
    while e:
        if e & 1:
            inv_lead = (inv_lead * base) % p
        base = (base * base) % p
        e >>= 1
    cdef long long* q = <long long*> malloc((na - db) * sizeof(long long))
    if q == NULL:
        free(r)
        free(cb)
        raise MemoryError()
    for i in range(na - db):
        q[i] = 0
    cdef long long c
    for i in range(na - 1, db - 1, -1):
        c = r[i]
        if c:
            c = (c * inv_lead) % p
            q[i - db] = c
            r[i] = 0
            for j in range(db):
                if cb[j]:
                    k = i - db + j
                    r[k] = (r[k] - c * cb[j]) % p
                    if r[k] < 0:
                        r[k] += p
    qq = _from_c(q, na - db)
    rr = _from_c(r, db)
    free(r)
    free(cb)
    free(q)
    return qq, rr
