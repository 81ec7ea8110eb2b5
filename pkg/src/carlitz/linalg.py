"""Dense linear algebra over F_q: row reduction, kernels, linear solves.

Matrices are lists of row lists of packed F_q ints.  Desk-scale sizes only;
everything is straightforward Gaussian elimination.
"""


def rref(fq, rows, ncols):
    """Reduced row echelon form.  Returns (new_rows, pivot_columns)."""
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = fq.inv(rows[r][c])
        rows[r] = [fq.mul(x, inv) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [fq.sub(x, fq.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def nullspace(fq, rows, ncols):
    """Basis of the right kernel of the matrix, as coordinate vectors."""
    red, pivots = rref(fq, rows, ncols)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        vec = [0] * ncols
        vec[f] = 1
        for r, c in enumerate(pivots):
            # row r reads: x_c + sum over free columns = 0
            vec[c] = fq.neg(red[r][f])
        basis.append(vec)
    return basis


def solve(fq, rows, rhs, ncols):
    """One solution x of rows * x = rhs, or None if inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(fq, aug, ncols)
    for row in red:
        if any(row[:ncols]):
            continue
        if row[ncols]:
            return None
    x = [0] * ncols
    for r, c in enumerate(pivots):
        x[c] = red[r][ncols]
    return x
