"""Pure-Python F_p matrix kernels.

Same contracts as the compiled extension in ``_corekern``; used when the
extension is unavailable or when EXTSYM_PURE=1.

Matrices are lists of row lists of ints already reduced mod p.
"""

from __future__ import annotations


def matmul(a, b, p):
    n = len(a)
    if n == 0:
        return []
    k = len(a[0])
    if k != len(b):
        raise ValueError("shape mismatch")
    m = len(b[0]) if b else 0
    out = []
    for i in range(n):
        ai = a[i]
        row = [0] * m
        for t in range(k):
            ait = ai[t]
            if ait:
                bt = b[t]
                for j in range(m):
                    row[j] += ait * bt[j]
        out.append([v % p for v in row])
    return out


def rref(mat, p):
    """Reduced row echelon form; returns (rows, pivot column list).

    Zero rows are dropped, so the result is a canonical basis of the row
    space.
    """
    rows = [list(r) for r in mat]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = -1
        for i in range(r, nrows):
            if rows[i][c] % p:
                piv = i
                break
        if piv < 0:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c] % p, p - 2, p)
        rows[r] = [(v * inv) % p for v in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] % p:
                f = rows[i][c] % p
                ri = rows[i]
                rr = rows[r]
                rows[i] = [(ri[j] - f * rr[j]) % p for j in range(ncols)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows[:r], pivots


def rank(mat, p):
    return len(rref(mat, p)[0])


def kernel(mat, ncols, p):
    """Canonical (RREF) basis of the right kernel of ``mat``."""
    red, pivots = rref(mat, p)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for fc in free:
        vec = [0] * ncols
        vec[fc] = 1
        for i, pc in enumerate(pivots):
            vec[pc] = (-red[i][fc]) % p
        basis.append(vec)
    if not basis:
        return []
    return rref(basis, p)[0]
