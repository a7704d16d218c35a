# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled F_p matrix kernels (dense, word-sized entries).

Hot loops of the finite-field counting pipeline: matrix product, reduced
row echelon form, rank, and right-kernel bases.  Mirrors
``pyfallback`` exactly; both are exercised by the test suite.
"""

from libc.stdlib cimport malloc, free


cdef long long _inv_mod(long long a, long long p):
    # extended Euclid; a nonzero mod p
    cdef long long t = 0, newt = 1, r = p, newr = a % p, q, tmp
    while newr != 0:
        q = r / newr
        tmp = t - q * newt; t = newt; newt = tmp
        tmp = r - q * newr; r = newr; newr = tmp
    if t < 0:
        t += p
    return t


def matmul(a, b, long long p):
    cdef Py_ssize_t n = len(a)
    if n == 0:
        return []
    cdef Py_ssize_t k = len(a[0])
    if k != len(b):
        raise ValueError("shape mismatch")
    cdef Py_ssize_t m = len(b[0]) if k else 0
    if k and b:
        m = len(b[0])
    cdef long long *bf = NULL
    cdef long long *rowbuf = NULL
    cdef Py_ssize_t i, j, t
    cdef long long ait
    out = []
    if m == 0 or k == 0:
        for i in range(n):
            out.append([0] * m)
        return out
    bf = <long long *> malloc(k * m * sizeof(long long))
    rowbuf = <long long *> malloc(m * sizeof(long long))
    if bf is NULL or rowbuf is NULL:
        if bf is not NULL: free(bf)
        if rowbuf is not NULL: free(rowbuf)
        raise MemoryError()
    try:
        for t in range(k):
            brow = b[t]
            for j in range(m):
                bf[t * m + j] = brow[j] % p
        for i in range(n):
            arow = a[i]
            for j in range(m):
                rowbuf[j] = 0
            for t in range(k):
                ait = arow[t] % p
                if ait:
                    for j in range(m):
                        rowbuf[j] = (rowbuf[j] + ait * bf[t * m + j]) % p
            out.append([rowbuf[j] for j in range(m)])
    finally:
        free(bf)
        free(rowbuf)
    return out


cdef _rref_flat(long long *buf, Py_ssize_t nrows, Py_ssize_t ncols, long long p, list pivots):
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef long long inv, f, tmp
    for c in range(ncols):
        piv = -1
        for i in range(r, nrows):
            if buf[i * ncols + c] % p:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(ncols):
                tmp = buf[r * ncols + j]
                buf[r * ncols + j] = buf[piv * ncols + j]
                buf[piv * ncols + j] = tmp
        inv = _inv_mod(buf[r * ncols + c] % p, p)
        for j in range(ncols):
            buf[r * ncols + j] = (buf[r * ncols + j] % p) * inv % p
        for i in range(nrows):
            if i != r:
                f = buf[i * ncols + c] % p
                if f:
                    for j in range(ncols):
                        buf[i * ncols + j] = (buf[i * ncols + j] - f * buf[r * ncols + j]) % p
                        if buf[i * ncols + j] < 0:
                            buf[i * ncols + j] += p
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return r


def rref(mat, long long p):
    cdef Py_ssize_t nrows = len(mat)
    cdef Py_ssize_t ncols = len(mat[0]) if nrows else 0
    cdef Py_ssize_t i, j, r
    if nrows == 0 or ncols == 0:
        return [], []
    cdef long long *buf = <long long *> malloc(nrows * ncols * sizeof(long long))
    if buf is NULL:
        raise MemoryError()
    pivots = []
    try:
        for i in range(nrows):
            row = mat[i]
            for j in range(ncols):
                buf[i * ncols + j] = row[j] % p
        r = _rref_flat(buf, nrows, ncols, p, pivots)
        rows = [[buf[i * ncols + j] for j in range(ncols)] for i in range(r)]
    finally:
        free(buf)
    return rows, pivots


def rank(mat, long long p):
    return len(rref(mat, p)[0])


def kernel(mat, Py_ssize_t ncols, long long p):
    red, pivots = rref(mat, p)
    pivset = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivset]
    basis = []
    cdef Py_ssize_t i
    for fc in free_cols:
        vec = [0] * ncols
        vec[fc] = 1
        for i in range(len(pivots)):
            vec[pivots[i]] = (-red[i][fc]) % p
        basis.append(vec)
    if not basis:
        return []
    return rref(basis, p)[0]
