# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the mod-p inner loops (see dormant._corepure for the
reference implementation and API docs)."""

from libc.stdlib cimport free, malloc

BACKEND = "fast"


def poly_mul_mod(a, b, int p, int trunc=0):
    cdef int na = len(a), nb = len(b)
    if na == 0 or nb == 0:
        return []
    cdef int n = na + nb - 1
    if trunc and trunc < n:
        n = trunc
    cdef long long *ca = <long long *> malloc(na * sizeof(long long))
    cdef long long *cb = <long long *> malloc(nb * sizeof(long long))
    cdef long long *co = <long long *> malloc(n * sizeof(long long))
    if ca == NULL or cb == NULL or co == NULL:
        raise MemoryError
    cdef int i, j, top
    cdef long long ai
    try:
        for i in range(na):
            ca[i] = a[i]
        for i in range(nb):
            cb[i] = b[i]
        for i in range(n):
            co[i] = 0
        for i in range(na):
            if i >= n:
                break
            ai = ca[i]
            if ai == 0:
                continue
            top = nb if nb < n - i else n - i
            for j in range(top):
                co[i + j] = (co[i + j] + ai * cb[j]) % p
        return [co[i] for i in range(n)]
    finally:
        free(ca)
        free(cb)
        free(co)


def mat_mul_mod(a, b, int p):
    cdef int r = len(a), k = len(b)
    cdef int c = len(b[0]) if k else 0
    cdef int i, j, s
    cdef long long ais
    cdef long long *flat_b = <long long *> malloc(k * c * sizeof(long long))
    cdef long long *row = <long long *> malloc(c * sizeof(long long))
    if flat_b == NULL or row == NULL:
        raise MemoryError
    out = []
    try:
        for i in range(k):
            bi = b[i]
            for j in range(c):
                flat_b[i * c + j] = bi[j]
        for i in range(r):
            ai = a[i]
            for j in range(c):
                row[j] = 0
            for s in range(k):
                ais = ai[s]
                if ais == 0:
                    continue
                for j in range(c):
                    row[j] = (row[j] + ais * flat_b[s * c + j]) % p
            out.append([row[j] for j in range(c)])
        return out
    finally:
        free(flat_b)
        free(row)


cdef long long inv_mod(long long x, long long p):
    cdef long long r = 1, b = x % p, e = p - 2
    while e:
        if e & 1:
            r = (r * b) % p
        b = (b * b) % p
        e >>= 1
    return r


def rref_mod(rows, int p):
    cdef int nr = len(rows)
    cdef int nc = len(rows[0]) if nr else 0
    if nr == 0:
        return [], []
    cdef long long *m = <long long *> malloc(nr * nc * sizeof(long long))
    if m == NULL:
        raise MemoryError
    cdef int r = 0, c, i, j, pr
    cdef long long inv, f, tmp
    pivots = []
    try:
        for i in range(nr):
            ri = rows[i]
            for j in range(nc):
                tmp = ri[j] % p
                if tmp < 0:
                    tmp += p
                m[i * nc + j] = tmp
        for c in range(nc):
            pr = -1
            for i in range(r, nr):
                if m[i * nc + c]:
                    pr = i
                    break
            if pr < 0:
                continue
            if pr != r:
                for j in range(nc):
                    tmp = m[r * nc + j]
                    m[r * nc + j] = m[pr * nc + j]
                    m[pr * nc + j] = tmp
            inv = inv_mod(m[r * nc + c], p)
            for j in range(nc):
                m[r * nc + j] = (m[r * nc + j] * inv) % p
            for i in range(nr):
                if i != r and m[i * nc + c]:
                    f = m[i * nc + c]
                    for j in range(c, nc):
                        tmp = (m[i * nc + j] - f * m[r * nc + j]) % p
                        if tmp < 0:
                            tmp += p
                        m[i * nc + j] = tmp
            pivots.append(c)
            r += 1
            if r == nr:
                break
        out = [[m[i * nc + j] for j in range(nc)] for i in range(r)]
        return out, pivots
    finally:
        free(m)


def kernel_mod(rows, int ncols, int p):
    if not rows:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    red, pivots = rref_mod(rows, p)
    pivset = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivset]
    basis = []
    for fc in free_cols:
        v = [0] * ncols
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-red[r][fc]) % p
        basis.append(v)
    return basis
