"""Pure-Python kernels for the mod-p inner loops.

Same API as the compiled module `dormant._corefast`; `dormant.core` picks
one at import time.  Coefficients are plain ints already reduced mod p.
"""

BACKEND = "pure"


def poly_mul_mod(a, b, p, trunc=0):
    """Product of coefficient lists mod p, truncated to `trunc` terms if > 0."""
    na, nb = len(a), len(b)
    if na == 0 or nb == 0:
        return []
    n = na + nb - 1
    if trunc and trunc < n:
        n = trunc
    out = [0] * n
    for i, ai in enumerate(a):
        if ai == 0 or i >= n:
            continue
        top = min(nb, n - i)
        for j in range(top):
            out[i + j] = (out[i + j] + ai * b[j]) % p
    return out


def mat_mul_mod(a, b, p):
    """Dense matrix product mod p; `a` is r x k, `b` is k x c (lists of rows)."""
    r, k = len(a), len(b)
    c = len(b[0]) if k else 0
    out = [[0] * c for _ in range(r)]
    for i in range(r):
        ai = a[i]
        oi = out[i]
        for s in range(k):
            ais = ai[s]
            if ais == 0:
                continue
            bs = b[s]
            for j in range(c):
                oi[j] = (oi[j] + ais * bs[j]) % p
    return out


def rref_mod(rows, p):
    """Reduced row echelon form mod p.  Returns (rref_rows, pivot_columns)."""
    m = [list(r) for r in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    pivots = []
    r = 0
    for c in range(nc):
        pr = -1
        for i in range(r, nr):
            if m[i][c] % p:
                pr = i
                break
        if pr < 0:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(nr):
            if i != r and m[i][c]:
                f = m[i][c]
                mi, mr = m[i], m[r]
                for j in range(c, nc):
                    mi[j] = (mi[j] - f * mr[j]) % p
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return m[:r], pivots


def kernel_mod(rows, ncols, p):
    """Canonical right-nullspace basis mod p (from the RREF; deterministic)."""
    if not rows:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    red, pivots = rref_mod(rows, p)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-red[r][fc]) % p
        basis.append(v)
    return basis
