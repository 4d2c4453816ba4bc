"""Dense matrices over any of the package's ring objects.

Matrices are lists of row lists whose entries are ring values; functions
take the ring explicitly.  Kernel and echelon computations require a field
(GF, FracField, ...); over the prime field they delegate to the compiled
kernels.  Kernel bases come out of the reduced echelon form, so they are
canonical and deterministic.
"""

from dormant.errors import NonCommuting, NonDiagonalizable
from dormant import core
from dormant.gf import GF


def mat_zero(ring, r, c):
    return [[ring.zero for _ in range(c)] for _ in range(r)]


def mat_eye(ring, n):
    out = mat_zero(ring, n, n)
    for i in range(n):
        out[i][i] = ring.one
    return out


def mat_add(ring, a, b):
    return [[ring.add(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(ring, a, b):
    return [[ring.sub(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_neg(ring, a):
    return [[ring.neg(x) for x in r] for r in a]


def mat_scalar(ring, c, a):
    return [[ring.mul(c, x) for x in r] for r in a]


def mat_mul(ring, a, b):
    r, k = len(a), len(b)
    c = len(b[0]) if k else 0
    out = mat_zero(ring, r, c)
    for i in range(r):
        for s in range(k):
            ais = a[i][s]
            if ring.is_zero(ais):
                continue
            for j in range(c):
                if not ring.is_zero(b[s][j]):
                    out[i][j] = ring.add(out[i][j], ring.mul(ais, b[s][j]))
    return out


def mat_vec(ring, a, v):
    out = [ring.zero for _ in a]
    for i, row in enumerate(a):
        acc = ring.zero
        for x, y in zip(row, v):
            if not (ring.is_zero(x) or ring.is_zero(y)):
                acc = ring.add(acc, ring.mul(x, y))
        out[i] = acc
    return out


def mat_eq(ring, a, b):
    return all(ring.eq(x, y) for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def mat_is_zero(ring, a):
    return all(ring.is_zero(x) for r in a for x in r)


def mat_trace(ring, a):
    t = ring.zero
    for i in range(len(a)):
        t = ring.add(t, a[i][i])
    return t


def det2(ring, a):
    """Determinant of a 2x2 matrix."""
    return ring.sub(ring.mul(a[0][0], a[1][1]), ring.mul(a[0][1], a[1][0]))


def rref(field, rows):
    """Reduced row echelon form over a field; returns (rows, pivot cols)."""
    if isinstance(field, GF) and field.e == 1 and rows:
        return core.rref_mod([list(r) for r in rows], field.p)
    m = [list(r) for r in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    pivots = []
    r = 0
    for c in range(nc):
        pr = next((i for i in range(r, nr) if not field.is_zero(m[i][c])), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = field.inv(m[r][c])
        m[r] = [field.mul(inv, x) for x in m[r]]
        for i in range(nr):
            if i != r and not field.is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return m[:r], pivots


def kernel(field, rows, ncols=None):
    """Canonical basis of the right null space {v : rows . v = 0}."""
    if ncols is None:
        if not rows:
            raise ValueError("ncols required for an empty matrix")
        ncols = len(rows[0])
    if isinstance(field, GF) and field.e == 1:
        return core.kernel_mod([list(r) for r in rows], ncols, field.p)
    if not rows:
        return [[field.one if i == j else field.zero for i in range(ncols)] for j in range(ncols)]
    red, pivots = rref(field, rows)
    pivset = set(pivots)
    basis = []
    for fc in (c for c in range(ncols) if c not in pivset):
        v = [field.zero] * ncols
        v[fc] = field.one
        for r, pc in enumerate(pivots):
            v[pc] = field.neg(red[r][fc])
        basis.append(v)
    return basis


def rank(field, rows):
    if not rows:
        return 0
    return len(rref(field, rows)[0])


def solve(field, rows, rhs):
    """One solution of rows . x = rhs, or None if inconsistent."""
    nc = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(field, aug)
    if nc in pivots:
        return None
    x = [field.zero] * nc
    for r, pc in enumerate(pivots):
        x[pc] = red[r][nc]
    return x


def eigenvalues(field, a):
    """All eigenvalues in the field, found by direct kernel tests.

    Returns list of (lam, eigenbasis); fine for the tiny fields used here.
    """
    n = len(a)
    out = []
    for lam in field.elements():
        shifted = [
            [field.sub(a[i][j], lam if i == j else field.zero) for j in range(n)]
            for i in range(n)
        ]
        basis = kernel(field, shifted, n)
        if basis:
            out.append((lam, basis))
    return out


def simultaneous_eigendecomp(field, mats):
    """Joint spectrum of pairwise-commuting matrices over GF.

    Returns [(eigenvalue_tuple, multiplicity), ...] sorted by tuple, with
    multiplicities summing to the dimension.  Raises NonCommuting if the
    input violates the precondition and NonDiagonalizable if any matrix
    fails to be semisimple over the field.
    """
    if not mats:
        raise ValueError("need at least one matrix")
    n = len(mats[0])
    for a in mats:
        for b in mats:
            ab = mat_mul_gf(field, a, b)
            ba = mat_mul_gf(field, b, a)
            if ab != ba:
                raise NonCommuting("matrices do not commute pairwise")

    # Split the ambient space by the eigenspaces of each matrix in turn.
    spaces = [([tuple(field.one if i == j else field.zero for i in range(n)) for j in range(n)], ())]
    for a in mats:
        new_spaces = []
        for basis, evs in spaces:
            k = len(basis)
            # matrix of a restricted to span(basis), coordinates in basis
            restricted = []
            bt = [list(row) for row in zip(*basis)]  # n x k, columns = basis
            for v in basis:
                img = mat_vec(field, a, list(v))
                coords = solve(field, bt, img)
                if coords is None:
                    raise NonDiagonalizable("subspace not invariant (non-semisimple input)")
                restricted.append(coords)
            rt = [list(row) for row in zip(*restricted)]  # k x k, columns = images
            found = 0
            for lam, eig in eigenvalues(field, rt):
                vecs = []
                for coeffs in eig:
                    w = [field.zero] * n
                    for c, v in zip(coeffs, basis):
                        if c:
                            w = [field.add(x, field.mul(c, y)) for x, y in zip(w, v)]
                    vecs.append(tuple(w))
                found += len(vecs)
                new_spaces.append((vecs, evs + (lam,)))
            if found != k:
                raise NonDiagonalizable("matrix is not semisimple over the field")
        spaces = new_spaces
    out = {}
    for basis, evs in spaces:
        out[evs] = out.get(evs, 0) + len(basis)
    return sorted(out.items())


def mat_mul_gf(field, a, b):
    if field.e == 1:
        return core.mat_mul_mod([list(r) for r in a], [list(r) for r in b], field.p)
    r, k = len(a), len(b)
    c = len(b[0])
    out = [[0] * c for _ in range(r)]
    for i in range(r):
        for s in range(k):
            ais = a[i][s]
            if ais:
                for j in range(c):
                    out[i][j] = field.add(out[i][j], field.mul(ais, b[s][j]))
    return out
