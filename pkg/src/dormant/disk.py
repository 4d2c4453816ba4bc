"""Finite-rank modules over the level-m logarithmic operator algebra on a
formal disk.

A module of rank n over k[t]/(t^M) stores one n x n matrix over the
truncated series ring for every basis operator of order j <= p^{m+1}; the
matrix holds the operator's values on the frame.  Values on arbitrary
sections follow from the level-m Leibniz rule, whose coefficients pair the
split (j', j'') with lambda = q_j!/(q_{j'}! q_{j''}!) and the function
derivative t^l -> q_{j'}! C(l, j') t^l.  All operators preserve or raise
t-degree, which keeps every computation here exact on a truncation window.

The order-p^{m+1} action is the curvature of the module: the level-raising
map kills the top divided power (its factorial factor p! vanishes mod p)
and is a unit multiple on every lower basis operator, so this action *is*
the obstruction to extending the structure one level up, and its vanishing
is the dormancy criterion.  At m = 0 it reproduces the classical log
p-curvature nabla(d)^p - nabla(d), which the tests assert.
"""

from dataclasses import dataclass
from functools import lru_cache

from dormant import core
from dormant.combinat import binom_mod, leibniz_coeff, q_decomp, structure_constants
from dormant.errors import InconsistentAlgebra, NonCommutingGenerators, NonSplitLocal, TruncationUnstable
from dormant.matrix import (
    kernel,
    mat_eq,
    mat_eye,
    mat_is_zero,
    mat_mul,
    mat_scalar,
    mat_sub,
    mat_zero,
    rref,
)
from dormant.radii import ExponentMultiset, ResidueClass
from dormant.series import SeriesRing


@lru_cache(maxsize=None)
def dfun_coeffs(j, m, p, M):
    """Eigenvalue of the order-j operator on t^l for the trivial structure:
    q_j! C(l, j) mod p, for l in [0, M)."""
    qf = q_decomp(j, m, p)[2]
    if qf == 0:
        return tuple([0] * M)
    return tuple((qf * binom_mod(ell, j, p)) % p for ell in range(M))


class DiskDModule:
    """Rank-n module with a complete set of operator actions at level m."""

    def __init__(self, field, m, n, M, actions, rebuild=None):
        p = field.p
        if M % p ** (m + 1) != 0:
            raise ValueError("truncation M must be a multiple of p^{m+1}")
        self.field = field
        self.m = m
        self.n = n
        self.M = M
        self.ring = SeriesRing(field, M)
        self.actions = actions  # list indexed by j = 0 .. p^{m+1}
        self._rebuild = rebuild

    @property
    def p(self):
        return self.field.p

    def action(self, j):
        return self.actions[j]

    def generators(self):
        return [self.actions[self.p**a] for a in range(self.m + 1)]

    def resize(self, M2):
        if self._rebuild is None:
            raise ValueError("module does not know how to rebuild at another truncation")
        return self._rebuild(M2)

    def to_json(self):
        return {
            "p": self.p,
            "e": self.field.e,
            "level": self.m,
            "rank": self.n,
            "truncation": self.M,
            "generators": self.generators(),
        }


def _dfun_matrix(mod, j, B):
    """Entrywise application of the order-j function derivative to B."""
    coeffs = dfun_coeffs(j, mod.m, mod.p, mod.M)
    F = mod.field
    out = []
    for row in B:
        new_row = []
        for s in row:
            if F.e == 1:
                p = F.p
                new_row.append([(c * s[ell]) % p for ell, c in enumerate(coeffs)])
            else:
                new_row.append([F.mul(F.of_int(c), s[ell]) for ell, c in enumerate(coeffs)])
        out.append(new_row)
    return out


def compose(mod, j1, B):
    """Frame matrix of (order-j1 operator) o (operator with frame matrix B).

    Expands through the Leibniz rule: sum over j' + j'' = j1 of
    lambda(j1, j') A_{j''} . dfun_{j'}(B).
    """
    R = mod.ring
    out = mat_zero(R, mod.n, mod.n)
    for j_prime in range(j1 + 1):
        lam = leibniz_coeff(j1, j_prime, mod.m, mod.p)
        if lam == 0:
            continue
        term = mat_mul(R, mod.actions[j1 - j_prime], _dfun_matrix(mod, j_prime, B))
        if lam != 1:
            term = mat_scalar(R, R.of_int(lam), term)
        out = [[R.add(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(out, term)]
    return out


def complete_actions(field, m, generators, M, verify=True, rebuild=None):
    """Extend generator actions (orders p^0..p^m) to all orders <= p^{m+1}.

    Each missing action is solved from the product of the top-digit
    generator with the lower remainder; the leading structure constant is a
    unit at every step.  Afterwards every product relation
    (order p^a) . (order j) is re-verified; failures raise
    InconsistentAlgebra (or NonCommutingGenerators when the generators
    themselves are the culprit).
    """
    p = field.p
    n = len(generators[0])
    if len(generators) != m + 1:
        raise ValueError("need one generator per level 0..m")
    top = p ** (m + 1)
    R = SeriesRing(field, M)
    actions = [None] * (top + 1)
    actions[0] = mat_eye(R, n)
    for a, g in enumerate(generators):
        actions[p**a] = [[list(s) for s in row] for row in g]
    mod = DiskDModule(field, m, n, M, actions, rebuild=rebuild)

    for j in range(2, top + 1):
        if actions[j] is not None:
            continue
        a = _top_digit_pos(j, p)
        if j == top:
            a = m  # the top order is reached from the level-m generator
        j1, j2 = p**a, j - p**a
        consts = dict(structure_constants(j1, j2, m, p))
        lead = consts.pop(j)
        prod = compose(mod, j1, actions[j2])
        for i, c in consts.items():
            prod = mat_sub(R, prod, mat_scalar(R, R.of_int(c), actions[i]))
        inv = field.inv(field.of_int(lead))
        actions[j] = mat_scalar(R, R.of_elem(inv), prod)

    if verify:
        _verify_relations(mod)
    return mod


def _top_digit_pos(j, p):
    a = 0
    while p ** (a + 1) <= j:
        a += 1
    return a


def _verify_relations(mod):
    """Check every product relation (order p^a).(order j) against the
    structure constants; these generate all relations of the algebra."""
    R = mod.ring
    p, m = mod.p, mod.m
    top = p ** (m + 1)
    gens = {p**b for b in range(m + 1)}
    failures = []
    for a in range(m + 1):
        pa = p**a
        for j in range(top - pa + 1):
            lhs = compose(mod, pa, mod.actions[j])
            rhs = mat_zero(R, mod.n, mod.n)
            for i, c in structure_constants(pa, j, m, p):
                term = mat_scalar(R, R.of_int(c), mod.actions[i])
                rhs = [[R.add(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(rhs, term)]
            if not mat_eq(R, lhs, rhs):
                failures.append((pa, j))
    if failures:
        if any(j in gens for _, j in failures):
            raise NonCommutingGenerators(f"generator relations failed: {failures}")
        raise InconsistentAlgebra(f"product relations failed at orders {failures}")


def local_model(field, d, m, M=None):
    """The rank-1 module with eigenvalue q_j! C(l - d, j) on t^l.

    On the frame section the order-j action is the constant
    q_j! C(-d, j), with binomials of negative argument through the base-p
    periodic extension; the general monomial eigenvalue then follows from
    the Leibniz rule by Vandermonde convolution.
    """
    if isinstance(d, ResidueClass):
        d = d.value
    p = field.p
    top = p ** (m + 1)
    d = d % top
    if M is None:
        M = 2 * top
    R = SeriesRing(field, M)
    actions = []
    for j in range(top + 1):
        qf = q_decomp(j, m, p)[2]
        c = (qf * binom_mod(-d, j, p)) % p
        actions.append([[R.of_int(c)]])
    return DiskDModule(
        field, m, 1, M, actions, rebuild=lambda M2: local_model(field, d, m, M2)
    )


def direct_sum(mods):
    """Block-diagonal sum of modules over the same ring parameters."""
    first = mods[0]
    field, m, M = first.field, first.m, first.M
    if any(x.field != field or x.m != m or x.M != M for x in mods):
        raise ValueError("summands must share field, level, and truncation")
    n = sum(x.n for x in mods)
    R = first.ring
    top = field.p ** (m + 1)
    actions = []
    for j in range(top + 1):
        big = mat_zero(R, n, n)
        off = 0
        for x in mods:
            aj = x.actions[j]
            for i in range(x.n):
                for k in range(x.n):
                    big[off + i][off + k] = list(aj[i][k])
            off += x.n
        actions.append(big)
    return DiskDModule(
        field, m, n, M, actions, rebuild=lambda M2: direct_sum([x.resize(M2) for x in mods])
    )


def p_curvature(mod):
    """The order-p^{m+1} action; zero exactly when the module is dormant."""
    return mod.actions[mod.p ** (mod.m + 1)]


def is_dormant(mod):
    return mat_is_zero(mod.ring, p_curvature(mod))


def level_reduce(mod, a):
    """Restrict to the level-a subalgebra and re-complete."""
    if not (0 <= a <= mod.m):
        raise ValueError("need 0 <= a <= m")
    if a == mod.m:
        return mod
    gens = [mod.actions[mod.p**b] for b in range(a + 1)]
    field, M = mod.field, mod.M
    return complete_actions(
        field,
        a,
        gens,
        M,
        verify=False,
        rebuild=lambda M2: level_reduce(mod.resize(M2), a),
    )


def operator_matrix(mod, j, out_window=None):
    """Full k-linear matrix of the order-j action on the truncated module.

    Basis t^l e_i ordered by (l, i); the operator never lowers degree, so
    the matrix is block lower triangular by degree.  Rows above
    `out_window` degrees are dropped when given.
    """
    F, n, M = mod.field, mod.n, mod.M
    W_out = M if out_window is None else out_window
    rows = [[0] * (n * M) for _ in range(n * W_out)]
    coeff_rows = [dfun_coeffs(jp, mod.m, mod.p, M) for jp in range(j + 1)]
    lams = [leibniz_coeff(j, jp, mod.m, mod.p) for jp in range(j + 1)]
    for ell in range(M):
        # S = sum_{j'} lambda * dfun_{j'}(l) * A_{j - j'}, an n x n series matrix
        S = None
        for jp in range(j + 1):
            c = (lams[jp] * coeff_rows[jp][ell]) % mod.p if F.e == 1 else None
            if F.e == 1:
                if c == 0:
                    continue
                term = mod.actions[j - jp]
                if S is None:
                    S = [[[(c * v) % mod.p for v in s] for s in row] for row in term]
                else:
                    for i in range(n):
                        for k in range(n):
                            src = term[i][k]
                            dst = S[i][k]
                            for t in range(M):
                                dst[t] = (dst[t] + c * src[t]) % mod.p
            else:
                lam = F.of_int(lams[jp])
                cc = F.mul(lam, F.of_int(coeff_rows[jp][ell]))
                if cc == 0:
                    continue
                term = mod.actions[j - jp]
                if S is None:
                    S = [[[F.mul(cc, v) for v in s] for s in row] for row in term]
                else:
                    for i in range(n):
                        for k in range(n):
                            src = term[i][k]
                            dst = S[i][k]
                            for t in range(M):
                                dst[t] = F.add(dst[t], F.mul(cc, src[t]))
        if S is None:
            continue
        for k in range(M - ell):
            lo = ell + k
            if lo >= W_out:
                break
            for r in range(n):
                row = rows[lo * n + r]
                for i in range(n):
                    v = S[r][i][k]
                    if v:
                        row[ell * n + i] = v
    return rows


@dataclass
class SolBasis:
    """Basis of a stage of the solution filtration, on the stable window."""

    stage: int
    n: int
    window: int
    vectors: list  # each of length n * window, coordinates ordered (degree, component)


def sol_filtration(mod, a, check_stability=True):
    """Basis of F^[a]: the joint kernel of the actions of orders p^b, b < a.

    Solves on the full truncated module and reports the canonical reduced
    basis restricted to the stable window [0, M - p^{m+1}).  With
    `check_stability` the computation is repeated at doubled truncation and
    the window bases must agree (TruncationUnstable otherwise).
    """
    if not (0 <= a <= mod.m + 1):
        raise ValueError("need 0 <= a <= m+1")
    vectors = _sol_window_basis(mod, a)
    if check_stability and mod._rebuild is not None:
        bigger = mod.resize(2 * mod.M)
        ref = _sol_window_basis(bigger, a, window=mod.M - mod.p ** (mod.m + 1))
        if ref != vectors:
            raise TruncationUnstable(f"F^[{a}] basis changed when M doubled")
    W = mod.M - mod.p ** (mod.m + 1)
    return SolBasis(stage=a, n=mod.n, window=W, vectors=vectors)


def _sol_window_basis(mod, a, window=None):
    W = mod.M - mod.p ** (mod.m + 1) if window is None else window
    if a == 0:
        dim = mod.n * W
        return [[1 if i == j else 0 for i in range(dim)] for j in range(dim)]
    rows = []
    for b in range(a):
        rows.extend(operator_matrix(mod, mod.p**b))
    ker = kernel(mod.field, rows, mod.n * mod.M)
    cropped = [v[: mod.n * W] for v in ker]
    red, _ = rref(mod.field, cropped) if cropped else ([], [])
    return [list(r) for r in red]


def induced_connection(mod, a):
    """Matrix of the order-p^a action restricted to F^[a], in its canonical
    basis.  Its kernel is exactly F^[a+1]."""
    basis = sol_filtration(mod, a, check_stability=False)
    if not basis.vectors:
        return basis, []
    W = basis.window
    op = operator_matrix(mod, mod.p**a, out_window=W)
    F = mod.field
    n_keep = mod.n * W
    images = []
    for v in basis.vectors:
        full = list(v) + [0] * (mod.n * mod.M - len(v))
        img = _apply_rows(F, op, full)
        images.append(img[:n_keep])
    cols = [list(r) for r in zip(*basis.vectors)]
    coords = []
    for img in images:
        x = _solve_cols(F, cols, img)
        if x is None:
            raise InconsistentAlgebra("image of F^[a] left its own span")
        coords.append(x)
    return basis, [list(r) for r in zip(*coords)]  # columns = images => matrix acts on coords


def _apply_rows(field, rows, v):
    if field.e == 1:
        p = field.p
        return [sum(x * y for x, y in zip(r, v)) % p for r in rows]
    out = []
    for r in rows:
        acc = 0
        for x, y in zip(r, v):
            if x and y:
                acc = field.add(acc, field.mul(x, y))
        out.append(acc)
    return out


def _solve_cols(field, cols, rhs):
    from dormant.matrix import solve

    return solve(field, cols, rhs)


def monodromy(mod):
    """Constant terms of the generator actions: the commuting operators
    mu^<p^a> on the fiber at t = 0."""
    out = []
    for a in range(mod.m + 1):
        g = mod.actions[mod.p**a]
        out.append([[g[i][k][0] for k in range(mod.n)] for i in range(mod.n)])
    return out


def exponent(mod):
    """Exponent multiset reconstructed from the joint monodromy spectrum.

    Joint eigenvalue tuples (e_0, ..., e_m) over F_p are digits of -d; the
    multiset collects d = -(sum p^a e_a) mod p^{m+1} with multiplicity.
    Requires vanishing curvature and split (diagonalizable over F_p)
    monodromy; raises NonSplitLocal otherwise.
    """
    from dormant.errors import NonDiagonalizable

    if not is_dormant(mod):
        raise NonSplitLocal("module has nonzero curvature")
    mats = monodromy(mod)
    F = mod.field
    if F.e > 1:
        if any(not F.in_prime_field(x) for mat in mats for row in mat for x in row):
            raise NonSplitLocal("monodromy entries leave the prime field")
    try:
        spec = simultaneous_eigendecomp_prime(mod, mats)
    except NonDiagonalizable as exc:
        raise NonSplitLocal(str(exc)) from exc
    p, m = mod.p, mod.m
    entries = []
    for evs, mult in spec:
        if any(v >= p for v in evs):
            raise NonSplitLocal("monodromy eigenvalue outside F_p")
        c = sum(v * p**a for a, v in enumerate(evs))
        entries.extend([(-c) % p ** (m + 1)] * mult)
    return ExponentMultiset(p, m + 1, tuple(entries))


def simultaneous_eigendecomp_prime(mod, mats):
    from dormant.gf import gf
    from dormant.matrix import simultaneous_eigendecomp

    field = mod.field if mod.field.e == 1 else gf(mod.p)
    return simultaneous_eigendecomp(field, mats)


def count_Ra(exponent_multisets, a):
    """Number of pairs (point, j' < j) whose exponent difference has digit a
    in {0, p-1}.

    Entries are ordered ascending by lift and the difference is taken
    first-minus-second (smaller minus larger).  For a >= 1 and multisets
    with distinct mod-p entries the two orientations agree; a = 0 is a
    diagnostic outside the gap-rank range and uses this fixed orientation.
    """
    total = 0
    for ems in exponent_multisets:
        p, N = ems.p, ems.N
        if not (0 <= a <= N - 1):
            raise ValueError("need 0 <= a <= N-1")
        ents = sorted(ems.entries)
        pN = p**N
        for jp in range(len(ents)):
            for j in range(jp + 1, len(ents)):
                diff = (ents[jp] - ents[j]) % pN
                if (diff // p**a) % p in (0, p - 1):
                    total += 1
    return total
