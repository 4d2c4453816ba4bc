"""Dormancy oracle on the 3-pointed projective line (P^1; 0, 1, oo).

A level-N candidate of prescribed radii is realized as a chain of
Frobenius-descent stages.  Stage 0 is the companion of the second-order
operator with Riemann scheme {0: (0, e0), 1: (0, e1), oo: (alpha, beta)}
(the hypergeometric normalization; diagonal twists spend no generality for
the projective verdict).  When a stage has vanishing p-curvature its
solutions descend to a rank-2 bundle on the next Frobenius twist, and the
following stage is a log connection on that bundle whose residues carry
the next base-p digit of the target exponents.  A triple of radii is
admissible exactly when some exponent lift completes all N stages.

Conventions.  Connection matrices are written so that horizontal sections
solve s' = A s; a rank-1 lattice with local exponent e then has residue
+e, and the p-curvature is A_p from the iteration A_{k+1} = A_k' + A_k A.
Two independent dormancy routes exist for stage 0: that curvature
iteration, and the solution count: the operator is k(x^p)-linear on k(x),
a p-dimensional k(x^p)-space, so its kernel dimension is exact linear
algebra over the rational function field.  The acceptance suite checks
the two agree on every parameter triple.
"""

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from dormant.errors import (
    CapExceeded,
    DormantError,
    EmptyExtension,
    IncompatibleExponents,
    NotDormantStage,
)
from dormant.gf import gf
from dormant.laurent import (
    Laurent,
    ladd,
    lconst,
    linv,
    lmono,
    lmul,
    lpow,
    lscale,
    lshift,
    lzero,
    mat2_inv,
    mat2_mul,
)
from dormant.matrix import kernel as mat_kernel
from dormant.matrix import rank as mat_rank
from dormant.matrix import solve as mat_solve
from dormant.poly import FracField, LocRing, PolyRing
from dormant.radii import Radius, enum_Xi2

ORACLE_VERSION = "1"
POINTS = (0, 1, "inf")

# brute-force budget: the extension search is exponential in the affine
# dimension over F_p, so the oracle is capped hard
MAX_P = 7
MAX_N = 2
CANDIDATE_CAP = 20000


@dataclass
class StageConnection:
    """One Frobenius-descent stage: a log connection on a rank-2 bundle."""

    stage: int
    p: int
    varname: str
    A: list  # 2x2 matrix over LocRing(varname)
    exps: dict  # point -> (low, high) local exponent digits in F_p
    degrees: tuple | None = None  # bundle degree pair, when known
    twist: tuple = (0, 0)  # diagonal twist exponents spent at 0 and 1


@dataclass
class LevelNOperChain:
    p: int
    N: int
    radii: tuple  # three Radius values (points 0, 1, inf)
    exponents: dict  # point -> (d1, d2) mod p^N
    stages: list = field(default_factory=list)
    lifts_tried: int = 0
    lifts_succeeded: int = 0


# ---------------------------------------------------------------------------
# stage 0: scalar (hypergeometric-type) connections
# ---------------------------------------------------------------------------


def build_level1(p, pairs, N=1):
    """Companion connection with prescribed local exponents.

    `pairs` is ((e01, e02), (e11, e12), (f1, f2)) at the points 0, 1, oo,
    entries mod p^N.  The pairs are diagonal-shifted to the normal form
    ((eps0, 0), (eps1, 0), (alpha, beta)); the shifted exponents must
    satisfy the degree constraint eps0 + eps1 + alpha + beta = 1, else
    IncompatibleExponents.
    """
    pN = p**N
    (e01, e02), (e11, e12), (f1, f2) = [tuple(x % pN for x in pr) for pr in pairs]
    eps0 = (e01 - e02) % pN
    eps1 = (e11 - e12) % pN
    alpha = (f1 + e02 + e12) % pN
    beta = (f2 + e02 + e12) % pN
    if (eps0 + eps1 + alpha + beta - 1) % pN:
        raise IncompatibleExponents(
            f"exponent sum {eps0}+{eps1}+{alpha}+{beta} != 1 mod {pN}"
        )
    return _companion(p, eps0 % p, eps1 % p, alpha % p, beta % p, twist=(e02 % p, e12 % p))


def _companion(p, eps0, eps1, alpha, beta, twist=(0, 0)):
    """Companion matrix for y'' + P y' + Q y = 0: solutions (y, y') of the
    scalar operator satisfy s' = A s."""
    F = gf(p)
    L = LocRing(F, "x")
    # P = (1 - eps0)/x + (1 - eps1)/(x - 1), Q = alpha*beta / (x(x-1))
    P_val = L.add(
        L.make(((1 - eps0) % p,), 1, 0),
        L.make(((1 - eps1) % p,), 0, 1),
    )
    Q_val = L.make((alpha * beta % p,), 1, 1)
    A = [
        [L.zero, L.one],
        [L.neg(Q_val), L.neg(P_val)],
    ]
    exps = {
        0: _ordered_pair(0, eps0 % p),
        1: _ordered_pair(0, eps1 % p),
        "inf": _ordered_pair(alpha % p, beta % p),
    }
    return StageConnection(
        stage=0, p=p, varname="x", A=A, exps=exps, degrees=None, twist=twist
    )


def _ordered_pair(a, b):
    return (a, b) if a <= b else (b, a)


def p_curvature_rational(L, A, p):
    """A_p from the iteration A_1 = A, A_{k+1} = dA_k/dx + A_k A."""
    n = len(A)
    cur = [row[:] for row in A]
    for _ in range(p - 1):
        nxt = [[L.derivative(cur[i][j]) for j in range(n)] for i in range(n)]
        for i in range(n):
            for j in range(n):
                acc = nxt[i][j]
                for k in range(n):
                    acc = L.add(acc, L.mul(cur[i][k], A[k][j]))
                nxt[i][j] = acc
        cur = nxt
    return cur


def stage_p_curvature(stage):
    L = LocRing(gf(stage.p), stage.varname)
    return p_curvature_rational(L, stage.A, stage.p)


def stage_is_dormant(stage):
    L = LocRing(gf(stage.p), stage.varname)
    psi = stage_p_curvature(stage)
    return all(L.is_zero(e) for row in psi for e in row)


# ---------------------------------------------------------------------------
# independent oracle: solution count over k(x^p)
# ---------------------------------------------------------------------------


def _cleared_scalar_operator(p, eps0, eps1, alpha, beta):
    """(g2, g1, g0) polys with g2 y'' + g1 y' + g0 y = x(x-1) * (monic op)."""
    F = gf(p)
    P = PolyRing(F, "x")
    g2 = P.mul((0, 1), (F.neg(1), 1))  # x(x-1)
    g1 = P.add(
        P.scalar_mul((1 - eps0) % p, (F.neg(1), 1)),
        P.scalar_mul((1 - eps1) % p, (0, 1)),
    )
    g0 = P.of_int(alpha * beta)
    return g2, g1, g0


def solution_count_scalar(p, eps0, eps1, alpha, beta):
    """dim over k(x^p) of the solution space of the normalized operator.

    The cleared operator is k(x^p)-linear on k(x) = sum_i k(x^p) x^i, so
    the count is p - rank of a p x p matrix over F_p(t); exact elimination
    over the fraction field, no curvature involved.
    """
    F = gf(p)
    Pt = PolyRing(F, "t")
    K = FracField(Pt)
    g2, g1, g0 = _cleared_scalar_operator(p, eps0, eps1, alpha, beta)
    entries = [[{} for _ in range(p)] for _ in range(p)]
    for i in range(p):
        img = {}
        for g, fall in ((g2, 2), (g1, 1), (g0, 0)):
            if i < fall:
                continue
            coef = 1
            for s in range(fall):
                coef = coef * (i - s) % p
            if coef == 0:
                continue
            for k, c in enumerate(g):
                if c:
                    n = k + i - fall
                    img[n] = (img.get(n, 0) + coef * c) % p
        for n, c in img.items():
            if c:
                q, r = divmod(n, p)
                entries[r][i][q] = (entries[r][i].get(q, 0) + c) % p
    rows = []
    for r in range(p):
        row = []
        for i in range(p):
            d = entries[r][i]
            if d:
                deg = max(d)
                row.append(K.of_poly(Pt.of_coeffs([d.get(k, 0) for k in range(deg + 1)])))
            else:
                row.append(K.zero)
        rows.append(row)
    return p - mat_rank(K, rows)


def is_dormant_level1_params(p, eps0, eps1, alpha, beta):
    """p-curvature verdict for normalized exponent data (the primary route;
    solution_count_scalar is the independent one)."""
    return stage_is_dormant(_companion(p, eps0, eps1, alpha, beta))


def gauss_dormant(p, a, b, c):
    """p-curvature verdict for the classical parameter triple (a, b, c):
    scheme {0: (0, 1-c), 1: (0, c-a-b), oo: (a, b)}."""
    return is_dormant_level1_params(p, (1 - c) % p, (c - a - b) % p, a % p, b % p)


def gauss_solution_count(p, a, b, c):
    return solution_count_scalar(p, (1 - c) % p, (c - a - b) % p, a % p, b % p)


# ---------------------------------------------------------------------------
# solution extraction and Cartier descent
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Solution:
    """Scalar solution x^u (x-1)^v * poly of the normalized operator."""

    u: int
    v: int
    poly: tuple

    def total_degree(self):
        return self.u + self.v + len(self.poly) - 1


def _log_ratio(L, u, v):
    """f'/f for f = x^u (x-1)^v."""
    p = L.field.p
    return L.add(L.make((u % p,), 1, 0), L.make((v % p,), 0, 1))


def _twisted_operator(p, eps0, eps1, alpha, beta, u, v):
    """Cleared polynomial coefficients (g2, g1, g0) of the operator solved
    by z when y = x^u (x-1)^v z solves the normalized operator."""
    F = gf(p)
    L = LocRing(F, "x")
    P_val = L.add(L.make(((1 - eps0) % p,), 1, 0), L.make(((1 - eps1) % p,), 0, 1))
    Q_val = L.make((alpha * beta % p,), 1, 1)
    lograt = _log_ratio(L, u, v)
    P_t = L.add(P_val, L.scalar_mul(2, lograt))
    Q_t = L.add(
        L.add(Q_val, L.mul(P_val, lograt)),
        L.add(L.derivative(lograt), L.mul(lograt, lograt)),
    )
    Poly = PolyRing(F, "x")
    for val in (P_t, Q_t):
        if val[1] > 2 or val[2] > 2:
            raise DormantError("unexpected pole order in twisted operator")

    def clear(val):
        num, i, j = val
        return Poly.mul(Poly.shift(num, 2 - i), Poly.pow((p - 1, 1), 2 - j))

    g2 = Poly.mul(Poly.mul((0, 1), (p - 1, 1)), Poly.mul((0, 1), (p - 1, 1)))
    return g2, clear(P_t), clear(Q_t)


def _poly_solutions_of_cleared(p, g2, g1, g0, degree_bound):
    """Kernel of z -> g2 z'' + g1 z' + g0 z on polynomials of bounded degree."""
    F = gf(p)
    out_len = degree_bound + 1 + max(len(g2), len(g1), len(g0))
    rows = [[0] * (degree_bound + 1) for _ in range(out_len)]
    for i in range(degree_bound + 1):
        for g, fall in ((g2, 2), (g1, 1), (g0, 0)):
            if i < fall:
                continue
            coef = 1
            for s in range(fall):
                coef = coef * (i - s) % p
            if coef == 0:
                continue
            for k, c in enumerate(g):
                if c:
                    rows[k + i - fall][i] = (rows[k + i - fall][i] + coef * c) % p
    return mat_kernel(F, rows, degree_bound + 1)


def stage0_solutions(p, eps0, eps1, alpha, beta):
    """A global solution basis (z1, z2) whose Wronskian is a pure monomial
    c x^a (x-1)^b; such a pair generates the solution sheaf away from the
    marked points.  The stage must be dormant."""
    F = gf(p)
    Poly = PolyRing(F, "x")
    cands = []
    seen = set()
    for u in sorted({0, eps0 % p}):
        for v in sorted({0, eps1 % p}):
            g2, g1, g0 = _twisted_operator(p, eps0, eps1, alpha, beta, u, v)
            for vec in _poly_solutions_of_cleared(p, g2, g1, g0, 3 * p):
                poly = Poly.of_coeffs(vec)
                if not poly:
                    continue
                uu, vv = u, v
                while Poly.eval(poly, 0) == 0:
                    poly = Poly.deflate_root(poly, 0)
                    uu += 1
                while Poly.eval(poly, 1) == 0:
                    poly = Poly.deflate_root(poly, 1)
                    vv += 1
                key = (uu, vv, poly)
                if key not in seen:
                    seen.add(key)
                    cands.append(Solution(uu, vv, poly))
    cands.sort(key=lambda s: (s.total_degree(), s.u, s.v, s.poly))
    for i in range(len(cands)):
        for j in range(i + 1, len(cands)):
            if _wronskian_monomial(p, cands[i], cands[j]) is not None:
                return cands[i], cands[j]
    raise NotDormantStage("no solution basis with monomial Wronskian found")


def _solution_locval(p, sol):
    L = LocRing(gf(p), "x")
    P = PolyRing(gf(p), "x")
    val = L.of_poly(sol.poly)
    val = L.mul(val, L.of_poly(P.shift(P.one, sol.u)))
    val = L.mul(val, L.of_poly(P.pow((p - 1, 1), sol.v)))
    return val


def _wronskian_monomial(p, s1, s2):
    """(a, b) with W(s1, s2) = c x^a (x-1)^b, or None if not a monomial."""
    F = gf(p)
    L = LocRing(F, "x")
    P = PolyRing(F, "x")
    z1 = _solution_locval(p, s1)
    z2 = _solution_locval(p, s2)
    w = L.sub(L.mul(z1, L.derivative(z2)), L.mul(z2, L.derivative(z1)))
    if L.is_zero(w):
        return None
    num, i, j = w
    a = P.valuation_at(num, 0)
    poly = num
    for _ in range(a):
        poly = P.deflate_root(poly, 0)
    b = P.valuation_at(poly, 1)
    for _ in range(b):
        poly = P.deflate_root(poly, 1)
    if len(poly) == 1:
        return (a - i, b - j)
    return None


def _expand_solution(p, sol, point, hi):
    """Exact Laurent expansion of the solution at the point, padded so all
    coefficients at exponents < hi are known."""
    P = PolyRing(gf(p), "x")
    if point == 0:
        prod = P.mul(sol.poly, P.pow((p - 1, 1), sol.v))
        coeffs = list(prod)
        val = sol.u
    elif point == 1:
        prod = P.mul(_shift_poly(p, sol.poly, 1), _shift_poly(p, P.shift(P.one, sol.u), 1))
        coeffs = list(prod)
        val = sol.v
    else:
        d = len(sol.poly) - 1
        rev = tuple(reversed(sol.poly))
        prod = P.mul(rev, P.pow((1, p - 1), sol.v))  # (1 - tau)^v
        coeffs = list(prod)
        val = -(sol.u + sol.v + d)
    pad = hi - val - len(coeffs)
    coeffs = coeffs + [0] * pad if pad >= 0 else coeffs[: hi - val]
    return Laurent(p, val, coeffs)


def _shift_poly(p, poly, c):
    """poly(c + tau) as a coefficient tuple in tau."""
    P = PolyRing(gf(p), "x")
    out = ()
    for coef in reversed(poly):
        out = P.add(P.mul(out, (c % p, 1)), (coef % p,) if coef % p else ())
    return out


@dataclass
class PointFrame:
    """Adapted local solution frame at one marked point."""

    point: object
    exps: tuple  # (e_low, e_high) valuation reps in [0, p)
    shifts: tuple  # (k_low, k_high): lattice vector = tau^{-p k} * combination
    C: list  # 2x2 Laurent transition: columns = (low, high) in the (z1, z2) frame


@dataclass
class DescentData:
    p: int
    solutions: tuple  # (z1, z2)
    frames: dict  # point -> PointFrame
    degrees: tuple  # descended bundle degree pair from the infinity lattice


def cartier_descend(stage, eps0=None, eps1=None, alpha=None, beta=None):
    """Solution bundle of a dormant stage with its adapted local frames.

    Returns DescentData: a global basis (z1, z2) and, per point, the
    adapted pair ordered by exponent rep together with its transition to
    the (z1, z2)-coefficient frame.  Descended degrees read off the
    infinity shifts.  Raises NotDormantStage on nonzero p-curvature.
    """
    p = stage.p
    if eps0 is None:
        eps0 = stage.exps[0][1]
        eps1 = stage.exps[1][1]
        alpha, beta = stage.exps["inf"]
    if not stage_is_dormant(stage):
        raise NotDormantStage("stage has nonzero p-curvature")
    z1, z2 = stage0_solutions(p, eps0, eps1, alpha, beta)
    hi = _window_hi(p)
    frames = {}
    for point in POINTS:
        s1 = _expand_solution(p, z1, point, hi)
        s2 = _expand_solution(p, z2, point, hi)
        frames[point] = _adapt(p, point, s1, s2, hi)
    kl, kh = frames["inf"].shifts
    return DescentData(p=p, solutions=(z1, z2), frames=frames, degrees=(-kl, -kh))


def _window_hi(p):
    return 26 * p + 10


def _adapt(p, point, s1, s2, hi):
    prec = 2 * hi
    C = [
        [lconst(p, 1, prec), lzero(p)],
        [lzero(p), lconst(p, 1, prec)],
    ]
    cur = [s1.copy(), s2.copy()]
    for _ in range(4 * (hi // p) + 8):
        if cur[0].is_zero_to_prec() or cur[1].is_zero_to_prec():
            raise DormantError(f"precision exhausted adapting frame at {point}")
        v0, v1 = cur[0].val, cur[1].val
        if (v0 - v1) % p:
            break
        lo, hi_i = (0, 1) if v0 <= v1 else (1, 0)
        c = cur[hi_i].coeffs[0] * pow(cur[lo].coeffs[0], p - 2, p) % p
        k = (cur[hi_i].val - cur[lo].val) // p
        shift = lmono(p, (-c) % p, p * k, prec)
        cur[hi_i] = ladd(cur[hi_i], lmul(shift, cur[lo]))
        for r in range(2):
            C[r][hi_i] = ladd(C[r][hi_i], lmul(shift, C[r][lo]))
    else:
        raise DormantError(f"local frame adaptation did not converge at {point}")
    vals = [cur[0].val, cur[1].val]
    exps = [v % p for v in vals]
    shifts = [(v - e) // p for v, e in zip(vals, exps)]
    for i in range(2):
        if shifts[i]:
            sc = lmono(p, 1, -p * shifts[i], prec)
            for r in range(2):
                C[r][i] = lmul(sc, C[r][i])
    order = (0, 1) if exps[0] <= exps[1] else (1, 0)
    return PointFrame(
        point=point,
        exps=(exps[order[0]], exps[order[1]]),
        shifts=(shifts[order[0]], shifts[order[1]]),
        C=[[C[r][order[0]], C[r][order[1]]] for r in range(2)],
    )


# ---------------------------------------------------------------------------
# stage extension search
# ---------------------------------------------------------------------------


def _basis_shapes(K0, K1, Kinf):
    shapes = []
    for k in range(1, K0 + 1):
        shapes.append(("pole0", k))
    for k in range(1, K1 + 1):
        shapes.append(("pole1", k))
    for k in range(0, Kinf + 1):
        shapes.append(("poly", k))
    return shapes


def _inflate(coeffs_y, p):
    out = []
    for c in coeffs_y:
        out.append(c)
        out.extend([0] * (p - 1))
    return out


def _shape_expansion(p, shape, point, prec):
    """Laurent expansion (tau_x grid) at the point of the basic rational
    functions of y: y^k, y^{-k}, (y-1)^{-k}."""
    kind, k = shape
    terms = prec // p + 4
    if point == 0:
        if kind == "pole0":
            return lmono(p, 1, -p * k, prec + p * k)
        if kind == "poly":
            return lmono(p, 1, p * k, prec)
        # (y-1)^{-k} = (-1)^k (1-y)^{-k}
        base = linv(Laurent(p, 0, _inflate([1, p - 1] + [0] * terms, p)))
        return lscale(pow(p - 1, k, p), lpow(base, k))
    if point == 1:
        if kind == "pole1":
            return lmono(p, 1, -p * k, prec + p * k)
        one_plus = Laurent(p, 0, _inflate([1, 1] + [0] * terms, p))
        if kind == "poly":
            return lpow(one_plus, k)
        return lpow(linv(one_plus), k)
    # point oo: w = 1/y
    if kind == "poly":
        return lmono(p, 1, -p * k, prec + p * k)
    if kind == "pole0":
        return lmono(p, 1, p * k, prec)
    base = linv(Laurent(p, 0, _inflate([1, p - 1] + [0] * terms, p)))  # (1-w)^{-1}
    return lshift(lpow(base, k), p * k)


def _dy_deriv(p, L, point):
    """d/dy on a Laurent series supported on the p-grid of tau_x."""
    if L.is_zero_to_prec():
        return lzero(p)
    out = {}
    for i, c in enumerate(L.coeffs):
        e = L.val + i
        if c == 0:
            continue
        if e % p:
            raise DormantError("series not supported on the p-grid")
        j = e // p
        if point == "inf":
            out[e + p] = (-j * c) % p  # d/dy = -w^2 d/dw
        elif j != 0:
            out[e - p] = (j * c) % p
    prec = L.prec + (p if point == "inf" else -p)
    if not out:
        return lzero(p)
    lo = min(out)
    return Laurent(p, lo, [out.get(e, 0) for e in range(lo, prec)])


def extend_stage(descent, targets, p):
    """All log connections on the descended bundle whose residues realize
    the target digit pairs and whose p-curvature vanishes.

    `targets` maps each point to (h_low, h_high), aligned with the adapted
    exponent order of the descent frames.  A lattice line of exponent
    digit h forces residue h on that line (s' = A s convention); the
    conditions also require the residue to act on the canonical
    highest-exponent line, which pins the found structure to the intended
    exponent lift.  Raises EmptyExtension when no candidate survives.
    """
    cands = _extension_candidates(descent, targets, p)
    if not cands:
        raise EmptyExtension("no dormant extension with the required residues")
    return cands


def _extension_candidates(descent, targets, p):
    """Members of the residue-constrained affine family with vanishing
    p-curvature."""
    out = []
    L = LocRing(gf(p), "y")
    for B in _extension_family(descent, targets, p):
        psi = p_curvature_rational(L, B, p)
        if all(L.is_zero(e) for row in psi for e in row):
            out.append(
                StageConnection(
                    stage=1,
                    p=p,
                    varname="y",
                    A=B,
                    exps=dict(targets),
                    degrees=descent.degrees,
                )
            )
    return out


def _extension_family(descent, targets, p):
    """All log connections on the descended bundle with the prescribed
    residue digits (the affine family; usually empty or a single point)."""
    F = gf(p)
    max_shift = max(
        max(abs(fr.shifts[0]), abs(fr.shifts[1]), abs(fr.shifts[0] - fr.shifts[1]))
        for fr in descent.frames.values()
    )
    K = max_shift + 2
    low_bound = K + 2 * max_shift + 3  # deepest pole order to constrain
    shapes = _basis_shapes(K, K, K)
    nsh = len(shapes)
    nunk = 4 * nsh
    rows = []
    rhs = []
    hi_x = _window_hi(p)
    for point in POINTS:
        fr = descent.frames[point]
        Cinv = mat2_inv(fr.C)
        Cp = [[_dy_deriv(p, fr.C[r][s], point) for s in range(2)] for r in range(2)]
        # adapted-frame matrix: B^ad = C^{-1} B C - C^{-1} C'
        neg_const = mat2_mul(Cinv, Cp)
        const_term = [[lscale(p - 1, neg_const[r][s]) for s in range(2)] for r in range(2)]
        shape_exp = [_shape_expansion(p, sh, point, hi_x) for sh in shapes]
        if point == "inf":
            # log at oo: coefficients of w^e vanish for e <= 0; in the
            # w-chart the residue is -(coeff at w^1)
            cond_exps = [p * e for e in range(-low_bound, 1)]
            res_exp, res_sign = p, p - 1
        else:
            cond_exps = [p * e for e in range(-low_bound, -1)]
            res_exp, res_sign = -p, 1
        h_low, h_high = targets[point]
        res_targets = {
            (0, 0): h_low % p,
            (1, 1): h_high % p,
            (0, 1): 0,
        }
        for i in range(2):
            for j in range(2):
                contribs = []
                for r in range(2):
                    for s in range(2):
                        pre = lmul(Cinv[i][r], fr.C[s][j])
                        for mi, phi in enumerate(shape_exp):
                            contribs.append((4 * mi + 2 * r + s, lmul(phi, pre)))
                for e in cond_exps + [res_exp]:
                    row = [0] * nunk
                    for idx, ser in contribs:
                        c = _safe_coeff(ser, e)
                        if c:
                            row[idx] = (row[idx] + c) % p
                    c0 = _safe_coeff(const_term[i][j], e)
                    if e == res_exp:
                        if (i, j) not in res_targets:
                            continue  # lower-left residue entry is free
                        target = res_targets[(i, j)]
                        rows.append([res_sign * v % p for v in row])
                        rhs.append((target - res_sign * c0) % p)
                    else:
                        rows.append(row)
                        rhs.append((-c0) % p)
    part = mat_solve(F, rows, rhs)
    if part is None:
        return []
    null = mat_kernel(F, rows, nunk)
    if p ** len(null) > CANDIDATE_CAP:
        raise CapExceeded(f"extension family too large: p^{len(null)} candidates")
    combos = [part]
    for v in null:
        combos = [
            [(x + t * y) % p for x, y in zip(c, v)] for c in combos for t in range(p)
        ]
    L = LocRing(F, "y")
    return [_assemble_matrix(L, shapes, c, p) for c in combos]


def _safe_coeff(ser, e):
    try:
        return ser.coeff(e)
    except ValueError:
        raise DormantError("insufficient Laurent precision in extension search")


def _assemble_matrix(L, shapes, coeffs, p):
    B = [[L.zero, L.zero], [L.zero, L.zero]]
    for mi, (kind, k) in enumerate(shapes):
        if kind == "pole0":
            base = L.make((1,), k, 0)
        elif kind == "pole1":
            base = L.make((1,), 0, k)
        else:
            base = L.of_poly((0,) * k + (1,)) if k else L.one
        for r in range(2):
            for s in range(2):
                c = coeffs[4 * mi + 2 * r + s]
                if c:
                    B[r][s] = L.add(B[r][s], L.scalar_mul(c, base))
    return B


# ---------------------------------------------------------------------------
# the level-N oracle
# ---------------------------------------------------------------------------


def _sign_choices(reps):
    out = []
    for s0 in (1, -1):
        for s1 in (1, -1):
            for s2 in (1, -1):
                out.append((s0 * reps[0], s1 * reps[1], s2 * reps[2]))
    return out


def is_dormant(rho, p, N, collect=False):
    """Whether the radii triple rho = (rho_0, rho_1, rho_oo) admits a
    complete dormant chain of N stages."""
    if p > MAX_P or N > MAX_N:
        raise CapExceeded(f"oracle capped at p <= {MAX_P}, N <= {MAX_N}")
    reps = tuple(r.rep if isinstance(r, Radius) else int(r) for r in rho)
    pN = p**N
    chain = LevelNOperChain(
        p=p, N=N, radii=tuple(Radius(p, N, r) for r in reps), exponents={}
    )
    found = False
    for d0, d1, dinf in _sign_choices(reps):
        deltas = ((2 * d0) % pN, (2 * d1) % pN, (2 * dinf) % pN)
        chain.lifts_tried += 1
        ok = (
            _try_lift_level1(p, deltas, chain)
            if N == 1
            else _try_lift_level2(p, deltas, chain)
        )
        if ok:
            chain.lifts_succeeded += 1
            found = True
            if not collect:
                break
    return (found, chain) if collect else found


def _try_lift_level1(p, deltas, chain):
    d0, d1, dinf = deltas
    inv2 = (p + 1) // 2
    alpha = (1 - d0 - d1 + dinf) * inv2 % p
    beta = (alpha - dinf) % p
    stage = _companion(p, d0 % p, d1 % p, alpha, beta)
    if stage_is_dormant(stage):
        if not chain.stages:
            chain.stages = [stage]
            chain.exponents = {0: (d0, 0), 1: (d1, 0), "inf": (alpha, beta)}
        return True
    return False


def _try_lift_level2(p, deltas, chain):
    pN = p * p
    d0, d1, dinf = deltas
    eps0, eps1 = d0 % p, d1 % p
    inv2 = (p + 1) // 2
    alpha_bar = (1 - d0 - d1 + dinf) * inv2 % p
    beta_bar = (alpha_bar - dinf) % p
    stage0 = _companion(p, eps0, eps1, alpha_bar, beta_bar)
    if not stage_is_dormant(stage0):
        return False
    descent = cartier_descend(stage0, eps0, eps1, alpha_bar, beta_bar)
    for k in range(p):
        alpha = (alpha_bar + p * k) % pN
        beta = (alpha - dinf) % pN
        targets = _digit_targets(p, descent, d0, d1, alpha, beta)
        if targets is None:
            continue
        cands = _extension_candidates(descent, targets, p)
        if cands:
            if not chain.stages:
                chain.exponents = {0: (d0, 0), 1: (d1, 0), "inf": (alpha, beta)}
                chain.stages = [stage0, cands[0]]
            return True
    return False


def _digit_targets(p, descent, d0, d1, alpha, beta):
    """Second-digit residue targets per point, aligned with the adapted
    (low, high) exponent order."""
    targets = {}
    for point, pair in ((0, (d0, 0)), (1, (d1, 0)), ("inf", (alpha, beta))):
        fr = descent.frames[point]
        e_low, e_high = fr.exps
        by_rep = {}
        for d in pair:
            by_rep.setdefault(d % p, []).append(d // p % p)
        lows = by_rep.get(e_low)
        highs = by_rep.get(e_high)
        if not lows or not highs:
            return None
        targets[point] = (lows[0], highs[0])
    return targets


# ---------------------------------------------------------------------------
# admissibility tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AdmissibilityTable:
    p: int
    N: int
    triples: frozenset  # of ascending rep-tuples

    def contains(self, r1, r2, r3):
        reps = tuple(
            sorted(r.rep if isinstance(r, Radius) else int(r) for r in (r1, r2, r3))
        )
        return reps in self.triples

    def to_json(self):
        return {
            "p": self.p,
            "N": self.N,
            "version": ORACLE_VERSION,
            "admissible": sorted(list(t) for t in self.triples),
        }

    @staticmethod
    def from_json(obj):
        return AdmissibilityTable(
            p=obj["p"], N=obj["N"], triples=frozenset(tuple(t) for t in obj["admissible"])
        )


def _unordered_triples(p, N):
    xi = [r.rep for r in enum_Xi2(p, N)]
    out = []
    for i, a in enumerate(xi):
        for j in range(i, len(xi)):
            for k in range(j, len(xi)):
                out.append((a, xi[j], xi[k]))
    return out


def _triple_verdict(args):
    p, N, reps = args
    return reps, is_dormant(reps, p, N)


def cache_dir_default():
    return os.environ.get(
        "DORMANT_CACHE_DIR", os.path.join(os.path.expanduser("~"), ".cache", "dormant")
    )


def vertex_table(p, N, cache_dir=None, use_cache=True, threads=1):
    """The set of unordered radii triples admitting a dormant chain; cached
    on disk keyed by (p, N, oracle version)."""
    if p > MAX_P or N > MAX_N:
        raise CapExceeded(f"oracle capped at p <= {MAX_P}, N <= {MAX_N}")
    cdir = cache_dir or cache_dir_default()
    path = os.path.join(cdir, f"vertex_table_p{p}_N{N}_v{ORACLE_VERSION}.json")
    if use_cache and os.path.exists(path):
        with open(path) as fh:
            obj = json.load(fh)
        if obj.get("version") == ORACLE_VERSION:
            return AdmissibilityTable.from_json(obj)
    work = [(p, N, reps) for reps in _unordered_triples(p, N)]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = sorted(pool.map(_triple_verdict, work))
    else:
        results = [_triple_verdict(w) for w in work]
    table = AdmissibilityTable(
        p=p, N=N, triples=frozenset(reps for reps, ok in results if ok)
    )
    if use_cache:
        try:
            os.makedirs(cdir, exist_ok=True)
            with open(path, "w") as fh:
                json.dump(table.to_json(), fh, sort_keys=True)
        except OSError:
            pass
    return table


# ---------------------------------------------------------------------------
# Hitchin-Mochizuki characteristic coefficient
# ---------------------------------------------------------------------------


def hm_char_coeff(stage_or_chain):
    """a_2 = det of the traceless top curvature, over the base chart.

    For a chain the last stage's coefficient is pulled back through the
    Frobenius twists (y = x^{p^{N-1}}), staying localized at {0, 1} because
    x^{p^a} - 1 = (x - 1)^{p^a}.  Dormant input gives exactly 0; vanishing
    characterizes nilpotent top curvature.
    """
    if isinstance(stage_or_chain, LevelNOperChain):
        last = stage_or_chain.stages[-1]
        depth = len(stage_or_chain.stages) - 1
    else:
        last = stage_or_chain
        depth = last.stage
    p = last.p
    L = LocRing(gf(p), last.varname)
    psi = p_curvature_rational(L, last.A, p)
    half = (p + 1) // 2
    shift = L.scalar_mul(half, L.add(psi[0][0], psi[1][1]))
    red = [
        [L.sub(psi[0][0], shift), psi[0][1]],
        [psi[1][0], L.sub(psi[1][1], shift)],
    ]
    a2 = L.sub(L.mul(red[0][0], red[1][1]), L.mul(red[0][1], red[1][0]))
    for _ in range(depth):
        a2 = _frobenius_substitute(p, a2)
    return a2


def _frobenius_substitute(p, val):
    """Substitute the chart variable by its p-th power in a localized value."""
    L = LocRing(gf(p), "x")
    num, i, j = val
    if not num:
        return L.zero
    new_num = []
    for c in num:
        new_num.append(c)
        new_num.extend([0] * (p - 1))
    new_num = new_num[: (len(num) - 1) * p + 1]
    return L.make(tuple(new_num), i * p, j * p)


def hm_descent_check(a2, p, N):
    """The descended coefficient u with a_2 = u(x^{p^N}) / (x(x-1))^{2p^N}
    in the d/dx frame, as a poly tuple in the twist variable, or None if
    a_2 does not descend (it always must, for a completed structure)."""
    L = LocRing(gf(p), "x")
    num, i, j = a2
    if not num:
        return ()
    q = p**N
    if i > 2 * q or j > 2 * q:
        return None
    P = PolyRing(gf(p), "x")
    poly = P.mul(P.shift(num, 2 * q - i), P.pow((p - 1, 1), 2 * q - j))
    if len(poly) - 1 > 2 * q:
        return None
    if any(c and (k % q) for k, c in enumerate(poly)):
        return None
    return tuple(poly[k] for k in range(0, len(poly), q))
