"""Truncated Laurent series over F_p for local analysis at a marked point.

A series is (val, coeffs): sum coeffs[k] * tau^(val + k), with coefficients
known exactly for exponents < val + len(coeffs).  Operations track the
common precision window; callers choose a generous window up front.
Coefficients are ints mod p.
"""


class Laurent:
    __slots__ = ("p", "val", "coeffs")

    def __init__(self, p, val, coeffs):
        self.p = p
        self.val = val
        self.coeffs = [c % p for c in coeffs]
        self._normalize()

    def _normalize(self):
        c = self.coeffs
        while c and c[0] == 0:
            c.pop(0)
            self.val += 1
        if not c:
            self.val = 0

    @property
    def prec(self):
        """First exponent beyond the known window (None for exact zero)."""
        if not self.coeffs:
            return None
        return self.val + len(self.coeffs)

    def is_zero_to_prec(self):
        return not self.coeffs

    def coeff(self, k):
        if not self.coeffs:
            return 0
        if k < self.val:
            return 0
        idx = k - self.val
        if idx >= len(self.coeffs):
            raise ValueError(f"coefficient at {k} beyond precision {self.prec}")
        return self.coeffs[idx]

    def copy(self):
        out = Laurent.__new__(Laurent)
        out.p = self.p
        out.val = self.val
        out.coeffs = list(self.coeffs)
        return out


def lzero(p):
    return Laurent(p, 0, [])


def lconst(p, c, prec):
    return Laurent(p, 0, [c] + [0] * (prec - 1))


def lmono(p, c, k, prec):
    """c * tau^k known through exponent < k + prec."""
    return Laurent(p, k, [c] + [0] * (prec - 1))


def ladd(a, b):
    p = a.p
    if not a.coeffs:
        return b.copy()
    if not b.coeffs:
        return a.copy()
    lo = min(a.val, b.val)
    hi = min(a.prec, b.prec)
    coeffs = [0] * (hi - lo)
    for s in (a, b):
        for i, c in enumerate(s.coeffs):
            k = s.val + i
            if k < hi:
                coeffs[k - lo] = (coeffs[k - lo] + c) % p
    return Laurent(p, lo, coeffs)


def lneg(a):
    return Laurent(a.p, a.val, [(-c) % a.p for c in a.coeffs])


def lsub(a, b):
    return ladd(a, lneg(b))


def lscale(c, a):
    return Laurent(a.p, a.val, [(c * x) % a.p for x in a.coeffs])


def lshift(a, k):
    """Multiply by tau^k."""
    if not a.coeffs:
        return a.copy()
    return Laurent(a.p, a.val + k, list(a.coeffs))


def lmul(a, b):
    p = a.p
    if not a.coeffs or not b.coeffs:
        return lzero(p)
    # product precision: min over the cross terms
    prec = min(a.prec + b.val, b.prec + a.val)
    lo = a.val + b.val
    out = [0] * (prec - lo)
    for i, ca in enumerate(a.coeffs):
        if ca == 0:
            continue
        for j, cb in enumerate(b.coeffs):
            k = lo + i + j
            if k >= prec:
                break
            if cb:
                out[k - lo] = (out[k - lo] + ca * cb) % p
    return Laurent(p, lo, out)


def linv(a):
    """Inverse of a series with unit leading coefficient."""
    if not a.coeffs or a.coeffs[0] == 0:
        raise ZeroDivisionError("leading coefficient must be a unit")
    p = a.p
    n = len(a.coeffs)
    lead_inv = pow(a.coeffs[0], p - 2, p)
    out = [0] * n
    out[0] = lead_inv
    for k in range(1, n):
        s = 0
        for i in range(1, k + 1):
            if i < n and a.coeffs[i]:
                s = (s + a.coeffs[i] * out[k - i]) % p
        out[k] = (-lead_inv * s) % p
    return Laurent(p, -a.val, out)


def lderiv(a):
    """d/dtau."""
    p = a.p
    if not a.coeffs:
        return lzero(p)
    coeffs = [((a.val + i) % p) * c % p for i, c in enumerate(a.coeffs)]
    return Laurent(p, a.val - 1, coeffs)


def lpow(a, n):
    p = a.p
    # modest exponents only; used for (1 - tau)^{-j} style factors
    out = lconst(p, 1, len(a.coeffs) if a.coeffs else 1)
    for _ in range(n):
        out = lmul(out, a)
    return out


def mat2_mul(A, B):
    return [
        [
            ladd(lmul(A[0][0], B[0][0]), lmul(A[0][1], B[1][0])),
            ladd(lmul(A[0][0], B[0][1]), lmul(A[0][1], B[1][1])),
        ],
        [
            ladd(lmul(A[1][0], B[0][0]), lmul(A[1][1], B[1][0])),
            ladd(lmul(A[1][0], B[0][1]), lmul(A[1][1], B[1][1])),
        ],
    ]


def mat2_inv(A):
    det = lsub(lmul(A[0][0], A[1][1]), lmul(A[0][1], A[1][0]))
    det_inv = linv(det)
    return [
        [lmul(det_inv, A[1][1]), lmul(det_inv, lneg(A[0][1]))],
        [lmul(det_inv, lneg(A[1][0])), lmul(det_inv, A[0][0])],
    ]
