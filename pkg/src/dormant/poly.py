"""Dense univariate polynomials over GF, their fraction field, and
polynomials localized at {0, 1}.

Values are little-endian coefficient tuples of int-encoded field elements,
always trimmed (no trailing zeros; the zero polynomial is ()).  Ring
objects carry the field and provide the operations, mirroring the kernel
style of the rest of the package.
"""

from dormant import core


class PolyRing:
    def __init__(self, field, varname="x"):
        self.field = field
        self.varname = varname
        self.zero = ()
        self.one = (1,)

    def of_coeffs(self, coeffs):
        return _trim(tuple(c % self.field.p if self.field.e == 1 else c for c in coeffs))

    def of_int(self, k):
        return _trim((self.field.of_int(k),))

    def x(self):
        return (0, 1)

    def deg(self, a):
        return len(a) - 1  # -1 for the zero polynomial

    def is_zero(self, a):
        return len(a) == 0

    def eq(self, a, b):
        return a == b

    def add(self, a, b):
        F = self.field
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return _trim(tuple(out))

    def neg(self, a):
        F = self.field
        return tuple(F.neg(c) for c in a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def scalar_mul(self, c, a):
        F = self.field
        if c == 0:
            return ()
        return _trim(tuple(F.mul(c, ai) for ai in a))

    def mul(self, a, b):
        if not a or not b:
            return ()
        F = self.field
        if F.e == 1:
            return _trim(tuple(core.poly_mul_mod(list(a), list(b), F.p)))
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] = F.add(out[i + j], F.mul(ai, bj))
        return _trim(tuple(out))

    def pow(self, a, n):
        r = self.one
        while n:
            if n & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            n >>= 1
        return r

    def shift(self, a, k):
        """Multiply by x^k."""
        if not a:
            return ()
        return (0,) * k + tuple(a)

    def divmod(self, a, b):
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        a = list(a)
        db, lead_inv = len(b) - 1, F.inv(b[-1])
        q = [0] * max(0, len(a) - db)
        while len(a) - 1 >= db and a:
            c = F.mul(a[-1], lead_inv)
            k = len(a) - 1 - db
            q[k] = c
            for i in range(db + 1):
                a[k + i] = F.sub(a[k + i], F.mul(c, b[i]))
            while a and a[-1] == 0:
                a.pop()
        return _trim(tuple(q)), _trim(tuple(a))

    def gcd(self, a, b):
        while b:
            a, b = b, self.divmod(a, b)[1]
        return self.monic(a)

    def monic(self, a):
        if not a:
            return a
        return self.scalar_mul(self.field.inv(a[-1]), a)

    def derivative(self, a):
        F = self.field
        return _trim(tuple(F.mul(F.of_int(i), a[i]) for i in range(1, len(a))))

    def eval(self, a, x0):
        F = self.field
        out = 0
        for c in reversed(a):
            out = F.add(F.mul(out, x0), c)
        return out

    def valuation_at(self, a, x0):
        """Order of vanishing at x0 (None for the zero polynomial)."""
        if not a:
            return None
        v = 0
        while self.eval(a, x0) == 0:
            a = self.deflate_root(a, x0)
            v += 1
        return v

    def deflate_root(self, a, x0):
        """Divide by (x - x0); the root must be exact."""
        F = self.field
        lin = self.of_coeffs([F.neg(x0), 1])
        q, r = self.divmod(a, lin)
        if r:
            raise ValueError("not a root")
        return q

    def to_str(self, a):
        if not a:
            return "0"
        terms = []
        for i, c in enumerate(a):
            if c:
                terms.append(f"{c}*{self.varname}^{i}" if i else f"{c}")
        return " + ".join(terms)


def _trim(t):
    n = len(t)
    while n and t[n - 1] == 0:
        n -= 1
    return t[:n]


class FracField:
    """Fraction field of PolyRing; values are (num, den) with den monic
    and gcd(num, den) = 1."""

    def __init__(self, polyring):
        self.poly = polyring
        self.field = polyring.field
        self.zero = ((), (1,))
        self.one = ((1,), (1,))

    def make(self, num, den):
        P = self.poly
        if not num:
            return self.zero
        if not den:
            raise ZeroDivisionError("zero denominator")
        g = P.gcd(num, den)
        if len(g) > 1:
            num = P.divmod(num, g)[0]
            den = P.divmod(den, g)[0]
        c = self.field.inv(den[-1])
        return (P.scalar_mul(c, num), P.scalar_mul(c, den))

    def of_poly(self, a):
        return (a, (1,))

    def of_int(self, k):
        return (self.poly.of_int(k), (1,))

    def is_zero(self, a):
        return not a[0]

    def eq(self, a, b):
        return a == b

    def add(self, a, b):
        P = self.poly
        return self.make(P.add(P.mul(a[0], b[1]), P.mul(b[0], a[1])), P.mul(a[1], b[1]))

    def neg(self, a):
        return (self.poly.neg(a[0]), a[1])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        P = self.poly
        return self.make(P.mul(a[0], b[0]), P.mul(a[1], b[1]))

    def inv(self, a):
        if not a[0]:
            raise ZeroDivisionError("inverse of zero rational function")
        return self.make(a[1], a[0])

    def div(self, a, b):
        return self.mul(a, self.inv(b))


class LocRing:
    """Rational functions with poles only at x = 0 and x = 1.

    Values are (num, i, j) meaning num / (x^i (x-1)^j), normalized so that
    neither x nor x-1 divides num while the matching exponent is positive.
    """

    def __init__(self, field, varname="x"):
        self.field = field
        self.poly = PolyRing(field, varname)
        self.varname = varname
        self.zero = ((), 0, 0)
        self.one = ((1,), 0, 0)

    def make(self, num, i=0, j=0):
        P = self.poly
        num = _trim(tuple(num))
        if not num:
            return self.zero
        while i > 0 and P.eval(num, 0) == 0:
            num = P.deflate_root(num, 0)
            i -= 1
        while j > 0 and P.eval(num, 1) == 0:
            num = P.deflate_root(num, 1)
            j -= 1
        return (num, i, j)

    def of_poly(self, a):
        return (a, 0, 0) if a else self.zero

    def of_int(self, k):
        return self.of_poly(self.poly.of_int(k))

    def x(self):
        return ((0, 1), 0, 0)

    def is_zero(self, a):
        return not a[0]

    def eq(self, a, b):
        return a == b  # normal form is unique

    def _common(self, a, b):
        """Numerators over the lcm denominator (x^i (x-1)^j)."""
        P = self.poly
        i = max(a[1], b[1])
        j = max(a[2], b[2])
        na = P.mul(P.shift(a[0], i - a[1]), self._xm1_pow(j - a[2]))
        nb = P.mul(P.shift(b[0], i - b[1]), self._xm1_pow(j - b[2]))
        return na, nb, i, j

    def _xm1_pow(self, k):
        F = self.field
        return self.poly.pow((F.neg(F.one), 1), k)

    def add(self, a, b):
        na, nb, i, j = self._common(a, b)
        return self.make(self.poly.add(na, nb), i, j)

    def neg(self, a):
        return (self.poly.neg(a[0]), a[1], a[2])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        return self.make(self.poly.mul(a[0], b[0]), a[1] + b[1], a[2] + b[2])

    def scalar_mul(self, c, a):
        if c == 0:
            return self.zero
        return (self.poly.scalar_mul(c, a[0]), a[1], a[2])

    def derivative(self, a):
        # (n / x^i (x-1)^j)' = (n' x(x-1) - n (i(x-1) + jx)) / x^{i+1}(x-1)^{j+1}
        P = self.poly
        F = self.field
        num, i, j = a
        if not num:
            return self.zero
        xxm1 = P.mul((0, 1), (F.neg(F.one), 1))
        t1 = P.mul(P.derivative(num), xxm1)
        lin = P.add(
            P.scalar_mul(F.of_int(i), (F.neg(F.one), 1)),
            P.scalar_mul(F.of_int(j), (0, 1)),
        )
        t2 = P.mul(num, lin)
        return self.make(P.sub(t1, t2), i + 1, j + 1)

    def pole_orders(self, a):
        return (a[1], a[2])

    def to_frac(self, a):
        """Convert to the fraction field (num, den) form."""
        P = self.poly
        den = P.mul(P.shift(self.poly.one, a[1]), self._xm1_pow(a[2]))
        return (a[0], den)

    def to_str(self, a):
        num = self.poly.to_str(a[0])
        if a[1] == 0 and a[2] == 0:
            return num
        v = self.varname
        return f"({num}) / ({v}^{a[1]} ({v}-1)^{a[2]})"
