"""Truncated power series k[t]/(t^M) over GF.

Values are int lists of fixed length M (encoded field elements).  The
truncation order M is owned by the ring object; disk modules require M to
be a multiple of p^{m+1} so that a full curvature window is available.
"""

from dormant import core


class SeriesRing:
    def __init__(self, field, M):
        if M < 1:
            raise ValueError("truncation order must be positive")
        self.field = field
        self.M = M

    @property
    def zero(self):
        return [0] * self.M

    @property
    def one(self):
        return [1] + [0] * (self.M - 1)

    def of_int(self, k):
        out = [0] * self.M
        out[0] = self.field.of_int(k)
        return out

    def of_elem(self, c):
        out = [0] * self.M
        out[0] = c
        return out

    def of_coeffs(self, coeffs):
        out = list(coeffs[: self.M])
        out.extend([0] * (self.M - len(out)))
        return out

    def is_zero(self, a):
        return not any(a)

    def eq(self, a, b):
        return a == b

    def add(self, a, b):
        F = self.field
        if F.e == 1:
            p = F.p
            return [(x + y) % p for x, y in zip(a, b)]
        return [F.add(x, y) for x, y in zip(a, b)]

    def neg(self, a):
        F = self.field
        if F.e == 1:
            p = F.p
            return [(-x) % p for x in a]
        return [F.neg(x) for x in a]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def scalar_mul(self, c, a):
        F = self.field
        if c == 0:
            return self.zero
        if F.e == 1:
            p = F.p
            return [(c * x) % p for x in a]
        return [F.mul(c, x) for x in a]

    def mul(self, a, b):
        F = self.field
        if F.e == 1:
            out = core.poly_mul_mod(a, b, F.p, self.M)
            out.extend([0] * (self.M - len(out)))
            return out
        out = [0] * self.M
        for i, ai in enumerate(a):
            if ai:
                for j in range(self.M - i):
                    if b[j]:
                        out[i + j] = F.add(out[i + j], F.mul(ai, b[j]))
        return out

    def resize(self, a, M2):
        out = list(a[:M2])
        out.extend([0] * (M2 - len(out)))
        return out
