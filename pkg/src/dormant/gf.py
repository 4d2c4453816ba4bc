"""Finite fields F_{p^e} with exact int-encoded elements.

Elements are ints in [0, p^e): the encoding of sum c_i * w^i is
sum c_i * p^i for a fixed root w of the chosen irreducible modulus.
The prime subfield embeds as the ints [0, p).  For e > 1 the arithmetic
runs over precomputed tables, which keeps every operation a couple of
list lookups; fields used here are tiny (p <= 13, e <= 3).
"""

from functools import lru_cache


def _poly_mul_mod_p(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _poly_rem(a, mod, p):
    a = list(a)
    dm = len(mod) - 1
    while len(a) > dm:
        lead = a[-1] % p
        if lead:
            shift = len(a) - 1 - dm
            for i in range(dm + 1):
                a[shift + i] = (a[shift + i] - lead * mod[i]) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _is_irreducible(f, p):
    # f monic, coeffs little-endian; irreducible iff the Frobenius orbit of x
    # mod f first returns to x after exactly deg(f) steps.
    deg = len(f) - 1
    xq = [0, 1]
    for k in range(1, deg + 1):
        xq = _pow_mod(xq, p, f, p)
        if xq == [0, 1]:
            return k == deg
    return False


def _pow_mod(base, exp, mod, p):
    result = [1]
    b = _poly_rem(base, mod, p)
    while exp:
        if exp & 1:
            result = _poly_rem(_poly_mul_mod_p(result, b, p), mod, p)
        b = _poly_rem(_poly_mul_mod_p(b, b, p), mod, p)
        exp >>= 1
    return result


def find_irreducible(p, e):
    """Lexicographically least monic irreducible of degree e over F_p."""
    if e == 1:
        return [0, 1]
    for n in range(p**e):
        coeffs = []
        t = n
        for _ in range(e):
            coeffs.append(t % p)
            t //= p
        f = coeffs + [1]
        if _is_irreducible(f, p):
            return f
    raise ValueError(f"no irreducible of degree {e} over F_{p}")


class GF:
    """The field F_{p^e}; element values are ints in [0, q)."""

    def __init__(self, p, e=1, modulus=None):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"p = {p} is not prime")
        self.p = p
        self.e = e
        self.q = p**e
        self.zero = 0
        self.one = 1
        if e == 1:
            self.modulus = [0, 1] if modulus is None else list(modulus)
        else:
            self.modulus = find_irreducible(p, e) if modulus is None else list(modulus)
            if len(self.modulus) != e + 1:
                raise ValueError("modulus degree must equal e")
            self._build_tables()

    def _encode(self, coeffs):
        v = 0
        for c in reversed(coeffs):
            v = v * self.p + (c % self.p)
        return v

    def decode(self, a):
        coeffs = []
        for _ in range(self.e):
            coeffs.append(a % self.p)
            a //= self.p
        return coeffs

    def _build_tables(self):
        p, q = self.p, self.q
        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            ca = self.decode(a)
            for b in range(a, q):
                cb = self.decode(b)
                prod = _poly_rem(_poly_mul_mod_p(ca, cb, p), self.modulus, p)
                v = self._encode(prod + [0] * (self.e - len(prod)))
                mul[a][b] = v
                mul[b][a] = v
        self._mul = mul
        self._inv = [0] * q
        for a in range(1, q):
            self._inv[a] = self.pow(a, q - 2)
        self._frob = [self.pow(a, p) for a in range(q)]

    # -- arithmetic on encoded values -------------------------------------

    def add(self, a, b):
        if self.e == 1:
            return (a + b) % self.p
        p = self.p
        out = 0
        mult = 1
        for _ in range(self.e):
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a):
        if self.e == 1:
            return (-a) % self.p
        p = self.p
        out = 0
        mult = 1
        for _ in range(self.e):
            out += ((-a) % p) * mult
            a //= p
            mult *= p
        return out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.e == 1:
            return (a * b) % self.p
        return self._mul[a][b]

    def pow(self, a, n):
        n = int(n)
        if n < 0:
            a = self.inv(a)
            n = -n
        r = 1
        while n:
            if n & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            n >>= 1
        return r

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        return self._inv[a]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def frobenius(self, a):
        if self.e == 1:
            return a
        return self._frob[a]

    def is_zero(self, a):
        return a == 0

    def eq(self, a, b):
        return a == b

    def of_int(self, k):
        """Embed an integer via F_p."""
        return k % self.p

    def elements(self):
        return range(self.q)

    def in_prime_field(self, a):
        return a < self.p

    def __eq__(self, other):
        return (
            isinstance(other, GF)
            and self.p == other.p
            and self.e == other.e
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.e, tuple(self.modulus)))

    def __repr__(self):
        return f"GF({self.p})" if self.e == 1 else f"GF({self.p}^{self.e})"


@lru_cache(maxsize=None)
def gf(p, e=1):
    """Cached field constructor (table building is the expensive part)."""
    return GF(p, e)
