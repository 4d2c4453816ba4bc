"""Base-p combinatorics for the level-m operator algebra.

Everything here returns plain ints reduced mod p.  Binomials of negative
upper argument are evaluated through the unique base-p periodic extension
(period p^K once p^K exceeds the lower argument), which is the polynomial
continuation used by the disk-module action formulas.
"""

from fractions import Fraction
from functools import lru_cache
from math import factorial


def lucas_binom(ell, j, p):
    """C(ell, j) mod p by base-p digit products, for ell, j >= 0."""
    if j < 0 or ell < 0:
        raise ValueError("lucas_binom expects nonnegative arguments")
    out = 1
    while j > 0 and out:
        out = (out * _small_binom(ell % p, j % p)) % p
        ell //= p
        j //= p
    return out if j == 0 else 0


def binom_mod(n, j, p):
    """C(n, j) mod p for arbitrary integer n, via digit periodicity in n."""
    if j < 0:
        return 0
    period = 1
    while period <= j:
        period *= p
    return lucas_binom(n % period, j, p)


@lru_cache(maxsize=None)
def _small_binom(a, b):
    if b > a:
        return 0
    out = 1
    for i in range(b):
        out = out * (a - i) // (i + 1)
    return out


def q_decomp(j, m, p):
    """Split j = p^m * q_j + r_j with 0 <= r_j < p^m; also q_j! mod p."""
    pm = p**m
    q, r = divmod(j, pm)
    fact = 1
    for i in range(2, q + 1):
        fact = (fact * i) % p
    return q, r, fact


@lru_cache(maxsize=None)
def structure_constants(j1, j2, m, p):
    """Coefficients of the operator product at level m.

    The product of the divided-power generators of orders j1 and j2 expands
    over the basis as sum_j c_j * (order-j generator) for
    max(j1,j2) <= j <= j1+j2; returns the tuple of (j, c_j mod p) with
    c_j != 0.  Each c_j is the integer
    trinomial(j; j1+j2-j, j-j1, j-j2) * q_{j1}! q_{j2}! / q_j!.
    """
    pm = p**m
    out = []
    for j in range(max(j1, j2), j1 + j2 + 1):
        tri = Fraction(
            factorial(j),
            factorial(j1 + j2 - j) * factorial(j - j1) * factorial(j - j2),
        )
        c = tri * Fraction(factorial(j1 // pm) * factorial(j2 // pm), factorial(j // pm))
        cp = _reduce_p_integral(c, p)
        if cp:
            out.append((j, cp))
    return tuple(out)


def _reduce_p_integral(c, p):
    """Reduce a p-integral rational mod p (denominator must be prime to p)."""
    if c.denominator % p == 0:
        raise ValueError(f"{c} is not p-integral at p = {p}")
    return c.numerator * pow(c.denominator, -1, p) % p


@lru_cache(maxsize=None)
def leibniz_coeff(j, j1, m, p):
    """Coefficient of the (j1, j-j1) split in the level-m Leibniz rule.

    Value: q_j! / (q_{j1}! * q_{j-j1}!) mod p.  An integer because the
    q-parts of a split differ from q_j by at most one carry.
    """
    pm = p**m
    c = Fraction(factorial(j // pm), factorial(j1 // pm) * factorial((j - j1) // pm))
    return _reduce_p_integral(c, p)


def digits_base_p(value, p, n_digits):
    """Little-endian base-p digits of a nonnegative integer."""
    out = []
    for _ in range(n_digits):
        out.append(value % p)
        value //= p
    return out
